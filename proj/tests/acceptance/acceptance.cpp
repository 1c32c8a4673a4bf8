// Acceptance gate: one PASS/FAIL line per criterion. Exit status is the number of failures.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "../case_study.hpp"
#include "../oracles.hpp"
#include "../temp_dir.hpp"
#include "natcap/accounts.hpp"
#include "natcap/carbon.hpp"
#include "natcap/class_table.hpp"
#include "natcap/erosion.hpp"
#include "natcap/hydrology.hpp"
#include "natcap/pipeline.hpp"
#include "natcap/statements.hpp"
#include "natcap/valuation.hpp"

using namespace natcap;
namespace fs = std::filesystem;

namespace {

// Tolerances and limits.
constexpr double kExtentTol = 1e-9;
constexpr double kMassTol = 1e-6;
constexpr double kOracleTol = 1e-9;
constexpr double kSedimentValueTol = 60.0;
constexpr double kCarbonValueRelTol = 5e-4;
constexpr double kScenarioValueRelTol = 1e-3;
constexpr double kAssetTotalRelTol = 5e-3;
constexpr double kAnnuityRelTol = 1e-9;
constexpr double kAnnuityFactorTol = 1e-4;
constexpr double kMonotoneTol = 1e-9;
constexpr double kSccLowBound = 13.0e6;
constexpr double kSccHighBound = 49.2e6;

constexpr double kC1Seconds = 5.0;
constexpr double kC2Seconds = 10.0;
constexpr double kC4Seconds = 1.0;
constexpr double kC10Seconds = 30.0;

struct Outcome {
  bool pass = true;
  std::string detail;
};

class Checker {
 public:
  void require(bool ok, const std::string& what) {
    if (!ok && first_failure_.empty()) first_failure_ = what;
    pass_ = pass_ && ok;
  }
  Outcome done(const std::string& summary) const { return {pass_, pass_ ? summary : first_failure_}; }

 private:
  bool pass_ = true;
  std::string first_failure_;
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

bool rel_close(double got, double want, double tol) { return std::abs(got - want) <= tol * std::abs(want); }

RunConfig fixture_config() { return load_config(std::string(NATCAP_FIXTURE_DIR) + "/natcap.ini"); }

std::map<std::string, std::string> read_dir(const fs::path& dir) {
  std::map<std::string, std::string> out;
  for (const auto& e : fs::directory_iterator(dir)) out[e.path().filename().string()] = testing::slurp(e.path());
  return out;
}

Outcome c1_extent() {
  Checker chk;
  std::mt19937_64 rng(1001);
  std::uniform_int_distribution<int> dim(1, 100), ncls(1, 20);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const int rows = dim(rng), cols = dim(rng), k = ncls(rng);
    const double flip = u(rng);
    std::vector<double> a(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols)), b(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      a[i] = 1 + static_cast<int>(u(rng) * k);
      b[i] = u(rng) < flip ? 1 + static_cast<int>(u(rng) * k) : a[i];
    }
    const GridGeometry g{cols, rows, 0, 0, 30.0};
    std::vector<ClassLabel> labels;
    for (int c = 1; c <= k; ++c) labels.push_back({c, "class " + std::to_string(c)});
    const auto acc = build_extent_account(LandCoverGrid(Grid(g, -1, a)), LandCoverGrid(Grid(g, -1, b)), labels);
    double open = 0.0, close = 0.0;
    for (const auto& r : acc.rows) {
      chk.require(std::abs(r.closing_ha - (r.opening_ha + r.additions_ha - r.losses_ha)) <= kExtentTol,
                  "row identity broken in trial " + std::to_string(trial));
      open += r.opening_ha;
      close += r.closing_ha;
    }
    chk.require(std::abs(open - close) <= kExtentTol, "closing total differs from opening in trial " + std::to_string(trial));
  }

  const ModelRun run = run_model(fixture_config(), Command::Extent);
  for (std::size_t k = 0; k < run.extent.rows.size(); ++k) {
    const auto& r = run.extent.rows[k];
    chk.require(r.opening_ha == target::kAreaHa[k] && r.change_ha == 0.0,
                std::string("fixture extent row ") + r.name + " differs");
  }
  chk.require(run.extent.totals.closing_ha == target::kTotalAreaHa, "fixture total is not 369 ha");
  return chk.done("200 random pairs; fixture 369 ha, no change");
}

Outcome c2_sediment() {
  Checker chk;
  std::mt19937_64 rng(2002);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_int_distribution<int> size(1, 12);
  double worst_mass = 0.0, worst_oracle = 0.0;
  int done = 0;
  while (done < 500) {
    const int rows = size(rng), cols = size(rng);
    const Grid dem = fill_pits(oracle::random_dem(rng, rows, cols, 30.0, 0.05));
    if (dem.valid_count() == 0) continue;
    ++done;
    const auto dirs = flow_direction_d8(dem);
    std::vector<double> lc_v(dem.size()), loss_v(dem.size());
    for (std::size_t i = 0; i < dem.size(); ++i) {
      lc_v[i] = dem.valid(i) ? 1 + static_cast<int>(u(rng) * 5) : -9999.0;
      loss_v[i] = dem.valid(i) ? u(rng) * 10.0 : -9999.0;
    }
    const LandCoverGrid lc(dem.with_values(lc_v));
    const Grid loss = dem.with_values(loss_v);
    const std::map<int, double> trap = {{1, u(rng)}, {2, u(rng)}, {3, u(rng)}, {4, 0.0}, {5, 1.0}};
    const auto r = route_sediment(loss, dirs, trap, lc);
    const auto want = oracle::path_walk_sediment(loss, dirs, trap, lc);

    const double gen = r.total_generated();
    const double mass = std::abs(gen - (r.total_trapped() + r.exported_at_outlets)) / std::max(gen, 1e-300);
    worst_mass = std::max(worst_mass, mass);
    double diff = std::abs(r.exported_at_outlets - want.exported) / std::max(1.0, want.exported);
    for (std::size_t i = 0; i < dem.size(); ++i) {
      if (!dem.valid(i)) continue;
      diff = std::max(diff, std::abs(r.trapped[i] - want.trapped[i]) / std::max(1.0, std::abs(want.trapped[i])));
    }
    worst_oracle = std::max(worst_oracle, diff);
  }
  chk.require(worst_mass <= kMassTol, fmt("mass balance error %.3g", worst_mass));
  chk.require(worst_oracle <= kOracleTol, fmt("oracle mismatch %.3g", worst_oracle));
  return chk.done(fmt("500 catchments; mass err %.2g, oracle err %.2g", worst_mass, worst_oracle));
}

Outcome c3_hydrology() {
  Checker chk;
  std::mt19937_64 rng(3003);
  for (int trial = 0; trial < 200; ++trial) {
    const Grid filled = fill_pits(oracle::random_dem(rng, 10, 10, 10.0, trial % 2 ? 0.1 : 0.0));
    chk.require(oracle::every_cell_drains(filled), "drainage oracle failed in trial " + std::to_string(trial));
    const auto dirs = flow_direction_d8(filled);
    const Grid accum = flow_accumulation(dirs);
    double outlet_sum = 0.0;
    for (std::size_t i = 0; i < dirs.size(); ++i) {
      if (dirs[i] == FlowDir::Outlet) outlet_sum += accum[i];
    }
    chk.require(outlet_sum == static_cast<double>(filled.valid_count()),
                "outlet accumulation differs from valid count in trial " + std::to_string(trial));
  }
  return chk.done("200 random 10x10 DEMs drain; outlet sums match");
}

Outcome c4_valuation() {
  Checker chk;
  const ValuationParams p;
  const auto physical = target::case_physical();
  const auto m = build_monetary_account(physical, p);
  const auto set = build_statement_set(m, physical, p);

  const double sed13 = flow_value(target::kSedimentTonnes2013, p.sediment_unit_cost);
  chk.require(std::abs(sed13 - target::kSedimentValueTotal2013) <= kSedimentValueTol, fmt("sediment value %.2f", sed13));
  chk.require(std::abs(m.totals.sediment_baseline - target::kSedimentValueTotal2013) <= kSedimentValueTol,
              fmt("account sediment value %.2f", m.totals.sediment_baseline));
  const double carbon13 = carbon_stock_value(target::kCarbonTotal2013, p);
  chk.require(rel_close(carbon13, target::kCarbonValue2013, kCarbonValueRelTol), fmt("carbon value %.2f", carbon13));
  chk.require(rel_close(m.totals.sediment_scenario, target::kSedimentValueTotal2023, kScenarioValueRelTol),
              fmt("scenario sediment value %.2f", m.totals.sediment_scenario));
  chk.require(rel_close(m.totals.sediment_change, target::kSedimentValueChange, kScenarioValueRelTol),
              fmt("sediment value change %.2f", m.totals.sediment_change));
  const auto& bs13 = set.balance_sheet.periods.at(1);
  chk.require(bs13.label == "2013", "balance sheet period order");
  const double total = bs13.total.total().value_or(0.0);
  chk.require(rel_close(total, target::kAssetTotal2013, kAssetTotalRelTol), fmt("asset total %.2f", total));
  return chk.done(fmt("$%.0f / $%.0f / asset total $%.0f", m.totals.sediment_baseline, carbon13, total));
}

Outcome c5_annuity() {
  Checker chk;
  std::mt19937_64 rng(5005);
  std::uniform_real_distribution<double> rate(0.01, 0.2);
  std::uniform_int_distribution<int> years(1, 200);
  std::uniform_real_distribution<double> flow(0.0, 1e6);
  std::bernoulli_distribution due(0.5);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    ValuationParams p;
    p.discount_rate = rate(rng);
    p.horizon_years = years(rng);
    p.annuity_timing = due(rng) ? AnnuityTiming::Due : AnnuityTiming::Ordinary;
    const double f = flow(rng);
    const double want = f * oracle::brute_force_annuity(p.discount_rate, p.horizon_years,
                                                        p.annuity_timing == AnnuityTiming::Due);
    const double got = npv_asset_value(f, p);
    worst = std::max(worst, std::abs(got - want) / std::max(want, 1e-300));
  }
  chk.require(worst <= kAnnuityRelTol, fmt("worst relative error %.3g", worst));
  const double factor = annuity_factor(0.07, 100, AnnuityTiming::Ordinary);
  chk.require(std::abs(factor - 14.26925) <= kAnnuityFactorTol, fmt("factor(0.07, 100) = %.6f", factor));
  return chk.done(fmt("1000 cases, worst rel err %.2g; factor %.5f", worst, factor));
}

Outcome c6_carbon() {
  Checker chk;
  const LandCoverGrid lc = run_model(fixture_config(), Command::Extent).asset_mask;
  std::map<int, CarbonPools> pools13, pools23;
  for (int k = 0; k < 9; ++k) {
    pools13[k + 1] = {target::kCarbon2013[k] / target::kAreaHa[k], 0.0, 0.0};
    pools23[k + 1] = {target::kCarbon2023[k] / target::kAreaHa[k], 0.0, 0.0};
  }
  const auto t0 = carbon_storage(lc, pools13);
  const auto t1 = carbon_storage(lc, pools23);
  for (const auto& [cls, c] : t0.per_class) {
    chk.require(c.total_t == c.density_t_per_ha * c.area_ha, "class total is not density x area");
  }
  for (int k = 0; k < 9; ++k) {
    chk.require(std::round(t0.per_class.at(k + 1).total_t) == target::kCarbon2013Printed[k],
                std::string("2013 stock of ") + target::kClassNames[k]);
    chk.require(std::round(t1.per_class.at(k + 1).total_t) == target::kCarbon2023Printed[k],
                std::string("2023 stock of ") + target::kClassNames[k]);
  }
  const auto& grass = t0.per_class.at(6);
  chk.require(std::round(grass.density_t_per_ha) == 143.0 && grass.area_ha == 68.0 && std::round(grass.total_t) == 9744.0,
              "grass row");
  double change = 0.0;
  for (const auto& [cls, v] : sequestration(t0, t1)) change += v;
  chk.require(std::round(t0.portfolio_total) == target::kCarbonTotal2013, fmt("2013 total %.2f", t0.portfolio_total));
  chk.require(std::round(t1.portfolio_total) == target::kCarbonTotal2023, fmt("2023 total %.2f", t1.portfolio_total));
  chk.require(std::round(change) == target::kCarbonChange, fmt("change %.2f", change));
  return chk.done(fmt("%.0f -> %.0f t C, change %.0f", t0.portfolio_total, t1.portfolio_total, change));
}

// Random parameters for the nine asset classes on the fixture landscape. The upslope
// catchment class stays non-native: a native class upstream of another native class can
// lower that class's catch when its own efficiency rises.
Outcome c7_monotone() {
  Checker chk;
  testing::TempDir dir;
  for (const auto& e : fs::directory_iterator(NATCAP_FIXTURE_DIR)) fs::copy_file(e.path(), dir / e.path().filename().string());
  const ClassTable fixture = read_class_table_file((dir / "classes.csv").string());
  std::mt19937_64 rng(7007);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<ClassParameterRow> rows;
    bool any_native = false;
    for (const auto& base : fixture.rows()) {
      ClassParameterRow r = base;
      if (r.class_id <= 9) {
        r.native = u(rng) < 0.5;
        any_native = any_native || r.native;
        r.c_factor = 0.001 + 0.05 * u(rng);
        r.p_factor = 0.5 + 0.5 * u(rng);
        r.trap_eff = u(rng);
        r.carbon_above = 100.0 * u(rng);
        r.carbon_below = 50.0 * u(rng);
        r.carbon_dead = 20.0 * u(rng);
      }
      rows.push_back(r);
    }
    if (!any_native) rows.front().native = true;
    const ClassTable table(rows);
    testing::spit(dir / "classes.csv", write_class_table(table));
    const ModelRun run = run_model(load_config((dir / "natcap.ini").string()), Command::Physical);
    for (std::size_t k = 0; k < run.physical.sediment->rows.size(); ++k) {
      const auto& s = run.physical.sediment->rows[k];
      const auto& c = run.physical.carbon->rows[k];
      if (!table.at(s.class_id).native) continue;
      const double ds = (s.baseline_qty - s.scenario_qty) / std::max(1.0, s.baseline_qty);
      const double dc = (c.baseline_qty - c.scenario_qty) / std::max(1.0, c.baseline_qty);
      worst = std::max({worst, ds, dc});
      chk.require(ds <= kMonotoneTol, "sediment fell for native class " + s.name + " in trial " + std::to_string(trial));
      chk.require(dc <= kMonotoneTol, "carbon fell for native class " + c.name + " in trial " + std::to_string(trial));
    }
  }
  return chk.done(fmt("100 random tables on the fixture; largest relative drop %.2g", std::max(0.0, worst)));
}

Outcome c8_statements() {
  Checker chk;
  const RunConfig cfg = fixture_config();
  const std::vector<OutputFormat> formats = {OutputFormat::Txt, OutputFormat::Csv, OutputFormat::Json};
  const ModelRun run = run_model(cfg, Command::All);
  const auto files = render_outputs(run, Command::All, cfg.alternative, formats);
  const auto golden = read_dir(NATCAP_GOLDEN_DIR);
  chk.require(golden.size() == files.size(), "golden file count " + std::to_string(golden.size()));
  for (const auto& [name, body] : files) {
    const auto it = golden.find(name);
    chk.require(it != golden.end() && it->second == body, "output differs from golden " + name);
  }
  const auto again = render_outputs(run_model(cfg, Command::All), Command::All, cfg.alternative, formats);
  chk.require(again == files, "re-run is not byte-identical");

  const StatementSet& set = *run.statements;
  const auto& pnl13 = set.env_pnl.periods.at(1);
  chk.require(pnl13.label == "2013", "income statement period order");
  const double business = pnl13.total.value_to_business.value_or(0.0);
  chk.require(round_to(business, 0) == target::kSedimentValueTotal2013, fmt("2013 income to business %.2f", business));
  chk.require(!pnl13.total.value_to_society.has_value(), "2013 income has a value to society");
  for (const auto& p : set.balance_sheet.periods) {
    chk.require(p.lines.at(0).value_to_business && !p.lines.at(0).value_to_society, "sediment asset not in business column");
    chk.require(p.lines.at(1).value_to_society && !p.lines.at(1).value_to_business, "carbon asset not in society column");
  }
  for (const Statement* st : {&set.env_pnl, &set.balance_sheet}) {
    for (const auto& p : st->periods) {
      double b = 0.0, s = 0.0;
      for (const auto& l : p.lines) {
        b += l.value_to_business.value_or(0.0);
        s += l.value_to_society.value_or(0.0);
      }
      chk.require(std::abs(p.total.value_to_business.value_or(0.0) - b) <= 1e-6 &&
                      std::abs(p.total.value_to_society.value_or(0.0) - s) <= 1e-6,
                  st->id + " " + p.label + " total is not the sum of its lines");
    }
  }
  return chk.done(std::to_string(files.size()) + " files match goldens; 2013 income " + format_currency(business));
}

Outcome c9_scc() {
  Checker chk;
  const ValuationParams p;
  const ModelRun run = run_model(fixture_config(), Command::Physical);
  const double stock = run.physical.carbon->totals.baseline_qty;
  const double low = carbon_stock_value(stock, p, PriceMode::SccIndex, 0);
  const double high = carbon_stock_value(stock, p, PriceMode::SccIndex, 1);
  chk.require(low >= kSccLowBound && low <= kSccHighBound, fmt("value at $73 is %.0f", low));
  chk.require(high >= kSccLowBound && high <= kSccHighBound, fmt("value at $274 is %.0f", high));
  return chk.done(fmt("$%.0f to $%.0f", low, high));
}

Outcome c10_end_to_end(double& seconds) {
  Checker chk;
  testing::TempDir dir;
  const std::string ini = std::string(NATCAP_FIXTURE_DIR) + "/natcap.ini";
  double slowest = 0.0;
  for (const char* name : {"a", "b"}) {
    const std::string cmd =
        std::string("\"") + NATCAP_CLI + "\" all --config \"" + ini + "\" --out \"" + (dir / name).string() + "\" 2>/dev/null";
    const auto t0 = std::chrono::steady_clock::now();
    const int status = std::system(cmd.c_str());
    slowest = std::max(slowest, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    chk.require(WIFEXITED(status) && WEXITSTATUS(status) == 0, std::string("natcap all failed for run ") + name);
  }
  seconds = slowest;
  chk.require(slowest < kC10Seconds, fmt("slowest run %.2f s", slowest));
  if (fs::exists(dir / "a") && fs::exists(dir / "b")) {
    const auto a = read_dir(dir / "a");
    chk.require(!a.empty() && a == read_dir(dir / "b"), "runs differ");
  }
  return chk.done(fmt("two runs identical, slowest %.3f s", slowest));
}

struct Criterion {
  int id;
  const char* name;
  double limit_s;  // 0 for no limit
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  double c10_seconds = 0.0;
  const std::vector<Criterion> criteria = {
      {1, "extent identity", kC1Seconds, c1_extent},
      {2, "sediment mass conservation", kC2Seconds, c2_sediment},
      {3, "hydrology correctness", 0.0, c3_hydrology},
      {4, "valuation arithmetic", kC4Seconds, c4_valuation},
      {5, "annuity oracle", 0.0, c5_annuity},
      {6, "carbon accounting", 0.0, c6_carbon},
      {7, "optimal-scenario monotonicity", 0.0, c7_monotone},
      {8, "statement consistency", 0.0, c8_statements},
      {9, "SCC range", 0.0, c9_scc},
      {10, "end-to-end determinism", 0.0, [&] { return c10_end_to_end(c10_seconds); }},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.limit_s > 0.0 && secs >= c.limit_s) {
      out.pass = false;
      out.detail += fmt(" (over the %.0f s limit)", c.limit_s);
    }
    std::printf("C%-2d %s  %-30s %s [%.3f s]\n", c.id, out.pass ? "PASS" : "FAIL", c.name, out.detail.c_str(), secs);
    if (!out.pass) ++failures;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures;
}
