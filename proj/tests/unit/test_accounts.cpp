#include <doctest.h>

#include <cmath>
#include <random>

#include "../case_study.hpp"
#include "natcap/accounts.hpp"
#include "natcap/error.hpp"

using namespace natcap;

namespace {

LandCoverGrid case_landcover() {
  std::vector<double> v;
  for (int k = 0; k < 9; ++k) v.insert(v.end(), static_cast<std::size_t>(target::kAreaHa[k]), k + 1);
  const int n = static_cast<int>(v.size());
  return LandCoverGrid(Grid(GridGeometry{n, 1, 0, 0, 100.0}, -9999.0, std::move(v)));
}

}  // namespace

TEST_SUITE("accounts") {
  TEST_CASE("unchanged case-study land cover") {
    const auto lc = case_landcover();
    const auto a = build_extent_account(lc, lc, target::labels());
    REQUIRE(a.rows.size() == 9);
    for (int k = 0; k < 9; ++k) {
      CHECK(a.rows[k].name == target::kClassNames[k]);
      CHECK(a.rows[k].opening_ha == target::kAreaHa[k]);
      CHECK(a.rows[k].closing_ha == target::kAreaHa[k]);
      CHECK(a.rows[k].change_ha == 0.0);
    }
    CHECK(a.totals.closing_ha == 369.0);
    CHECK(a.totals.change_ha == 0.0);
  }

  TEST_CASE("five hectares of grass become woodland") {
    const auto t0 = case_landcover();
    std::vector<double> v(t0.grid().values().begin(), t0.grid().values().end());
    int converted = 0;
    for (auto& x : v) {
      if (x == 6 && converted < 5) {
        x = 1;
        ++converted;
      }
    }
    const LandCoverGrid t1(t0.grid().with_values(v));
    const auto a = build_extent_account(t0, t1, target::labels());
    CHECK(a.rows[5].losses_ha == 5.0);
    CHECK(a.rows[5].closing_ha == 63.0);
    CHECK(a.rows[0].additions_ha == 5.0);
    CHECK(a.rows[0].closing_ha == 63.0);
    CHECK(a.totals.change_ha == 0.0);
    CHECK(a.totals.closing_ha == a.totals.opening_ha);
  }

  TEST_CASE("class absent at both dates is a zero row") {
    const LandCoverGrid lc(Grid(GridGeometry{2, 1, 0, 0, 100}, -9999.0, {1, 1}));
    const auto a = build_extent_account(lc, lc, {{1, "A"}, {2, "B"}});
    CHECK(a.rows[1].opening_ha == 0.0);
    CHECK(a.rows[1].additions_ha == 0.0);
    CHECK(a.rows[1].losses_ha == 0.0);
    CHECK(a.rows[1].closing_ha == 0.0);
  }

  TEST_CASE("random reclassifications keep the extent identity") {
    std::mt19937_64 rng(404);
    std::uniform_int_distribution<int> dim(1, 30), ncls(1, 20);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
      const int rows = dim(rng), cols = dim(rng), k = ncls(rng);
      std::vector<double> a(static_cast<std::size_t>(rows * cols)), b(a.size());
      for (std::size_t i = 0; i < a.size(); ++i) {
        a[i] = 1 + static_cast<int>(u(rng) * k);
        b[i] = u(rng) < 0.3 ? 1 + static_cast<int>(u(rng) * k) : a[i];
      }
      const GridGeometry g{cols, rows, 0, 0, 50.0};
      std::vector<ClassLabel> labels;
      for (int c = 1; c <= k; ++c) labels.push_back({c, "c" + std::to_string(c)});
      const auto acc = build_extent_account(LandCoverGrid(Grid(g, -1, a)), LandCoverGrid(Grid(g, -1, b)), labels);
      for (const auto& r : acc.rows) {
        CHECK(r.closing_ha == doctest::Approx(r.opening_ha + r.additions_ha - r.losses_ha));
      }
      CHECK(acc.totals.closing_ha == doctest::Approx(acc.totals.opening_ha));
    }
  }

  TEST_CASE("unnamed classes and misaligned maps are rejected") {
    const LandCoverGrid lc(Grid(GridGeometry{2, 1, 0, 0, 100}, -9999.0, {1, 3}));
    CHECK_THROWS_AS(build_extent_account(lc, lc, {{1, "A"}}), ParameterError);
    const LandCoverGrid other(Grid(GridGeometry{3, 1, 0, 0, 100}, -9999.0, {1, 1, 1}));
    CHECK_THROWS_AS(build_extent_account(lc, other, {{1, "A"}, {3, "C"}}), AlignmentError);
  }

  TEST_CASE("sediment account totals and per-hectare conventions") {
    const auto areas = target::by_class(target::kAreaHa);
    const auto base = target::scaled(target::kSediment2013Printed, target::kSedimentTonnes2013);
    const auto scen = target::scaled(target::kSediment2023Printed, target::kSedimentTonnes2023);
    const auto aw = build_physical_flow_account("Sediment filtration", "t", base, scen, areas, target::labels());
    CHECK(std::round(aw.totals.baseline_qty) == 442.0);
    CHECK(std::round(aw.totals.scenario_qty) == 654.0);
    CHECK(std::round(aw.totals.change_qty) == 212.0);
    CHECK(round_to(*aw.totals.baseline_per_ha, 1) == 1.2);
    CHECK(round_to(*aw.totals.change_per_ha, 1) == 0.6);
    CHECK(round_to(*aw.totals.scenario_per_ha, 1) == 1.8);

    const auto cm = build_physical_flow_account("Sediment filtration", "t", base, scen, areas, target::labels(), {},
                                                PerHaTotal::ClassMean);
    CHECK(round_to(*cm.totals.scenario_per_ha, 1) == 1.7);
    CHECK(std::round(cm.totals.scenario_qty) == 654.0);

    // Red Gum: about 150 t over 141 ha.
    CHECK(round_to(*aw.rows[1].baseline_per_ha, 1) == 1.1);
  }

  TEST_CASE("carbon account totals") {
    const auto a = build_physical_flow_account("Carbon storage", "t C", target::by_class(target::kCarbon2013),
                                               target::by_class(target::kCarbon2023), target::by_class(target::kAreaHa),
                                               target::labels());
    CHECK(std::round(a.totals.baseline_qty) == 48795.0);
    CHECK(std::round(a.totals.scenario_qty) == 78956.0);
    CHECK(std::round(a.totals.change_qty) == 30161.0);
    CHECK(std::round(*a.totals.baseline_per_ha) == 132.0);
    CHECK(std::round(*a.totals.scenario_per_ha) == 214.0);
    CHECK(std::round(*a.totals.change_per_ha) == 82.0);
  }

  TEST_CASE("scenario equal to baseline has zero change") {
    const auto base = target::by_class(target::kSediment2013Printed);
    const auto a = build_physical_flow_account("s", "t", base, base, target::by_class(target::kAreaHa), target::labels());
    for (const auto& r : a.rows) {
      CHECK(r.change_qty == 0.0);
      CHECK(*r.change_per_ha == 0.0);
    }
  }

  TEST_CASE("zero-area class has no per-hectare value") {
    const auto a = build_physical_flow_account("s", "t", {{1, 0.0}, {2, 4.0}}, {{1, 0.0}, {2, 6.0}},
                                               {{1, 0.0}, {2, 2.0}}, {{1, "A"}, {2, "B"}}, {}, PerHaTotal::ClassMean);
    CHECK_FALSE(a.rows[0].baseline_per_ha.has_value());
    CHECK(*a.totals.baseline_per_ha == 2.0);
    const auto t = to_table(a);
    CHECK(render_text(t).find("n/a") != std::string::npos);
  }

  TEST_CASE("mismatched class keys are rejected") {
    CHECK_THROWS_AS(build_physical_flow_account("s", "t", {{1, 1.0}}, {{2, 1.0}}, {{1, 1.0}}, {{1, "A"}, {2, "B"}}),
                    ParameterError);
  }

  TEST_CASE("rendered sediment account") {
    const auto a = build_physical_flow_account("Sediment filtration", "t", target::by_class(target::kSediment2013Printed),
                                               target::by_class(target::kSediment2023Printed), target::by_class(target::kAreaHa),
                                               target::labels());
    const std::string text = render_text(to_table(a));
    CHECK(text.find("Sediment filtration (t)") == 0);
    CHECK(text.find("Total") != std::string::npos);
    const auto j = to_json(a);
    CHECK(j["rows"].size() == 9);
    // Printed class values sum to 443 t.
    CHECK(j["totals"]["baseline_qty"] == 443.0);
    CHECK(j["per_ha_total"] == "area_weighted");
  }

  TEST_CASE("per-hectare mode names") {
    CHECK(parse_per_ha_total("class_mean") == PerHaTotal::ClassMean);
    CHECK(to_string(PerHaTotal::AreaWeighted) == "area_weighted");
    CHECK_THROWS_AS(parse_per_ha_total("median"), ParameterError);
  }
}
