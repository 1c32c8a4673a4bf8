// Generates the bundled synthetic catchment and calibrates it.
//
// The catchment is a 60x60 grid of 1 ha cells draining south. It is split into
// nine north-south strips, one per asset class, with V-shaped cross sections so
// no flow crosses between strips. Each strip's asset cells sit at the bottom
// (downstream) and the rest is generic catchment land.
//
// Calibration: trapped sediment is linear in the K factor, so K is scaled per
// strip to bring each class's baseline trapped tonnes to a target. Carbon pool
// densities are set so class totals match target stocks. Both sets of targets
// are target account values; the parameters are fitted, not recovered.
//
// Usage: make_fixture [output_dir]   (default data/fixture)

#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "natcap/carbon.hpp"
#include "natcap/class_table.hpp"
#include "natcap/erosion.hpp"
#include "natcap/grid.hpp"
#include "natcap/hydrology.hpp"

namespace {

using natcap::ClassParameterRow;
using natcap::Grid;
using natcap::GridGeometry;

constexpr int kSize = 60;
constexpr double kCellsize = 100.0;
constexpr double kNodata = -9999.0;
constexpr int kCatchmentClass = 10;
constexpr double kRainfallErosivity = 1800.0;

struct AssetClass {
  const char* name;
  bool native;
  int strip_width;
  int area_cells;
  double c_factor;
  double trap_eff;
  double sediment_target_t;
  double optimal_target_t;  ///< < 0 when not calibrated
  double carbon_target_t;
  std::array<double, 3> pool_split;
};

// Sediment targets are whole-dollar account values at $250/t less $0.25, so the
// portfolio total rounds to its target as well as each class.
// Classes with an optimal target have their trap efficiency solved so the
// optimal scenario reaches it; their trap_eff entry here is unused.
constexpr double kUnitCost = 250.0;
constexpr double kNativeMaxTrap = 0.30;
constexpr double kCatchmentC = 0.004;
const std::array<AssetClass, 9> kClasses = {{
    {"Cumberland Shale Plains Woodland", true, 7, 58, 0.0008, 0.0, (12378 - 0.25) / kUnitCost, 18485 / kUnitCost, 3987.33, {0.60, 0.25, 0.15}},
    {"Cumberland Red Gum Riverflat Forest", true, 9, 141, 0.0006, 0.0, (37500 - 0.25) / kUnitCost, 55650 / kUnitCost, 22382.0, {0.55, 0.30, 0.15}},
    {"Cumberland Shale-Sandstone Ironbark Forest", true, 6, 26, 0.0010, 0.0, (8150 - 0.25) / kUnitCost, 15085 / kUnitCost, 2229.67, {0.58, 0.27, 0.15}},
    {"Coastal Valleys Swamp Oak Riparian Forest", true, 6, 9, 0.0005, 0.0, (1260 - 0.25) / kUnitCost, 2458 / kUnitCost, 515.67, {0.50, 0.30, 0.20}},
    {"Sydney Turpentine Ironbark Forest", true, 6, 9, 0.0004, kNativeMaxTrap, (373 - 0.25) / kUnitCost, -1.0, 534.67, {0.62, 0.25, 0.13}},
    {"Grass", false, 7, 68, 0.0030, 0.22, (25744 - 0.25) / kUnitCost, -1.0, 9744.33, {0.20, 0.65, 0.15}},
    {"Non-vegetated still waterbody", false, 7, 39, 0.0, 0.35, (17458 - 0.25) / kUnitCost, -1.0, 6954.67, {0.00, 0.00, 1.00}},
    {"Watercourse", false, 6, 12, 0.0, 0.30, (6485 - 0.25) / kUnitCost, -1.0, 1935.0, {0.05, 0.10, 0.85}},
    {"Medium Density Urban Fabric", false, 6, 7, 0.0, 0.05, (1110 - 0.25) / kUnitCost, -1.0, 511.33, {0.30, 0.50, 0.20}},
}};

double round_to(double v, int decimals) {
  const double f = std::pow(10.0, decimals);
  return std::round(v * f) / f;
}

double significant(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return std::strtod(buf, nullptr);
}

struct Layout {
  GridGeometry geometry{kSize, kSize, 300000.0, 6250000.0, kCellsize};
  std::vector<int> strip_of_col;
  std::vector<int> strip_start;

  Layout() {
    int col = 0;
    for (std::size_t j = 0; j < kClasses.size(); ++j) {
      strip_start.push_back(col);
      for (int k = 0; k < kClasses[j].strip_width; ++k, ++col) strip_of_col.push_back(static_cast<int>(j));
    }
    if (col != kSize) throw std::logic_error("strip widths must cover the grid");
  }

  bool nodata(int r, int c) const { return r == 0 && c == 0; }
};

Grid make_dem(const Layout& L) {
  std::vector<double> z(L.geometry.size());
  for (int r = 0; r < kSize; ++r) {
    for (int c = 0; c < kSize; ++c) {
      const int j = L.strip_of_col[c];
      const double half = (kClasses[j].strip_width - 1) / 2.0;
      const double offset = std::abs(c - L.strip_start[j] - half) / half;
      z[L.geometry.index(r, c)] = L.nodata(r, c) ? kNodata : round_to(100.0 + 2.0 * (kSize - 1 - r) + 3.0 * offset, 3);
    }
  }
  // A closed depression upstream in the first strip.
  z[L.geometry.index(15, 3)] -= 8.0;
  return Grid(L.geometry, kNodata, std::move(z));
}

Grid make_landcover(const Layout& L) {
  std::vector<double> lc(L.geometry.size(), kCatchmentClass);
  for (std::size_t j = 0; j < kClasses.size(); ++j) {
    int remaining = kClasses[j].area_cells;
    for (int r = kSize - 1; r >= 0 && remaining > 0; --r) {
      for (int k = 0; k < kClasses[j].strip_width && remaining > 0; ++k, --remaining) {
        lc[L.geometry.index(r, L.strip_start[j] + k)] = static_cast<double>(j + 1);
      }
    }
  }
  lc[L.geometry.index(0, 0)] = kNodata;
  return Grid(L.geometry, kNodata, std::move(lc));
}

Grid make_uniform(const Layout& L, double value) {
  std::vector<double> v(L.geometry.size(), value);
  v[L.geometry.index(0, 0)] = kNodata;
  return Grid(L.geometry, kNodata, std::move(v));
}

Grid make_base_k(const Layout& L) {
  std::vector<double> k(L.geometry.size());
  for (int r = 0; r < kSize; ++r) {
    for (int c = 0; c < kSize; ++c) {
      k[L.geometry.index(r, c)] = L.nodata(r, c) ? kNodata : 0.025 + 0.001 * ((r * 7 + c * 3) % 11);
    }
  }
  return Grid(L.geometry, kNodata, std::move(k));
}

natcap::ClassTable make_class_table(const std::vector<double>& trap_eff) {
  std::vector<ClassParameterRow> rows;
  for (std::size_t j = 0; j < kClasses.size(); ++j) {
    const AssetClass& a = kClasses[j];
    const double density = a.carbon_target_t / a.area_cells;
    ClassParameterRow row;
    row.class_id = static_cast<int>(j + 1);
    row.name = a.name;
    row.native = a.native;
    row.c_factor = a.c_factor;
    row.p_factor = 1.0;
    row.trap_eff = trap_eff[j];
    row.carbon_above = round_to(density * a.pool_split[0], 4);
    row.carbon_below = round_to(density * a.pool_split[1], 4);
    row.carbon_dead = round_to(density - row.carbon_above - row.carbon_below, 4);
    rows.push_back(row);
  }
  rows.push_back({kCatchmentClass, "Catchment land", false, kCatchmentC, 1.0, 0.0, 0.0, 0.0, 0.0});
  return natcap::ClassTable(std::move(rows));
}

struct ModelOutput {
  natcap::ServiceByClass baseline;
  natcap::ServiceByClass scenario;
  double generated = 0.0;
};

ModelOutput run(const Grid& dem, const Grid& r, const Grid& k, const Grid& lc_grid, const natcap::ClassTable& table) {
  const natcap::LandCoverGrid lc(lc_grid);
  const Grid filled = natcap::fill_pits(dem);
  const auto dirs = natcap::flow_direction_d8(filled);
  const Grid accum = natcap::flow_accumulation(dirs);
  const natcap::RusleInputs in{r, k, natcap::compute_ls(filled, accum), table.c_factors(), table.p_factors()};
  const Grid loss = natcap::soil_loss(in, lc);
  std::vector<int> assets;
  for (std::size_t j = 0; j < kClasses.size(); ++j) assets.push_back(static_cast<int>(j + 1));
  const auto mask = lc.restricted_to(assets);
  const auto base = natcap::route_sediment(loss, dirs, table.trap_efficiencies(), lc);
  const auto scen = natcap::route_sediment(loss, dirs, natcap::optimal_scenario_params(table).trap_efficiencies(), lc);
  return {natcap::filtration_service(base, mask), natcap::filtration_service(scen, mask), base.total_generated()};
}

const char* kConfig = R"([inputs]
dem = dem.asc
r_factor = r_factor.asc
k_factor = k_factor.asc
landcover = landcover.asc
class_table = classes.csv

[assets]
classes = 1, 2, 3, 4, 5, 6, 7, 8, 9

[periods]
baseline = 2013
scenario = 2023

[valuation]
sediment_unit_cost = 250
discount_rate = 0.07
horizon_years = 100
annuity_timing = due
carbon_price = 37
scc_prices = 73, 274
c_to_co2 = 3.67

[classification]
sediment_filtration = business
carbon = society

[accounts]
per_ha_total = area_weighted

[output]
alternative = voluntary
)";

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw std::runtime_error("cannot write " + path.string());
}

}  // namespace

int main(int argc, char** argv) {
  try {
    const std::filesystem::path out = argc > 1 ? argv[1] : "data/fixture";
    std::filesystem::create_directories(out);

    const Layout L;
    const Grid dem = make_dem(L);
    const Grid lc = make_landcover(L);
    const Grid r = make_uniform(L, kRainfallErosivity);
    const Grid k0 = make_base_k(L);
    // Baseline trapped in a strip grows with its class's trap efficiency while the
    // optimal run does not depend on it, so each ratio is solved by bisection.
    std::vector<double> trap(kClasses.size()), lo(kClasses.size(), 0.0), hi(kClasses.size(), kNativeMaxTrap);
    for (std::size_t j = 0; j < kClasses.size(); ++j) trap[j] = kClasses[j].trap_eff;
    for (int iter = 0; iter < 60; ++iter) {
      for (std::size_t j = 0; j < kClasses.size(); ++j) {
        if (kClasses[j].optimal_target_t >= 0.0) trap[j] = 0.5 * (lo[j] + hi[j]);
      }
      const ModelOutput m = run(dem, r, k0, lc, make_class_table(trap));
      for (std::size_t j = 0; j < kClasses.size(); ++j) {
        if (kClasses[j].optimal_target_t < 0.0) continue;
        const int id = static_cast<int>(j + 1);
        const double ratio = m.scenario.classes.at(id).quantity / m.baseline.classes.at(id).quantity;
        const double wanted = kClasses[j].optimal_target_t / kClasses[j].sediment_target_t;
        (ratio > wanted ? lo[j] : hi[j]) = trap[j];
      }
    }
    for (std::size_t j = 0; j < kClasses.size(); ++j) trap[j] = round_to(trap[j], 4);
    const natcap::ClassTable table = make_class_table(trap);

    const ModelOutput first = run(dem, r, k0, lc, table);
    std::vector<double> scale(kClasses.size());
    for (std::size_t j = 0; j < kClasses.size(); ++j) {
      const double trapped = first.baseline.classes.at(static_cast<int>(j + 1)).quantity;
      if (!(trapped > 0.0)) throw std::runtime_error(std::string(kClasses[j].name) + " traps nothing");
      scale[j] = kClasses[j].sediment_target_t / trapped;
    }
    std::vector<double> k(k0.values().begin(), k0.values().end());
    for (std::size_t i = 0; i < k.size(); ++i) {
      if (k0.valid(i)) k[i] = significant(k[i] * scale[L.strip_of_col[L.geometry.col_of(i)]], 9);
    }
    const Grid k_cal = k0.with_values(std::move(k));

    natcap::write_ascii_grid_file(dem, (out / "dem.asc").string());
    natcap::write_ascii_grid_file(r, (out / "r_factor.asc").string());
    natcap::write_ascii_grid_file(k_cal, (out / "k_factor.asc").string());
    natcap::write_ascii_grid_file(lc, (out / "landcover.asc").string());
    write_text(out / "classes.csv", natcap::write_class_table(table));
    write_text(out / "natcap.ini", kConfig);

    // Report from the files as written.
    const auto read = [&](const char* name) { return natcap::read_ascii_grid_file((out / name).string()); };
    const auto table_read = natcap::read_class_table_file((out / "classes.csv").string());
    const ModelOutput check = run(read("dem.asc"), read("r_factor.asc"), read("k_factor.asc"), read("landcover.asc"), table_read);
    const auto carbon = natcap::carbon_storage(natcap::LandCoverGrid(read("landcover.asc")), natcap::carbon_pools(table_read));

    std::printf("%-44s %7s %8s %10s %10s %10s %10s\n", "class", "trap", "K scale", "trapped", "target", "optimal",
                "carbon t");
    for (std::size_t j = 0; j < kClasses.size(); ++j) {
      const int id = static_cast<int>(j + 1);
      std::printf("%-44s %7.4f %8.4f %10.4f %10.4f %10.4f %10.2f\n", kClasses[j].name, trap[j], scale[j],
                  check.baseline.classes.at(id).quantity, kClasses[j].sediment_target_t,
                  check.scenario.classes.at(id).quantity, carbon.per_class.at(id).total_t);
    }
    std::printf("trapped baseline %.4f t, optimal %.4f t, generated %.4f t, carbon %.2f t\n",
                check.baseline.total(), check.scenario.total(), check.generated, carbon.portfolio_total);
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "make_fixture: " << e.what() << '\n';
    return 1;
  }
}
