#pragma once

#include <map>
#include <optional>

#include "natcap/class_table.hpp"
#include "natcap/grid.hpp"
#include "natcap/hydrology.hpp"

namespace natcap {

struct RusleInputs {
  Grid r_factor;  ///< MJ mm ha-1 h-1 yr-1
  Grid k_factor;  ///< t ha h ha-1 MJ-1 mm-1
  Grid ls;
  std::map<int, double> c_factor;
  std::map<int, double> p_factor;
};

/// Per-cell sediment budget, all in t/yr.
struct SedimentResult {
  Grid generated;
  Grid trapped;
  double exported_at_outlets = 0.0;
  std::map<int, double> per_class_trapped;

  double total_generated() const;
  double total_trapped() const;
};

/// A service quantity attributed to one class.
struct ClassQuantity {
  double quantity = 0.0;
  double area_ha = 0.0;

  std::optional<double> per_ha() const {
    if (area_ha > 0.0) return quantity / area_ha;
    return std::nullopt;
  }
};

struct ServiceByClass {
  std::map<int, ClassQuantity> classes;

  double total() const;
  double total_area_ha() const;
  /// Mean of the class per-hectare values (classes with zero area skipped).
  double class_mean_per_ha() const;
  /// Portfolio quantity over portfolio area.
  double area_weighted_per_ha() const;
};

/// A = R K LS C P (t/ha/yr) scaled to t/cell/yr. Nodata in any input gives nodata.
Grid soil_loss(const RusleInputs& inputs, const LandCoverGrid& landcover);

/**
  Cascade trapping along D8 paths. Each cell passes on its own loss plus
  (1 - e) of what flows into it, and traps e of the inflow, where e is the
  trap efficiency of its class. Own generation is never trapped in place.
  Cells with nodata loss generate nothing; cells with nodata class pass flow through.
*/
SedimentResult route_sediment(const Grid& loss, const FlowDirGrid& dirs, const std::map<int, double>& trap_eff,
                              const LandCoverGrid& landcover);

/// Trapped tonnes and t/ha per asset class inside the reporting mask (non-asset cells are nodata).
ServiceByClass filtration_service(const SedimentResult& result, const LandCoverGrid& asset_mask);

/// Native classes take the maximum trap efficiency, and per pool the maximum
/// carbon density, found among native classes. Non-native rows are unchanged.
ClassTable optimal_scenario_params(const ClassTable& base);

}  // namespace natcap
