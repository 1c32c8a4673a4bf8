#pragma once

#include <map>

#include "natcap/class_table.hpp"
#include "natcap/grid.hpp"

namespace natcap {

/// Carbon densities in t C/ha. Litter and soil carbon are not modelled.
struct CarbonPools {
  double above_ground = 0.0;
  double below_ground = 0.0;
  double dead = 0.0;

  double density() const { return above_ground + below_ground + dead; }
};

struct ClassCarbon {
  double total_t = 0.0;
  double density_t_per_ha = 0.0;
  double area_ha = 0.0;
};

struct CarbonStockResult {
  std::map<int, ClassCarbon> per_class;
  double portfolio_total = 0.0;
};

inline constexpr double kCarbonToCo2 = 3.67;

std::map<int, CarbonPools> carbon_pools(const ClassTable& table);

/// Class stock = (above + below + dead) x class area. One row per entry in `pools`.
CarbonStockResult carbon_storage(const LandCoverGrid& landcover, const std::map<int, CarbonPools>& pools);

/// Signed per-class change t1 - t0 (negative means emission).
std::map<int, double> sequestration(const CarbonStockResult& t0, const CarbonStockResult& t1);

double co2_equivalent(double tonnes_carbon, double factor = kCarbonToCo2);

}  // namespace natcap
