#include "natcap/carbon.hpp"

#include "natcap/error.hpp"

namespace natcap {

std::map<int, CarbonPools> carbon_pools(const ClassTable& table) {
  std::map<int, CarbonPools> out;
  for (const auto& r : table.rows()) out[r.class_id] = {r.carbon_above, r.carbon_below, r.carbon_dead};
  return out;
}

CarbonStockResult carbon_storage(const LandCoverGrid& landcover, const std::map<int, CarbonPools>& pools) {
  for (int cls : landcover.classes()) {
    if (!pools.contains(cls)) throw ParameterError("class " + std::to_string(cls) + " has no carbon pool entry");
  }
  CarbonStockResult result;
  for (const auto& [cls, p] : pools) {
    if (p.above_ground < 0.0 || p.below_ground < 0.0 || p.dead < 0.0) {
      throw ParameterError("class " + std::to_string(cls) + ": negative carbon pool density");
    }
    ClassCarbon c;
    c.area_ha = landcover.area_ha(cls);
    c.density_t_per_ha = p.density();
    c.total_t = c.density_t_per_ha * c.area_ha;
    result.portfolio_total += c.total_t;
    result.per_class[cls] = c;
  }
  return result;
}

std::map<int, double> sequestration(const CarbonStockResult& t0, const CarbonStockResult& t1) {
  if (t0.per_class.size() != t1.per_class.size()) throw ParameterError("sequestration: class sets differ");
  std::map<int, double> out;
  for (const auto& [cls, c0] : t0.per_class) {
    auto it = t1.per_class.find(cls);
    if (it == t1.per_class.end()) {
      throw ParameterError("sequestration: class " + std::to_string(cls) + " missing from second stock");
    }
    out[cls] = it->second.total_t - c0.total_t;
  }
  return out;
}

double co2_equivalent(double tonnes_carbon, double factor) { return tonnes_carbon * factor; }

}  // namespace natcap
