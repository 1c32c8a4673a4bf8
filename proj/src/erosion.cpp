#include "natcap/erosion.hpp"

#include <algorithm>
#include <numeric>

#include "natcap/error.hpp"

namespace natcap {

namespace {

double sum_valid(const Grid& g) {
  double s = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (g.valid(i)) s += g[i];
  }
  return s;
}

}  // namespace

double SedimentResult::total_generated() const { return sum_valid(generated); }
double SedimentResult::total_trapped() const { return sum_valid(trapped); }

double ServiceByClass::total() const {
  return std::accumulate(classes.begin(), classes.end(), 0.0,
                         [](double acc, const auto& kv) { return acc + kv.second.quantity; });
}

double ServiceByClass::total_area_ha() const {
  return std::accumulate(classes.begin(), classes.end(), 0.0,
                         [](double acc, const auto& kv) { return acc + kv.second.area_ha; });
}

double ServiceByClass::class_mean_per_ha() const {
  double sum = 0.0;
  int n = 0;
  for (const auto& [id, q] : classes) {
    if (auto v = q.per_ha()) {
      sum += *v;
      ++n;
    }
  }
  return n ? sum / n : 0.0;
}

double ServiceByClass::area_weighted_per_ha() const {
  const double area = total_area_ha();
  return area > 0.0 ? total() / area : 0.0;
}

Grid soil_loss(const RusleInputs& in, const LandCoverGrid& landcover) {
  assert_aligned(in.r_factor, in.k_factor);
  assert_aligned(in.r_factor, in.ls);
  assert_aligned(in.r_factor.geometry(), landcover.geometry());

  for (int cls : landcover.classes()) {
    if (!in.c_factor.contains(cls) || !in.p_factor.contains(cls)) {
      throw ParameterError("class " + std::to_string(cls) + " has no C/P factor entry");
    }
  }
  for (const auto* m : {&in.c_factor, &in.p_factor}) {
    for (const auto& [cls, v] : *m) {
      if (!(v >= 0.0 && v <= 1.0)) {
        throw ParameterError("class " + std::to_string(cls) + ": C/P factor " + format_real(v) + " outside [0,1]");
      }
    }
  }

  const double area = cell_area_ha(in.r_factor);
  const Grid& r = in.r_factor;
  std::vector<double> out(r.size(), r.nodata());
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (!r.valid(i) || !in.k_factor.valid(i) || !in.ls.valid(i) || !landcover.valid(i)) continue;
    const int cls = landcover.class_at(i);
    if (r[i] < 0.0 || in.k_factor[i] < 0.0) {
      throw ParameterError("negative R or K factor at cell " + std::to_string(i));
    }
    const double per_ha = r[i] * in.k_factor[i] * in.ls[i] * in.c_factor.at(cls) * in.p_factor.at(cls);
    out[i] = per_ha * area;
  }
  return r.with_values(std::move(out));
}

SedimentResult route_sediment(const Grid& loss, const FlowDirGrid& dirs, const std::map<int, double>& trap_eff,
                              const LandCoverGrid& landcover) {
  assert_aligned(loss.geometry(), dirs.geometry());
  assert_aligned(loss.geometry(), landcover.geometry());
  for (const auto& [cls, e] : trap_eff) {
    if (!(e >= 0.0 && e <= 1.0)) {
      throw ParameterError("class " + std::to_string(cls) + ": trap_eff " + format_real(e) + " outside [0,1]");
    }
  }
  for (int cls : landcover.classes()) {
    if (!trap_eff.contains(cls)) throw ParameterError("class " + std::to_string(cls) + " has no trap_eff entry");
  }

  const auto order = dirs.topological_order();
  std::vector<double> incoming(loss.size(), 0.0);
  std::vector<double> trapped(loss.size(), loss.nodata());
  SedimentResult result;

  for (std::size_t i : order) {
    const double own = loss.valid(i) ? loss[i] : 0.0;
    const double e = landcover.valid(i) ? trap_eff.at(landcover.class_at(i)) : 0.0;
    const double caught = incoming[i] * e;
    trapped[i] = caught;
    if (landcover.valid(i)) result.per_class_trapped[landcover.class_at(i)] += caught;
    const double outgoing = own + (incoming[i] - caught);
    if (auto d = dirs.downstream(i)) {
      incoming[*d] += outgoing;
    } else {
      result.exported_at_outlets += outgoing;
    }
  }

  result.generated = loss;
  result.trapped = loss.with_values(std::move(trapped));
  return result;
}

ServiceByClass filtration_service(const SedimentResult& result, const LandCoverGrid& asset_mask) {
  assert_aligned(result.trapped.geometry(), asset_mask.geometry());
  if (asset_mask.classes().empty()) throw ParameterError("asset mask contains no cells");
  const double area = cell_area_ha(asset_mask.geometry());
  ServiceByClass out;
  for (int cls : asset_mask.classes()) out.classes[cls];
  for (std::size_t i = 0; i < result.trapped.size(); ++i) {
    if (!asset_mask.valid(i)) continue;
    auto& q = out.classes[asset_mask.class_at(i)];
    q.area_ha += area;
    if (result.trapped.valid(i)) q.quantity += result.trapped[i];
  }
  return out;
}

ClassTable optimal_scenario_params(const ClassTable& base) {
  const auto& rows = base.rows();
  if (std::none_of(rows.begin(), rows.end(), [](const auto& r) { return r.native; })) {
    throw ParameterError("optimal scenario requires at least one native class");
  }
  ClassParameterRow best;
  best.trap_eff = best.carbon_above = best.carbon_below = best.carbon_dead = 0.0;
  for (const auto& r : rows) {
    if (!r.native) continue;
    best.trap_eff = std::max(best.trap_eff, r.trap_eff);
    best.carbon_above = std::max(best.carbon_above, r.carbon_above);
    best.carbon_below = std::max(best.carbon_below, r.carbon_below);
    best.carbon_dead = std::max(best.carbon_dead, r.carbon_dead);
  }
  std::vector<ClassParameterRow> out = rows;
  for (auto& r : out) {
    if (!r.native) continue;
    r.trap_eff = best.trap_eff;
    r.carbon_above = best.carbon_above;
    r.carbon_below = best.carbon_below;
    r.carbon_dead = best.carbon_dead;
  }
  return ClassTable(std::move(out));
}

}  // namespace natcap
