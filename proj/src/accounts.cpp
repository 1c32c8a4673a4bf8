#include "natcap/accounts.hpp"

#include <algorithm>
#include <set>

#include "natcap/error.hpp"

namespace natcap {

namespace {

void require_labels(const std::vector<int>& present, const std::vector<ClassLabel>& classes, const char* what) {
  for (int cls : present) {
    const bool known =
        std::any_of(classes.begin(), classes.end(), [&](const ClassLabel& l) { return l.class_id == cls; });
    if (!known) throw ParameterError(std::string(what) + ": class " + std::to_string(cls) + " has no name");
  }
}

std::optional<double> per_ha(double qty, double area) {
  if (area > 0.0) return qty / area;
  return std::nullopt;
}

nlohmann::json opt_json(const std::optional<double>& v) { return v ? nlohmann::json(*v) : nlohmann::json(nullptr); }

nlohmann::json flow_row_json(const FlowRow& r) {
  return {{"class_id", r.class_id},
          {"name", r.name},
          {"area_ha", r.area_ha},
          {"baseline_qty", r.baseline_qty},
          {"baseline_per_ha", opt_json(r.baseline_per_ha)},
          {"scenario_qty", r.scenario_qty},
          {"scenario_per_ha", opt_json(r.scenario_per_ha)},
          {"change_qty", r.change_qty},
          {"change_per_ha", opt_json(r.change_per_ha)}};
}

nlohmann::json extent_row_json(const ExtentRow& r) {
  return {{"class_id", r.class_id},       {"name", r.name},           {"opening_ha", r.opening_ha},
          {"additions_ha", r.additions_ha}, {"losses_ha", r.losses_ha}, {"closing_ha", r.closing_ha},
          {"change_ha", r.change_ha}};
}

}  // namespace

std::map<int, double> PhysicalFlowAccount::baseline() const {
  std::map<int, double> out;
  for (const auto& r : rows) out[r.class_id] = r.baseline_qty;
  return out;
}

std::map<int, double> PhysicalFlowAccount::scenario() const {
  std::map<int, double> out;
  for (const auto& r : rows) out[r.class_id] = r.scenario_qty;
  return out;
}

ExtentAccount build_extent_account(const LandCoverGrid& t0, const LandCoverGrid& t1,
                                   const std::vector<ClassLabel>& classes, const PeriodLabels& periods) {
  assert_aligned(t0.geometry(), t1.geometry());
  require_labels(t0.classes(), classes, "extent account");
  require_labels(t1.classes(), classes, "extent account");

  std::map<int, std::size_t> open_cells, close_cells;
  for (std::size_t i = 0; i < t0.grid().size(); ++i) {
    if (t0.valid(i)) ++open_cells[t0.class_at(i)];
    if (t1.valid(i)) ++close_cells[t1.class_at(i)];
  }
  const double cell_ha = cell_area_ha(t0.geometry());

  ExtentAccount account;
  account.periods = periods;
  account.totals.name = "Total";
  for (const auto& label : classes) {
    ExtentRow row;
    row.class_id = label.class_id;
    row.name = label.name;
    row.opening_ha = static_cast<double>(open_cells[label.class_id]) * cell_ha;
    row.closing_ha = static_cast<double>(close_cells[label.class_id]) * cell_ha;
    row.additions_ha = std::max(0.0, row.closing_ha - row.opening_ha);
    row.losses_ha = std::max(0.0, row.opening_ha - row.closing_ha);
    row.change_ha = row.closing_ha - row.opening_ha;
    account.totals.opening_ha += row.opening_ha;
    account.totals.additions_ha += row.additions_ha;
    account.totals.losses_ha += row.losses_ha;
    account.totals.closing_ha += row.closing_ha;
    account.totals.change_ha += row.change_ha;
    account.rows.push_back(std::move(row));
  }
  return account;
}

PhysicalFlowAccount build_physical_flow_account(const std::string& service, const std::string& unit,
                                                const std::map<int, double>& baseline,
                                                const std::map<int, double>& scenario,
                                                const std::map<int, double>& areas,
                                                const std::vector<ClassLabel>& classes,
                                                const PeriodLabels& periods, PerHaTotal per_ha_total) {
  auto keys = [](const std::map<int, double>& m) {
    std::vector<int> k;
    for (const auto& kv : m) k.push_back(kv.first);
    return k;
  };
  if (keys(baseline) != keys(scenario) || keys(baseline) != keys(areas)) {
    throw ParameterError("physical flow account '" + service + "': class keys differ between baseline, scenario and areas");
  }
  require_labels(keys(baseline), classes, "physical flow account");

  PhysicalFlowAccount account;
  account.service = service;
  account.unit = unit;
  account.periods = periods;
  account.per_ha_total = per_ha_total;
  FlowRow& t = account.totals;
  t.name = "Total";

  double base_sum = 0.0, scen_sum = 0.0, change_sum = 0.0;
  int with_area = 0;
  for (const auto& label : classes) {
    auto it = baseline.find(label.class_id);
    if (it == baseline.end()) continue;
    FlowRow row;
    row.class_id = label.class_id;
    row.name = label.name;
    row.area_ha = areas.at(label.class_id);
    row.baseline_qty = it->second;
    row.scenario_qty = scenario.at(label.class_id);
    row.change_qty = row.scenario_qty - row.baseline_qty;
    row.baseline_per_ha = per_ha(row.baseline_qty, row.area_ha);
    row.scenario_per_ha = per_ha(row.scenario_qty, row.area_ha);
    row.change_per_ha = per_ha(row.change_qty, row.area_ha);

    t.area_ha += row.area_ha;
    t.baseline_qty += row.baseline_qty;
    t.scenario_qty += row.scenario_qty;
    t.change_qty += row.change_qty;
    if (row.area_ha > 0.0) {
      base_sum += *row.baseline_per_ha;
      scen_sum += *row.scenario_per_ha;
      change_sum += *row.change_per_ha;
      ++with_area;
    }
    account.rows.push_back(std::move(row));
  }

  if (per_ha_total == PerHaTotal::AreaWeighted) {
    t.baseline_per_ha = per_ha(t.baseline_qty, t.area_ha);
    t.scenario_per_ha = per_ha(t.scenario_qty, t.area_ha);
    t.change_per_ha = per_ha(t.change_qty, t.area_ha);
  } else if (with_area > 0) {
    t.baseline_per_ha = base_sum / with_area;
    t.scenario_per_ha = scen_sum / with_area;
    t.change_per_ha = change_sum / with_area;
  }
  return account;
}

ReportTable to_table(const ExtentAccount& a) {
  ReportTable t;
  t.title = "Ecosystem extent account (ha)";
  t.header = {"Asset type", "Opening balance " + a.periods.baseline, "Additions", "Losses",
              "Closing balance " + a.periods.scenario, "Change"};
  auto row_cells = [](const ExtentRow& r) {
    return std::vector<Cell>{Cell::label(r.name),          Cell::number(r.opening_ha, 0),
                             Cell::number(r.additions_ha, 0), Cell::number(r.losses_ha, 0),
                             Cell::number(r.closing_ha, 0),   Cell::number(r.change_ha, 0)};
  };
  for (const auto& r : a.rows) t.rows.push_back(row_cells(r));
  t.rows.push_back(row_cells(a.totals));
  return t;
}

ReportTable to_table(const PhysicalFlowAccount& a) {
  // t/ha to 1 dp for sediment-scale values, whole units otherwise.
  const int per_ha_dp = a.totals.baseline_per_ha.value_or(0.0) < 10.0 ? 1 : 0;
  ReportTable t;
  t.title = a.service + " (" + a.unit + ")";
  const std::string& b = a.periods.baseline;
  const std::string& s = a.periods.scenario;
  t.header = {"Asset type",       b + " " + a.unit + "/ha", b + " " + a.unit, s + " " + a.unit + "/ha",
              s + " " + a.unit, "Area ha",                 "Change " + a.unit + "/ha", "Change " + a.unit};
  auto row_cells = [&](const FlowRow& r) {
    return std::vector<Cell>{Cell::label(r.name),
                             Cell::number(r.baseline_per_ha, per_ha_dp),
                             Cell::number(r.baseline_qty, 0),
                             Cell::number(r.scenario_per_ha, per_ha_dp),
                             Cell::number(r.scenario_qty, 0),
                             Cell::number(r.area_ha, 0),
                             Cell::number(r.change_per_ha, per_ha_dp),
                             Cell::number(r.change_qty, 0)};
  };
  for (const auto& r : a.rows) t.rows.push_back(row_cells(r));
  t.rows.push_back(row_cells(a.totals));
  return t;
}

nlohmann::json to_json(const ExtentAccount& a) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : a.rows) rows.push_back(extent_row_json(r));
  return {{"account", "extent"},
          {"unit", "ha"},
          {"periods", {{"baseline", a.periods.baseline}, {"scenario", a.periods.scenario}}},
          {"rows", rows},
          {"totals", extent_row_json(a.totals)}};
}

nlohmann::json to_json(const PhysicalFlowAccount& a) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : a.rows) rows.push_back(flow_row_json(r));
  return {{"service", a.service},
          {"unit", a.unit},
          {"periods", {{"baseline", a.periods.baseline}, {"scenario", a.periods.scenario}}},
          {"per_ha_total", to_string(a.per_ha_total)},
          {"rows", rows},
          {"totals", flow_row_json(a.totals)}};
}

std::string to_string(PerHaTotal mode) { return mode == PerHaTotal::AreaWeighted ? "area_weighted" : "class_mean"; }

PerHaTotal parse_per_ha_total(const std::string& text) {
  if (text == "area_weighted") return PerHaTotal::AreaWeighted;
  if (text == "class_mean") return PerHaTotal::ClassMean;
  throw ParameterError("per_ha_total must be area_weighted or class_mean, got '" + text + "'");
}

}  // namespace natcap
