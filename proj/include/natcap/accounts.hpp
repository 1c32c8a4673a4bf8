#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "natcap/grid.hpp"
#include "natcap/report.hpp"

namespace natcap {

struct ClassLabel {
  int class_id = 0;
  std::string name;
};

/// Opening and closing labels of the accounting period.
struct PeriodLabels {
  std::string baseline = "2013";
  std::string scenario = "2023";

  bool operator==(const PeriodLabels&) const = default;
};

struct ExtentRow {
  int class_id = 0;
  std::string name;
  double opening_ha = 0.0;
  double additions_ha = 0.0;
  double losses_ha = 0.0;
  double closing_ha = 0.0;
  double change_ha = 0.0;
};

struct ExtentAccount {
  PeriodLabels periods;
  std::vector<ExtentRow> rows;
  ExtentRow totals;
};

/// How the per-hectare cells of a totals row are formed.
enum class PerHaTotal { AreaWeighted, ClassMean };

struct FlowRow {
  int class_id = 0;
  std::string name;
  double area_ha = 0.0;
  double baseline_qty = 0.0;
  double scenario_qty = 0.0;
  double change_qty = 0.0;
  std::optional<double> baseline_per_ha;
  std::optional<double> scenario_per_ha;
  std::optional<double> change_per_ha;
};

struct PhysicalFlowAccount {
  std::string service;
  std::string unit;
  PeriodLabels periods;
  PerHaTotal per_ha_total = PerHaTotal::AreaWeighted;
  std::vector<FlowRow> rows;
  FlowRow totals;

  /// Per-class map of one column, keyed by class id.
  std::map<int, double> baseline() const;
  std::map<int, double> scenario() const;
};

/// Net additions/losses per class between two land-cover maps. Rows follow `classes` order.
ExtentAccount build_extent_account(const LandCoverGrid& t0, const LandCoverGrid& t1,
                                   const std::vector<ClassLabel>& classes, const PeriodLabels& periods = {});

PhysicalFlowAccount build_physical_flow_account(const std::string& service, const std::string& unit,
                                                const std::map<int, double>& baseline,
                                                const std::map<int, double>& scenario,
                                                const std::map<int, double>& areas,
                                                const std::vector<ClassLabel>& classes,
                                                const PeriodLabels& periods = {},
                                                PerHaTotal per_ha_total = PerHaTotal::AreaWeighted);

ReportTable to_table(const ExtentAccount& account);
ReportTable to_table(const PhysicalFlowAccount& account);
nlohmann::json to_json(const ExtentAccount& account);
nlohmann::json to_json(const PhysicalFlowAccount& account);

std::string to_string(PerHaTotal mode);
PerHaTotal parse_per_ha_total(const std::string& text);

}  // namespace natcap
