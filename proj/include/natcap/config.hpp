#pragma once

#include <filesystem>
#include <istream>
#include <string>
#include <vector>

#include "natcap/accounts.hpp"
#include "natcap/hydrology.hpp"
#include "natcap/statements.hpp"
#include "natcap/valuation.hpp"

namespace natcap {

struct InputPaths {
  std::string dem;
  std::string r_factor;
  std::string k_factor;
  std::string landcover;
  /// Land cover at the close of the period; empty means unchanged from `landcover`.
  std::string landcover_closing;
  std::string class_table;

  bool operator==(const InputPaths&) const = default;
};

/**
  Everything a run needs. Paths are absolute once loaded (relative entries
  in the file resolve against the config file's directory).

  INI layout:

      [inputs]     dem, r_factor, k_factor, landcover, landcover_closing, class_table
      [assets]     classes = 1, 2, 3          (default: every class in the table)
      [periods]    baseline, scenario
      [valuation]  sediment_unit_cost, discount_rate, horizon_years, annuity_timing,
                   carbon_price, scc_prices, c_to_co2
      [classification] sediment_filtration, carbon   (business | society)
      [hydrology]  max_slope_length
      [accounts]   per_ha_total                      (area_weighted | class_mean)
      [output]     directory, alternative
*/
struct RunConfig {
  InputPaths inputs;
  std::vector<int> asset_classes;
  PeriodLabels periods;
  ValuationParams valuation;
  ServiceClassification classification;
  LsOptions hydrology;
  PerHaTotal per_ha_total = PerHaTotal::AreaWeighted;
  DisclosureAlternative alternative = DisclosureAlternative::Voluntary;
  std::string output_dir;

  bool operator==(const RunConfig&) const = default;
};

/// Parses and validates; checks that inputs exist, grids align and the class table covers every class.
RunConfig load_config(const std::string& path);

/// Parses without touching the filesystem beyond path resolution.
RunConfig parse_config(std::istream& in, const std::filesystem::path& base_dir);

/// Reads the referenced inputs and throws ConfigError on any inconsistency.
void validate_inputs(const RunConfig& config);

/// Canonical INI text; parse_config(to_ini(c)) == c.
std::string to_ini(const RunConfig& config);

}  // namespace natcap
