#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "natcap/accounts.hpp"
#include "natcap/carbon.hpp"
#include "natcap/class_table.hpp"
#include "natcap/config.hpp"
#include "natcap/erosion.hpp"
#include "natcap/statements.hpp"
#include "natcap/valuation.hpp"

namespace natcap {

enum class Command { Extent, Physical, Monetary, Statements, All };
enum class OutputFormat { Txt, Csv, Json };

Command parse_command(const std::string& text);
std::string to_string(Command command);
OutputFormat parse_output_format(const std::string& text);

/// Intermediate and final products of one run. Later stages stay empty when not requested.
struct ModelRun {
  ClassTable baseline_params;
  ClassTable scenario_params;
  std::vector<ClassLabel> asset_labels;
  LandCoverGrid asset_mask;

  ExtentAccount extent;
  std::optional<SedimentResult> sediment_baseline;
  std::optional<SedimentResult> sediment_scenario;
  std::optional<CarbonStockResult> carbon_baseline;
  std::optional<CarbonStockResult> carbon_scenario;
  PhysicalFlowAccounts physical;
  std::optional<MonetaryAccount> monetary;
  std::optional<StatementSet> statements;
};

/// Runs every stage the command needs: measure extent, then services, then value, then recognise.
ModelRun run_model(const RunConfig& config, Command command);

/// File name -> contents for the command's outputs.
std::map<std::string, std::string> render_outputs(const ModelRun& run, Command command,
                                                  DisclosureAlternative alternative,
                                                  const std::vector<OutputFormat>& formats);

/// Stages the files beside `dir` and moves them in only once all were written.
void write_outputs_atomically(const std::filesystem::path& dir, const std::map<std::string, std::string>& files);

struct RunOptions {
  std::filesystem::path output_dir;
  DisclosureAlternative alternative = DisclosureAlternative::Voluntary;
  std::vector<OutputFormat> formats = {OutputFormat::Txt, OutputFormat::Csv, OutputFormat::Json};
};

/// Model, render and write. Returns the written file names. Throws natcap::Error on failure.
std::vector<std::string> run_pipeline(const RunConfig& config, Command command, const RunOptions& options);

}  // namespace natcap
