#include "natcap/pipeline.hpp"

#include <fstream>
#include <random>

#include "natcap/error.hpp"
#include "natcap/hydrology.hpp"

namespace natcap {

namespace fs = std::filesystem;

namespace {

std::map<int, double> areas_of(const ServiceByClass& s) {
  std::map<int, double> out;
  for (const auto& [cls, q] : s.classes) out[cls] = q.area_ha;
  return out;
}

std::map<int, double> quantities_of(const ServiceByClass& s) {
  std::map<int, double> out;
  for (const auto& [cls, q] : s.classes) out[cls] = q.quantity;
  return out;
}

/// Every asset class gets a row, even when it has no cells.
ServiceByClass with_all_classes(ServiceByClass s, const std::vector<ClassLabel>& labels) {
  for (const auto& l : labels) s.classes[l.class_id];
  return s;
}

void add_document(std::map<std::string, std::string>& files, const Document& doc,
                  const std::vector<OutputFormat>& formats) {
  for (OutputFormat f : formats) {
    switch (f) {
      case OutputFormat::Txt:
        files[doc.stem + ".txt"] = doc.text;
        break;
      case OutputFormat::Csv:
        files[doc.stem + ".csv"] = doc.csv;
        break;
      case OutputFormat::Json:
        files[doc.stem + ".json"] = doc.json.dump(2) + "\n";
        break;
    }
  }
}

template <class Account>
Document account_document(const std::string& stem, const Account& account) {
  const ReportTable table = to_table(account);
  return {stem, render_text(table), render_csv(table), to_json(account)};
}

}  // namespace

Command parse_command(const std::string& text) {
  if (text == "extent") return Command::Extent;
  if (text == "physical") return Command::Physical;
  if (text == "monetary") return Command::Monetary;
  if (text == "statements") return Command::Statements;
  if (text == "all") return Command::All;
  throw ParameterError("unknown command '" + text + "'");
}

std::string to_string(Command command) {
  switch (command) {
    case Command::Extent:
      return "extent";
    case Command::Physical:
      return "physical";
    case Command::Monetary:
      return "monetary";
    case Command::Statements:
      return "statements";
    case Command::All:
      return "all";
  }
  return "all";
}

OutputFormat parse_output_format(const std::string& text) {
  if (text == "txt") return OutputFormat::Txt;
  if (text == "csv") return OutputFormat::Csv;
  if (text == "json") return OutputFormat::Json;
  throw ParameterError("unknown format '" + text + "' (expected txt, csv or json)");
}

ModelRun run_model(const RunConfig& config, Command command) {
  ModelRun run;
  const ClassTable table = read_class_table_file(config.inputs.class_table);
  std::vector<int> asset_ids = config.asset_classes;
  if (asset_ids.empty()) {
    for (const auto& r : table.rows()) asset_ids.push_back(r.class_id);
  }
  run.baseline_params = table;
  run.scenario_params = optimal_scenario_params(table);
  const ClassTable asset_table = table.subset(asset_ids);
  for (const auto& r : asset_table.rows()) run.asset_labels.push_back({r.class_id, r.name});

  const LandCoverGrid landcover(read_ascii_grid_file(config.inputs.landcover));
  for (int cls : landcover.classes()) table.at(cls);
  run.asset_mask = landcover.restricted_to(asset_ids);

  const LandCoverGrid closing = config.inputs.landcover_closing.empty()
                                    ? landcover
                                    : LandCoverGrid(read_ascii_grid_file(config.inputs.landcover_closing));
  run.extent = build_extent_account(run.asset_mask, closing.restricted_to(asset_ids), run.asset_labels, config.periods);
  if (command == Command::Extent) return run;

  const Grid dem = read_ascii_grid_file(config.inputs.dem);
  assert_aligned(dem.geometry(), landcover.geometry());
  const Grid filled = fill_pits(dem);
  const FlowDirGrid dirs = flow_direction_d8(filled);
  const Grid accum = flow_accumulation(dirs);

  RusleInputs rusle;
  rusle.r_factor = read_ascii_grid_file(config.inputs.r_factor);
  rusle.k_factor = read_ascii_grid_file(config.inputs.k_factor);
  rusle.ls = compute_ls(filled, accum, config.hydrology);
  rusle.c_factor = table.c_factors();
  rusle.p_factor = table.p_factors();
  const Grid loss = soil_loss(rusle, landcover);

  // The optimal scenario changes trap efficiencies only, so generation is shared.
  run.sediment_baseline = route_sediment(loss, dirs, run.baseline_params.trap_efficiencies(), landcover);
  run.sediment_scenario = route_sediment(loss, dirs, run.scenario_params.trap_efficiencies(), landcover);
  const ServiceByClass sed_base = with_all_classes(filtration_service(*run.sediment_baseline, run.asset_mask), run.asset_labels);
  const ServiceByClass sed_scen = with_all_classes(filtration_service(*run.sediment_scenario, run.asset_mask), run.asset_labels);

  run.carbon_baseline = carbon_storage(run.asset_mask, carbon_pools(asset_table));
  run.carbon_scenario = carbon_storage(run.asset_mask, carbon_pools(run.scenario_params.subset(asset_ids)));
  std::map<int, double> carbon_base, carbon_scen, carbon_area;
  for (const auto& [cls, c] : run.carbon_baseline->per_class) {
    carbon_base[cls] = c.total_t;
    carbon_area[cls] = c.area_ha;
  }
  for (const auto& [cls, c] : run.carbon_scenario->per_class) carbon_scen[cls] = c.total_t;

  run.physical.sediment = build_physical_flow_account("Sediment filtration", "t", quantities_of(sed_base),
                                                      quantities_of(sed_scen), areas_of(sed_base), run.asset_labels,
                                                      config.periods, config.per_ha_total);
  run.physical.carbon = build_physical_flow_account("Carbon storage", "t C", carbon_base, carbon_scen, carbon_area,
                                                    run.asset_labels, config.periods, config.per_ha_total);
  if (command == Command::Physical) return run;

  run.monetary = build_monetary_account(run.physical, config.valuation);
  if (command == Command::Monetary) return run;

  run.statements = build_statement_set(*run.monetary, run.physical, config.valuation, config.classification);
  return run;
}

std::map<std::string, std::string> render_outputs(const ModelRun& run, Command command,
                                                  DisclosureAlternative alternative,
                                                  const std::vector<OutputFormat>& formats) {
  std::map<std::string, std::string> files;
  if (command == Command::Extent || command == Command::All) {
    add_document(files, account_document("extent", run.extent), formats);
  }
  if (command == Command::Physical || command == Command::All) {
    add_document(files, account_document("sediment_physical", *run.physical.sediment), formats);
    add_document(files, account_document("carbon_physical", *run.physical.carbon), formats);
  }
  if (command == Command::Monetary || command == Command::All) {
    add_document(files, account_document("monetary", *run.monetary), formats);
  }
  if (command == Command::Statements || command == Command::All) {
    for (const auto& doc : select_disclosure(alternative, *run.statements)) add_document(files, doc, formats);
  }
  return files;
}

void write_outputs_atomically(const fs::path& dir, const std::map<std::string, std::string>& files) {
  const fs::path target = fs::absolute(dir).lexically_normal();
  const fs::path parent = target.parent_path();
  std::error_code ec;
  fs::create_directories(parent, ec);
  if (ec) throw Error("cannot create '" + parent.string() + "': " + ec.message());

  std::random_device rd;
  const fs::path staging = parent / ("." + target.filename().string() + ".staging-" + std::to_string(rd()));
  try {
    fs::create_directories(staging);
    for (const auto& [name, content] : files) {
      std::ofstream out(staging / name, std::ios::binary);
      out << content;
      out.close();
      if (!out) throw Error("failed writing '" + (staging / name).string() + "'");
    }
    fs::create_directories(target);
    for (const auto& [name, content] : files) fs::rename(staging / name, target / name);
  } catch (const fs::filesystem_error& e) {
    fs::remove_all(staging, ec);
    throw Error(std::string("writing outputs: ") + e.what());
  } catch (...) {
    fs::remove_all(staging, ec);
    throw;
  }
  fs::remove_all(staging, ec);
}

std::vector<std::string> run_pipeline(const RunConfig& config, Command command, const RunOptions& options) {
  const ModelRun run = run_model(config, command);
  const auto files = render_outputs(run, command, options.alternative, options.formats);
  write_outputs_atomically(options.output_dir, files);
  std::vector<std::string> names;
  for (const auto& [name, _] : files) names.push_back(name);
  return names;
}

}  // namespace natcap
