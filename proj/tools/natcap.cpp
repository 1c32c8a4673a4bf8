// natcap: natural capital accounts and statements from land cover and terrain rasters.

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "natcap/config.hpp"
#include "natcap/error.hpp"
#include "natcap/pipeline.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

struct Args {
  std::string config;
  std::string out;
  std::string alternative;
  std::string format;
};

void add_run_options(CLI::App* cmd, Args& args) {
  cmd->add_option("--config", args.config, "Run configuration (INI)")->required();
  cmd->add_option("--out", args.out, "Output directory (default: [output] directory, else ./natcap_output)");
  cmd->add_option("--alternative", args.alternative, "Disclosure alternative")
      ->check(CLI::IsMember({"balance_sheet_item", "notes_only", "voluntary"}));
  cmd->add_option("--format", args.format, "Single output format (default: all three)")
      ->check(CLI::IsMember({"txt", "csv", "json"}));
}

int run(const std::string& command, const Args& args) {
  const natcap::RunConfig config = natcap::load_config(args.config);
  natcap::RunOptions options;
  options.output_dir = !args.out.empty()                ? args.out
                       : !config.output_dir.empty()     ? config.output_dir
                                                        : std::string("natcap_output");
  options.alternative =
      args.alternative.empty() ? config.alternative : natcap::parse_disclosure_alternative(args.alternative);
  if (!args.format.empty()) options.formats = {natcap::parse_output_format(args.format)};

  const auto files = natcap::run_pipeline(config, natcap::parse_command(command), options);
  std::cerr << "natcap " << command << ": wrote " << files.size() << " files to " << options.output_dir.string()
            << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Natural capital accounts, valuation and financial statements", "natcap"};
  app.require_subcommand(1);

  Args args;
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"extent", "Extent account (opening, additions, losses, closing)"},
      {"physical", "Sediment filtration and carbon storage physical accounts"},
      {"monetary", "Monetary account of service values"},
      {"statements", "Financial statements and notes for the disclosure alternative"},
      {"all", "Every account and statement"},
  };
  for (const auto& [name, help] : commands) add_run_options(app.add_subcommand(name, help), args);

  CLI::App* echo = app.add_subcommand("echo-config", "Print the validated configuration with defaults applied");
  echo->add_option("--config", args.config, "Run configuration (INI)")->required();

  if (argc > 1 && argv[1][0] != '-' && app.get_subcommand_no_throw(argv[1]) == nullptr) {
    std::cerr << "natcap: unknown command '" << argv[1] << "'\n\n" << app.help();
    return kExitUsage;
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    std::cerr << '\n' << app.help();
    return kExitUsage;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    if (command == "echo-config") {
      std::cout << natcap::to_ini(natcap::load_config(args.config));
      return kExitOk;
    }
    return run(command, args);
  } catch (const natcap::Error& e) {
    std::cerr << "natcap: error: " << e.what() << '\n';
    return kExitRuntime;
  } catch (const std::exception& e) {
    std::cerr << "natcap: unexpected error: " << e.what() << '\n';
    return kExitRuntime;
  }
}
