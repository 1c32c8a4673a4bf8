#include "natcap/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "natcap/class_table.hpp"
#include "natcap/error.hpp"

namespace natcap {

namespace {

namespace pt = boost::property_tree;
namespace fs = std::filesystem;

const std::map<std::string, std::set<std::string>>& known_keys() {
  static const std::map<std::string, std::set<std::string>> keys = {
      {"inputs", {"dem", "r_factor", "k_factor", "landcover", "landcover_closing", "class_table"}},
      {"assets", {"classes"}},
      {"periods", {"baseline", "scenario"}},
      {"valuation",
       {"sediment_unit_cost", "discount_rate", "horizon_years", "annuity_timing", "carbon_price", "scc_prices",
        "c_to_co2"}},
      {"classification", {"sediment_filtration", "carbon"}},
      {"hydrology", {"max_slope_length"}},
      {"accounts", {"per_ha_total"}},
      {"output", {"directory", "alternative"}},
  };
  return keys;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

class Reader {
 public:
  explicit Reader(const pt::ptree& tree) : tree_(tree) {}

  std::optional<std::string> get(const std::string& key) const {
    auto v = tree_.get_optional<std::string>(pt::ptree::path_type(key, '.'));
    if (!v) return std::nullopt;
    return trim(*v);
  }

  std::string required(const std::string& key) const {
    auto v = get(key);
    if (!v || v->empty()) throw ConfigError("missing required key '" + key + "'");
    return *v;
  }

  double real(const std::string& key, double fallback) const {
    auto v = get(key);
    return v ? to_real(key, *v) : fallback;
  }

  int integer(const std::string& key, int fallback) const {
    auto v = get(key);
    if (!v) return fallback;
    int out = 0;
    auto [ptr, ec] = std::from_chars(v->data(), v->data() + v->size(), out);
    if (ec != std::errc() || ptr != v->data() + v->size()) {
      throw ConfigError(key + ": invalid integer '" + *v + "'");
    }
    return out;
  }

  template <class T, class Parse>
  T choice(const std::string& key, T fallback, Parse parse) const {
    auto v = get(key);
    if (!v) return fallback;
    try {
      return parse(*v);
    } catch (const ParameterError& e) {
      throw ConfigError(key + ": " + e.what());
    }
  }

  static double to_real(const std::string& key, const std::string& text) {
    double out = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
      throw ConfigError(key + ": invalid number '" + text + "'");
    }
    return out;
  }

 private:
  const pt::ptree& tree_;
};

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::string resolve(const fs::path& base, const std::string& p) {
  if (p.empty()) return p;
  fs::path path(p);
  if (path.is_relative()) path = base / path;
  return path.lexically_normal().string();
}

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) out += (i ? ", " : "") + items[i];
  return out;
}

}  // namespace

RunConfig parse_config(std::istream& in, const fs::path& base_dir) {
  pt::ptree tree;
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError("config line " + std::to_string(e.line()) + ": " + e.message());
  }
  for (const auto& [section, body] : tree) {
    auto it = known_keys().find(section);
    if (it == known_keys().end()) {
      if (body.empty()) throw ConfigError("key '" + section + "' must appear inside a section");
      throw ConfigError("unknown section '[" + section + "]'");
    }
    for (const auto& kv : body) {
      if (!it->second.contains(kv.first)) throw ConfigError("unknown key '" + section + "." + kv.first + "'");
    }
  }

  const Reader r(tree);
  RunConfig c;
  c.inputs.dem = resolve(base_dir, r.required("inputs.dem"));
  c.inputs.r_factor = resolve(base_dir, r.required("inputs.r_factor"));
  c.inputs.k_factor = resolve(base_dir, r.required("inputs.k_factor"));
  c.inputs.landcover = resolve(base_dir, r.required("inputs.landcover"));
  c.inputs.landcover_closing = resolve(base_dir, r.get("inputs.landcover_closing").value_or(""));
  c.inputs.class_table = resolve(base_dir, r.required("inputs.class_table"));

  if (auto classes = r.get("assets.classes")) {
    for (const auto& item : split_list(*classes)) {
      int id = 0;
      auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), id);
      if (ec != std::errc() || ptr != item.data() + item.size()) {
        throw ConfigError("assets.classes: invalid class id '" + item + "'");
      }
      c.asset_classes.push_back(id);
    }
    if (c.asset_classes.empty()) throw ConfigError("assets.classes: list is empty");
  }

  c.periods.baseline = r.get("periods.baseline").value_or(c.periods.baseline);
  c.periods.scenario = r.get("periods.scenario").value_or(c.periods.scenario);
  if (c.periods.baseline.empty() || c.periods.scenario.empty()) throw ConfigError("periods: labels must be non-empty");

  ValuationParams& v = c.valuation;
  v.sediment_unit_cost = r.real("valuation.sediment_unit_cost", v.sediment_unit_cost);
  v.discount_rate = r.real("valuation.discount_rate", v.discount_rate);
  v.horizon_years = r.integer("valuation.horizon_years", v.horizon_years);
  v.annuity_timing = r.choice("valuation.annuity_timing", v.annuity_timing, parse_annuity_timing);
  v.carbon_price = r.real("valuation.carbon_price", v.carbon_price);
  if (auto scc = r.get("valuation.scc_prices")) {
    v.scc_prices.clear();
    for (const auto& item : split_list(*scc)) v.scc_prices.push_back(Reader::to_real("valuation.scc_prices", item));
  }
  v.c_to_co2 = r.real("valuation.c_to_co2", v.c_to_co2);
  try {
    validate(v);
  } catch (const ParameterError& e) {
    throw ConfigError(std::string("valuation: ") + e.what());
  }

  c.classification.sediment_filtration =
      r.choice("classification.sediment_filtration", c.classification.sediment_filtration, parse_beneficiary);
  c.classification.carbon = r.choice("classification.carbon", c.classification.carbon, parse_beneficiary);
  c.hydrology.max_slope_length_m = r.real("hydrology.max_slope_length", c.hydrology.max_slope_length_m);
  if (!(c.hydrology.max_slope_length_m > 0.0)) throw ConfigError("hydrology.max_slope_length must be > 0");
  c.per_ha_total = r.choice("accounts.per_ha_total", c.per_ha_total, parse_per_ha_total);
  c.alternative = r.choice("output.alternative", c.alternative, parse_disclosure_alternative);
  c.output_dir = resolve(base_dir, r.get("output.directory").value_or(""));
  return c;
}

void validate_inputs(const RunConfig& config) {
  const std::vector<std::pair<const char*, std::string>> files = {
      {"inputs.dem", config.inputs.dem},
      {"inputs.r_factor", config.inputs.r_factor},
      {"inputs.k_factor", config.inputs.k_factor},
      {"inputs.landcover", config.inputs.landcover},
      {"inputs.landcover_closing", config.inputs.landcover_closing},
      {"inputs.class_table", config.inputs.class_table}};
  for (const auto& [key, path] : files) {
    if (!path.empty() && !fs::is_regular_file(path)) {
      throw ConfigError(std::string(key) + ": file not found '" + path + "'");
    }
  }

  ClassTable table;
  try {
    table = read_class_table_file(config.inputs.class_table);
  } catch (const Error& e) {
    throw ConfigError(std::string("inputs.class_table: ") + e.what());
  }
  for (int id : config.asset_classes) {
    if (!table.find(id)) throw ConfigError("assets.classes: class " + std::to_string(id) + " not in class table");
  }

  try {
    const Grid dem = read_ascii_grid_file(config.inputs.dem);
    for (const auto& path : {config.inputs.r_factor, config.inputs.k_factor}) {
      assert_aligned(dem, read_ascii_grid_file(path));
    }
    std::vector<std::string> landcovers = {config.inputs.landcover};
    if (!config.inputs.landcover_closing.empty()) landcovers.push_back(config.inputs.landcover_closing);
    for (const auto& path : landcovers) {
      const LandCoverGrid lc(read_ascii_grid_file(path));
      assert_aligned(dem.geometry(), lc.geometry());
      for (int cls : lc.classes()) {
        if (!table.find(cls)) {
          throw ConfigError(path + ": class " + std::to_string(cls) + " missing from class parameter table");
        }
      }
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(std::string("inputs: ") + e.what());
  }
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  const fs::path base = fs::absolute(fs::path(path)).parent_path();
  RunConfig config = parse_config(in, base);
  validate_inputs(config);
  return config;
}

std::string to_ini(const RunConfig& c) {
  std::ostringstream os;
  os << "[inputs]\n"
     << "dem = " << c.inputs.dem << '\n'
     << "r_factor = " << c.inputs.r_factor << '\n'
     << "k_factor = " << c.inputs.k_factor << '\n'
     << "landcover = " << c.inputs.landcover << '\n';
  if (!c.inputs.landcover_closing.empty()) os << "landcover_closing = " << c.inputs.landcover_closing << '\n';
  os << "class_table = " << c.inputs.class_table << "\n\n";

  if (!c.asset_classes.empty()) {
    std::vector<std::string> ids;
    for (int id : c.asset_classes) ids.push_back(std::to_string(id));
    os << "[assets]\nclasses = " << join(ids) << "\n\n";
  }

  os << "[periods]\nbaseline = " << c.periods.baseline << "\nscenario = " << c.periods.scenario << "\n\n";

  const ValuationParams& v = c.valuation;
  std::vector<std::string> scc;
  for (double p : v.scc_prices) scc.push_back(format_real(p));
  os << "[valuation]\n"
     << "sediment_unit_cost = " << format_real(v.sediment_unit_cost) << '\n'
     << "discount_rate = " << format_real(v.discount_rate) << '\n'
     << "horizon_years = " << v.horizon_years << '\n'
     << "annuity_timing = " << to_string(v.annuity_timing) << '\n'
     << "carbon_price = " << format_real(v.carbon_price) << '\n';
  os << "scc_prices = " << join(scc) << '\n';
  os << "c_to_co2 = " << format_real(v.c_to_co2) << "\n\n";

  os << "[classification]\nsediment_filtration = " << to_string(c.classification.sediment_filtration)
     << "\ncarbon = " << to_string(c.classification.carbon) << "\n\n";
  os << "[hydrology]\nmax_slope_length = " << format_real(c.hydrology.max_slope_length_m) << "\n\n";
  os << "[accounts]\nper_ha_total = " << to_string(c.per_ha_total) << "\n\n";
  os << "[output]\n";
  if (!c.output_dir.empty()) os << "directory = " << c.output_dir << '\n';
  os << "alternative = " << to_string(c.alternative) << '\n';
  return os.str();
}

}  // namespace natcap
