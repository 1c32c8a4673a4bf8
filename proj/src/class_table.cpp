#include "natcap/class_table.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "natcap/error.hpp"
#include "natcap/grid.hpp"

namespace natcap {

namespace {

double parse_field(const std::string& text, const std::string& field, int line_no) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ParseError("class table line " + std::to_string(line_no) + ": field '" + field + "' is not a number: '" +
                     text + "'");
  }
  return v;
}

bool parse_bool(const std::string& text, int line_no) {
  std::string t = text;
  std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (t == "true" || t == "1" || t == "yes") return true;
  if (t == "false" || t == "0" || t == "no") return false;
  throw ParseError("class table line " + std::to_string(line_no) + ": field 'native' is not a boolean: '" + text +
                   "'");
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

ClassTable::ClassTable(std::vector<ClassParameterRow> rows) : rows_(std::move(rows)) {
  std::set<int> ids;
  for (const auto& row : rows_) {
    if (!ids.insert(row.class_id).second) {
      throw ParameterError("duplicate class_id " + std::to_string(row.class_id) + " in class table");
    }
    validate(row);
  }
}

const ClassParameterRow* ClassTable::find(int class_id) const {
  auto it = std::find_if(rows_.begin(), rows_.end(), [&](const auto& r) { return r.class_id == class_id; });
  return it == rows_.end() ? nullptr : &*it;
}

const ClassParameterRow& ClassTable::at(int class_id) const {
  if (const auto* row = find(class_id)) return *row;
  throw ParameterError("class " + std::to_string(class_id) + " missing from class parameter table");
}

std::map<int, double> ClassTable::c_factors() const {
  std::map<int, double> out;
  for (const auto& r : rows_) out[r.class_id] = r.c_factor;
  return out;
}

std::map<int, double> ClassTable::p_factors() const {
  std::map<int, double> out;
  for (const auto& r : rows_) out[r.class_id] = r.p_factor;
  return out;
}

std::map<int, double> ClassTable::trap_efficiencies() const {
  std::map<int, double> out;
  for (const auto& r : rows_) out[r.class_id] = r.trap_eff;
  return out;
}

std::map<int, std::string> ClassTable::names() const {
  std::map<int, std::string> out;
  for (const auto& r : rows_) out[r.class_id] = r.name;
  return out;
}

ClassTable ClassTable::subset(const std::vector<int>& class_ids) const {
  std::vector<ClassParameterRow> out;
  for (const auto& r : rows_) {
    if (std::find(class_ids.begin(), class_ids.end(), r.class_id) != class_ids.end()) out.push_back(r);
  }
  return ClassTable(std::move(out));
}

void validate(const ClassParameterRow& row) {
  const std::string who = "class " + std::to_string(row.class_id) + ": ";
  auto fraction = [&](double v, const char* field) {
    if (!(v >= 0.0 && v <= 1.0)) throw ParameterError(who + field + " = " + format_real(v) + " outside [0,1]");
  };
  auto density = [&](double v, const char* field) {
    if (!(v >= 0.0)) throw ParameterError(who + field + " = " + format_real(v) + " must be >= 0");
  };
  fraction(row.c_factor, "c_factor");
  fraction(row.p_factor, "p_factor");
  fraction(row.trap_eff, "trap_eff");
  density(row.carbon_above, "carbon_above");
  density(row.carbon_below, "carbon_below");
  density(row.carbon_dead, "carbon_dead");
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (ch == '"') {
        quoted = false;
      } else {
        cur += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      fields.push_back(cur);
      cur.clear();
    } else if (ch != '\r') {
      cur += ch;
    }
  }
  fields.push_back(cur);
  return fields;
}

std::string csv_field(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char ch : field) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

ClassTable read_class_table(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("class table is empty");
  std::vector<std::string> header = split_csv_line(line);
  for (auto& h : header) h = trim(h);
  const std::vector<std::string> expected = split_csv_line(kClassTableHeader);
  if (header != expected) {
    throw ParseError(std::string("class table header must be exactly: ") + kClassTableHeader);
  }
  std::vector<ClassParameterRow> rows;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    auto f = split_csv_line(line);
    if (f.size() != expected.size()) {
      throw ParseError("class table line " + std::to_string(line_no) + ": expected " +
                       std::to_string(expected.size()) + " fields, got " + std::to_string(f.size()));
    }
    for (auto& v : f) v = trim(v);
    ClassParameterRow row;
    const double id = parse_field(f[0], "class_id", line_no);
    row.class_id = static_cast<int>(id);
    if (id != row.class_id) throw ParseError("class table line " + std::to_string(line_no) + ": class_id not integer");
    row.name = f[1];
    row.native = parse_bool(f[2], line_no);
    row.c_factor = parse_field(f[3], "c_factor", line_no);
    row.p_factor = parse_field(f[4], "p_factor", line_no);
    row.trap_eff = parse_field(f[5], "trap_eff", line_no);
    row.carbon_above = parse_field(f[6], "carbon_above", line_no);
    row.carbon_below = parse_field(f[7], "carbon_below", line_no);
    row.carbon_dead = parse_field(f[8], "carbon_dead", line_no);
    try {
      validate(row);
    } catch (const ParameterError& e) {
      throw ParameterError("class table line " + std::to_string(line_no) + ": " + e.what());
    }
    rows.push_back(std::move(row));
  }
  return ClassTable(std::move(rows));
}

ClassTable read_class_table_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open class table '" + path + "'");
  return read_class_table(in);
}

std::string write_class_table(const ClassTable& table) {
  std::ostringstream os;
  os << kClassTableHeader << '\n';
  for (const auto& r : table.rows()) {
    os << r.class_id << ',' << csv_field(r.name) << ',' << (r.native ? "true" : "false") << ','
       << format_real(r.c_factor) << ',' << format_real(r.p_factor) << ',' << format_real(r.trap_eff) << ','
       << format_real(r.carbon_above) << ',' << format_real(r.carbon_below) << ',' << format_real(r.carbon_dead)
       << '\n';
  }
  return os.str();
}

}  // namespace natcap
