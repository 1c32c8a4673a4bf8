#include "natcap/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "natcap/class_table.hpp"

namespace natcap {

namespace {

std::string fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

std::string group_thousands(const std::string& digits) {
  const auto dot = digits.find('.');
  std::string whole = digits.substr(0, dot);
  const std::string frac = dot == std::string::npos ? "" : digits.substr(dot);
  std::string out;
  const int n = static_cast<int>(whole.size());
  for (int i = 0; i < n; ++i) {
    if (i > 0 && (n - i) % 3 == 0) out += ',';
    out += whole[static_cast<std::size_t>(i)];
  }
  return out + frac;
}

std::string display(const Cell& c) {
  if (c.kind == Cell::Kind::Text) return c.text;
  if (!c.value) return kNotAvailable;
  return c.kind == Cell::Kind::Currency ? format_currency(*c.value) : format_number(*c.value, c.decimals);
}

std::string plain(const Cell& c) {
  if (c.kind == Cell::Kind::Text) return c.text;
  if (!c.value) return kNotAvailable;
  const int decimals = c.kind == Cell::Kind::Currency ? 0 : c.decimals;
  const double r = round_to(*c.value, decimals);
  return fixed(r == 0.0 ? 0.0 : r, decimals);
}

}  // namespace

double round_to(double v, int decimals) {
  const double scale = std::pow(10.0, decimals);
  return std::round(v * scale) / scale;
}

std::string format_number(double v, int decimals) {
  double r = round_to(v, decimals);
  if (r == 0.0) r = 0.0;  // drop negative zero
  const std::string body = group_thousands(fixed(std::abs(r), decimals));
  return r < 0.0 ? "(" + body + ")" : body;
}

std::string format_currency(double v) {
  double r = std::round(v);
  if (r == 0.0) r = 0.0;
  const std::string body = "$" + group_thousands(fixed(std::abs(r), 0));
  return r < 0.0 ? "(" + body + ")" : body;
}

std::string render_text(const ReportTable& table) {
  std::vector<std::vector<std::string>> cells;
  cells.push_back(table.header);
  for (const auto& row : table.rows) {
    std::vector<std::string> line;
    for (const auto& c : row) line.push_back(display(c));
    cells.push_back(std::move(line));
  }
  std::size_t ncols = 0;
  for (const auto& line : cells) ncols = std::max(ncols, line.size());
  std::vector<std::size_t> width(ncols, 0);
  for (const auto& line : cells) {
    for (std::size_t i = 0; i < line.size(); ++i) width[i] = std::max(width[i], line[i].size());
  }

  std::ostringstream os;
  if (!table.title.empty()) os << table.title << "\n\n";
  for (std::size_t r = 0; r < cells.size(); ++r) {
    std::string out;
    for (std::size_t i = 0; i < ncols; ++i) {
      const std::string s = i < cells[r].size() ? cells[r][i] : "";
      const std::string pad(width[i] - s.size(), ' ');
      if (i) out += "  ";
      out += i == 0 ? s + pad : pad + s;
    }
    out.erase(out.find_last_not_of(' ') + 1);
    os << out << '\n';
    if (r == 0) {
      std::size_t total = 0;
      for (std::size_t i = 0; i < ncols; ++i) total += width[i] + (i ? 2 : 0);
      os << std::string(total, '-') << '\n';
    }
  }
  return os.str();
}

std::string render_csv(const ReportTable& table) {
  std::ostringstream os;
  auto emit = [&](const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) os << (i ? "," : "") << csv_field(fields[i]);
    os << '\n';
  };
  emit(table.header);
  for (const auto& row : table.rows) {
    std::vector<std::string> fields;
    for (const auto& c : row) fields.push_back(plain(c));
    emit(fields);
  }
  return os.str();
}

nlohmann::json to_json(const ReportTable& table) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : table.rows) {
    nlohmann::json cells = nlohmann::json::array();
    for (const auto& c : row) {
      if (c.kind == Cell::Kind::Text) {
        cells.push_back(c.text);
      } else if (c.value) {
        cells.push_back(*c.value);
      } else {
        cells.push_back(nullptr);
      }
    }
    rows.push_back(std::move(cells));
  }
  return {{"title", table.title}, {"columns", table.header}, {"rows", rows}};
}

std::string format_decimal(double v) {
  std::string s = fixed(round_to(v, 4), 4);
  s.erase(s.find_last_not_of('0') + 1);
  if (s.back() == '.') s.pop_back();
  return s == "-0" ? "0" : s;
}

}  // namespace natcap
