#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace natcap {

/// One table cell. Numeric cells keep their unrounded value; rounding happens in the renderers.
struct Cell {
  enum class Kind { Text, Number, Currency };

  Kind kind = Kind::Text;
  std::string text;
  std::optional<double> value;
  int decimals = 0;

  static Cell label(std::string s) { return {Kind::Text, std::move(s), std::nullopt, 0}; }
  static Cell number(std::optional<double> v, int decimals = 0) { return {Kind::Number, {}, v, decimals}; }
  static Cell currency(std::optional<double> v) { return {Kind::Currency, {}, v, 0}; }
  static Cell blank() { return {Kind::Text, {}, std::nullopt, 0}; }
};

struct ReportTable {
  std::string title;
  std::vector<std::string> header;
  std::vector<std::vector<Cell>> rows;
};

inline constexpr const char* kNotAvailable = "n/a";

/// Fixed decimals, thousands separators; negatives in parentheses.
std::string format_number(double v, int decimals);
/// Whole dollars: "$110,456", negatives "($1,234)".
std::string format_currency(double v);
/// Half-away-from-zero rounding to `decimals` places.
double round_to(double v, int decimals);

/// Aligned plain-text table: first column left-aligned, the rest right-aligned.
std::string render_text(const ReportTable& table);
/// RFC 4180-style CSV; numbers without separators, currency as whole dollars.
std::string render_csv(const ReportTable& table);
/// {title, columns, rows}; numeric cells are unrounded, absent values null.
nlohmann::json to_json(const ReportTable& table);

/// Compact decimal for prose: up to four decimals, trailing zeros dropped.
std::string format_decimal(double v);

}  // namespace natcap
