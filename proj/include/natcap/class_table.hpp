#pragma once

#include <istream>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace natcap {

/// Per land-cover class model parameters. Carbon densities are t C/ha.
struct ClassParameterRow {
  int class_id = 0;
  std::string name;
  bool native = false;
  double c_factor = 0.0;
  double p_factor = 1.0;
  double trap_eff = 0.0;
  double carbon_above = 0.0;
  double carbon_below = 0.0;
  double carbon_dead = 0.0;

  bool operator==(const ClassParameterRow&) const = default;
};

/// Ordered collection of class rows; order is the reporting order.
class ClassTable {
 public:
  ClassTable() = default;
  explicit ClassTable(std::vector<ClassParameterRow> rows);

  const std::vector<ClassParameterRow>& rows() const { return rows_; }
  bool empty() const { return rows_.empty(); }
  const ClassParameterRow* find(int class_id) const;
  const ClassParameterRow& at(int class_id) const;

  std::map<int, double> c_factors() const;
  std::map<int, double> p_factors() const;
  std::map<int, double> trap_efficiencies() const;
  std::map<int, std::string> names() const;

  /// Rows restricted to the given ids, keeping table order.
  ClassTable subset(const std::vector<int>& class_ids) const;

  bool operator==(const ClassTable&) const = default;

 private:
  std::vector<ClassParameterRow> rows_;
};

/// Throws ParameterError when a fraction is outside [0,1] or a density is negative.
void validate(const ClassParameterRow& row);

inline constexpr const char* kClassTableHeader =
    "class_id,name,native,c_factor,p_factor,trap_eff,carbon_above,carbon_below,carbon_dead";

ClassTable read_class_table(std::istream& in);
ClassTable read_class_table_file(const std::string& path);
std::string write_class_table(const ClassTable& table);

/// Splits one CSV record; handles double-quoted fields with "" escapes.
std::vector<std::string> split_csv_line(const std::string& line);
/// Quotes a field when it contains a comma, quote or newline.
std::string csv_field(const std::string& field);

}  // namespace natcap
