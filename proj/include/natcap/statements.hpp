#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "natcap/report.hpp"
#include "natcap/valuation.hpp"

namespace natcap {

enum class Beneficiary { Business, Society };

/// Which value column each service lands in.
struct ServiceClassification {
  Beneficiary sediment_filtration = Beneficiary::Business;
  Beneficiary carbon = Beneficiary::Society;

  bool operator==(const ServiceClassification&) const = default;
};

struct StatementLine {
  std::string label;
  std::optional<double> measure;
  std::string unit;
  int measure_decimals = 0;
  std::optional<double> value_to_business;
  std::optional<double> value_to_society;

  /// Sum of the present value columns; nullopt when neither is present.
  std::optional<double> total() const;
};

struct StatementPeriod {
  std::string label;
  std::vector<StatementLine> lines;
  StatementLine total;
};

struct Statement {
  enum class Layout { Split, CarryingAmount };

  std::string id;
  std::string title;
  std::string section;
  Layout layout = Layout::Split;
  /// Current period first.
  std::vector<StatementPeriod> periods;
};

struct Note {
  std::string id;
  std::string title;
  std::vector<std::string> paragraphs;
  ReportTable table;
};

struct StatementSet {
  Statement env_pnl;
  Statement balance_sheet;
  std::vector<Note> notes;
};

enum class DisclosureAlternative { BalanceSheetItem, NotesOnly, Voluntary };

/// One output document, rendered in every supported format.
struct Document {
  std::string stem;
  std::string text;
  std::string csv;
  nlohmann::json json;
};

/// Environmental income/(loss): sediment filtration flow and carbon sequestration over the period.
Statement build_env_pnl(const MonetaryAccount& monetary, const PhysicalFlowAccounts& physical,
                        const ValuationParams& params, const ServiceClassification& classification = {});

/// Natural capital assets: discounted filtration value and carbon stock at fair value.
Statement build_balance_sheet(const MonetaryAccount& monetary, const ValuationParams& params,
                              const PhysicalFlowAccounts& physical, const ServiceClassification& classification = {});

/// Note 1 (sediment, per class) and Note 2 (carbon, per class) with methodology text.
std::vector<Note> build_notes(const PhysicalFlowAccounts& physical, const MonetaryAccount& monetary,
                              const ValuationParams& params);

StatementSet build_statement_set(const MonetaryAccount& monetary, const PhysicalFlowAccounts& physical,
                                 const ValuationParams& params, const ServiceClassification& classification = {});

/// Business-valued balance-sheet lines grouped under a "Natural capital" heading.
Statement natural_capital_line_item(const Statement& balance_sheet);

std::vector<Document> select_disclosure(DisclosureAlternative alternative, const StatementSet& set);

ReportTable to_table(const Statement& statement);
nlohmann::json to_json(const Statement& statement);
Document render(const Statement& statement);
Document render(const Note& note);

std::string to_string(DisclosureAlternative alternative);
DisclosureAlternative parse_disclosure_alternative(const std::string& text);
std::string to_string(Beneficiary beneficiary);
Beneficiary parse_beneficiary(const std::string& text);

}  // namespace natcap
