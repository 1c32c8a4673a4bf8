#include "natcap/statements.hpp"

#include <sstream>

#include "natcap/carbon.hpp"
#include "natcap/error.hpp"

namespace natcap {

namespace {

void check_inputs(const MonetaryAccount& monetary, const PhysicalFlowAccounts& physical) {
  if (!physical.sediment || !physical.carbon) throw ParameterError("statements need sediment and carbon accounts");
  const PeriodLabels& p = monetary.periods;
  if (p.baseline.empty() || p.scenario.empty()) throw ParameterError("statements: missing period label");
  if (!(physical.sediment->periods == p) || !(physical.carbon->periods == p)) {
    throw ParameterError("statements: physical and monetary accounts cover different periods");
  }
}

void assign(StatementLine& line, Beneficiary who, double value) {
  (who == Beneficiary::Business ? line.value_to_business : line.value_to_society) = value;
}

StatementLine sum_lines(const std::string& label, const std::vector<StatementLine>& lines) {
  StatementLine total;
  total.label = label;
  for (const auto& l : lines) {
    if (l.value_to_business) total.value_to_business = total.value_to_business.value_or(0.0) + *l.value_to_business;
    if (l.value_to_society) total.value_to_society = total.value_to_society.value_or(0.0) + *l.value_to_society;
  }
  return total;
}

nlohmann::json opt_json(const std::optional<double>& v) { return v ? nlohmann::json(*v) : nlohmann::json(nullptr); }

nlohmann::json line_json(const StatementLine& l) {
  return {{"label", l.label},
          {"measure", opt_json(l.measure)},
          {"unit", l.unit},
          {"value_to_business", opt_json(l.value_to_business)},
          {"value_to_society", opt_json(l.value_to_society)},
          {"total", opt_json(l.total())}};
}

std::string money(double v) { return format_currency(v); }

}  // namespace

std::optional<double> StatementLine::total() const {
  if (!value_to_business && !value_to_society) return std::nullopt;
  return value_to_business.value_or(0.0) + value_to_society.value_or(0.0);
}

Statement build_env_pnl(const MonetaryAccount& monetary, const PhysicalFlowAccounts& physical,
                        const ValuationParams& params, const ServiceClassification& classification) {
  check_inputs(monetary, physical);
  const auto& sed = physical.sediment->totals;
  const auto& carb = physical.carbon->totals;
  const auto& m = monetary.totals;

  Statement st;
  st.id = "env_pnl";
  st.title = "Environmental profit and loss statement";
  st.section = "Environmental income/(loss)";

  auto period = [&](const std::string& label, double sed_t, double sed_value, bool has_flow_carbon) {
    StatementPeriod p;
    p.label = label;
    StatementLine sediment;
    sediment.label = "Sediment filtration (tonnes) (Note 1)";
    sediment.unit = "t";
    sediment.measure = sed_t;
    assign(sediment, classification.sediment_filtration, sed_value);

    StatementLine sequestered;
    sequestered.label = "Carbon sequestration (t CO2-e) (Note 2)";
    sequestered.unit = "t CO2-e";
    if (has_flow_carbon) {
      sequestered.measure = co2_equivalent(carb.change_qty, params.c_to_co2);
      assign(sequestered, classification.carbon, m.carbon_change);
    }
    p.lines = {sediment, sequestered};
    p.total = sum_lines("Total environmental income/(loss)", p.lines);
    return p;
  };
  // Sequestration is a flow across the period, so only the closing period carries it.
  st.periods.push_back(period(monetary.periods.scenario, sed.scenario_qty, m.sediment_scenario, true));
  st.periods.push_back(period(monetary.periods.baseline, sed.baseline_qty, m.sediment_baseline, false));
  return st;
}

Statement build_balance_sheet(const MonetaryAccount& monetary, const ValuationParams& params,
                              const PhysicalFlowAccounts& physical, const ServiceClassification& classification) {
  check_inputs(monetary, physical);
  validate(params);
  const auto& sed = physical.sediment->totals;
  const auto& carb = physical.carbon->totals;
  const auto& m = monetary.totals;

  Statement st;
  st.id = "balance_sheet";
  st.title = "Natural capital balance sheet";
  st.section = "Natural capital assets";

  auto period = [&](const std::string& label, double sed_t, double annual_value, double carbon_t, double carbon_value) {
    StatementPeriod p;
    p.label = label;
    StatementLine filtration;
    filtration.label = "Sediment filtration (tonnes), Note 1";
    filtration.unit = "t/yr";
    filtration.measure_decimals = 1;
    filtration.measure = sed_t;
    assign(filtration, classification.sediment_filtration, npv_asset_value(annual_value, params));

    StatementLine storage;
    storage.label = "Carbon storage (t CO2-e), Note 2";
    storage.unit = "t CO2-e";
    storage.measure = co2_equivalent(carbon_t, params.c_to_co2);
    assign(storage, classification.carbon, carbon_value);

    p.lines = {filtration, storage};
    p.total = sum_lines("Total natural capital assets", p.lines);
    return p;
  };
  st.periods.push_back(
      period(monetary.periods.scenario, sed.scenario_qty, m.sediment_scenario, carb.scenario_qty, m.carbon_scenario));
  st.periods.push_back(
      period(monetary.periods.baseline, sed.baseline_qty, m.sediment_baseline, carb.baseline_qty, m.carbon_baseline));
  return st;
}

std::vector<Note> build_notes(const PhysicalFlowAccounts& physical, const MonetaryAccount& monetary,
                              const ValuationParams& params) {
  check_inputs(monetary, physical);
  const auto& sed = *physical.sediment;
  const auto& carb = *physical.carbon;
  const std::string& b = monetary.periods.baseline;
  const std::string& s = monetary.periods.scenario;
  const std::string timing = params.annuity_timing == AnnuityTiming::Due ? "annuity due" : "ordinary annuity";

  Note note1;
  note1.id = "note1";
  note1.title = "Note 1: Sediment filtration";
  note1.paragraphs = {
      "Quantity: tonnes per year retained by each asset class. Soil loss per cell is A = R K LS C P, routed "
      "along D8 flow directions; each cell retains the trap efficiency fraction of its class from the sediment entering it.",
      "Income: tonnes retained at " + money(params.sediment_unit_cost) + " per tonne of sediment removal avoided.",
      "Asset: value in use, the annual income discounted at " +
          format_decimal(params.discount_rate * 100.0) + "% over " + std::to_string(params.horizon_years) +
          " years (" + timing + ")."};
  note1.table.title = "Sediment filtered by asset type";
  note1.table.header = {"Asset", s + " tonnes of sediment", s + " AU$", b + " tonnes of sediment", b + " AU$"};
  for (std::size_t i = 0; i < sed.rows.size(); ++i) {
    const auto& r = sed.rows[i];
    const auto& mr = monetary.rows.at(i);
    note1.table.rows.push_back({Cell::label(r.name), Cell::number(r.scenario_qty), Cell::currency(mr.sediment_scenario),
                                Cell::number(r.baseline_qty), Cell::currency(mr.sediment_baseline)});
  }
  note1.table.rows.push_back({Cell::label("Total"), Cell::number(sed.totals.scenario_qty),
                              Cell::currency(monetary.totals.sediment_scenario), Cell::number(sed.totals.baseline_qty),
                              Cell::currency(monetary.totals.sediment_baseline)});

  Note note2;
  note2.id = "note2";
  note2.title = "Note 2: Carbon storage";
  std::string scc_text;
  if (!params.scc_prices.empty()) {
    std::ostringstream os;
    os << "Social cost of carbon: at ";
    for (std::size_t i = 0; i < params.scc_prices.size(); ++i) {
      if (i) os << (i + 1 == params.scc_prices.size() ? " and " : ", ");
      os << money(params.scc_prices[i]);
    }
    os << " per t CO2-e the " << b << " stock is ";
    for (std::size_t i = 0; i < params.scc_prices.size(); ++i) {
      if (i) os << (i + 1 == params.scc_prices.size() ? " and " : ", ");
      os << money(carbon_stock_value(carb.totals.baseline_qty, params, PriceMode::SccIndex, i));
    }
    os << ".";
    scc_text = os.str();
  }
  note2.paragraphs = {
      "Quantity: class area times the summed above-ground, below-ground and dead biomass carbon densities. "
      "Sequestration is closing stock less opening stock.",
      "Asset: fair value at " + money(params.carbon_price) + " per t CO2-e, with " +
          format_decimal(params.c_to_co2) + " t CO2-e per t C.",
      scc_text};
  if (note2.paragraphs.back().empty()) note2.paragraphs.pop_back();
  note2.table.title = "Biomass carbon by asset type";
  note2.table.header = {"Asset", s + " t C", s + " t CO2-e", s + " AU$", b + " t C", b + " t CO2-e", b + " AU$"};
  auto carbon_cells = [&](const std::string& name, double scen_t, double scen_v, double base_t, double base_v) {
    return std::vector<Cell>{Cell::label(name),
                             Cell::number(scen_t),
                             Cell::number(co2_equivalent(scen_t, params.c_to_co2)),
                             Cell::currency(scen_v),
                             Cell::number(base_t),
                             Cell::number(co2_equivalent(base_t, params.c_to_co2)),
                             Cell::currency(base_v)};
  };
  for (std::size_t i = 0; i < carb.rows.size(); ++i) {
    const auto& r = carb.rows[i];
    const auto& mr = monetary.rows.at(i);
    note2.table.rows.push_back(
        carbon_cells(r.name, r.scenario_qty, mr.carbon_scenario, r.baseline_qty, mr.carbon_baseline));
  }
  note2.table.rows.push_back(carbon_cells("Total", carb.totals.scenario_qty, monetary.totals.carbon_scenario,
                                          carb.totals.baseline_qty, monetary.totals.carbon_baseline));
  return {note1, note2};
}

StatementSet build_statement_set(const MonetaryAccount& monetary, const PhysicalFlowAccounts& physical,
                                 const ValuationParams& params, const ServiceClassification& classification) {
  return {build_env_pnl(monetary, physical, params, classification),
          build_balance_sheet(monetary, params, physical, classification), build_notes(physical, monetary, params)};
}

Statement natural_capital_line_item(const Statement& balance_sheet) {
  Statement st;
  st.id = "balance_sheet";
  st.title = "Statement of financial position (extract): non-current assets";
  st.section = "Natural capital";
  st.layout = Statement::Layout::CarryingAmount;
  for (const auto& period : balance_sheet.periods) {
    StatementPeriod p;
    p.label = period.label;
    for (const auto& line : period.lines) {
      if (!line.value_to_business) continue;
      StatementLine kept = line;
      kept.value_to_society.reset();
      p.lines.push_back(kept);
    }
    p.total = sum_lines("Total natural capital", p.lines);
    st.periods.push_back(std::move(p));
  }
  return st;
}

std::vector<Document> select_disclosure(DisclosureAlternative alternative, const StatementSet& set) {
  std::vector<Document> docs;
  switch (alternative) {
    case DisclosureAlternative::Voluntary:
      docs.push_back(render(set.env_pnl));
      docs.push_back(render(set.balance_sheet));
      break;
    case DisclosureAlternative::BalanceSheetItem:
      docs.push_back(render(natural_capital_line_item(set.balance_sheet)));
      break;
    case DisclosureAlternative::NotesOnly:
      break;
  }
  for (const auto& note : set.notes) docs.push_back(render(note));
  return docs;
}

ReportTable to_table(const Statement& st) {
  ReportTable t;
  t.title = st.title;
  t.header = {""};
  for (const auto& p : st.periods) {
    t.header.push_back(p.label + " Measure");
    if (st.layout == Statement::Layout::Split) {
      t.header.push_back(p.label + " Value to business");
      t.header.push_back(p.label + " Value to society");
      t.header.push_back(p.label + " Total");
    } else {
      t.header.push_back(p.label + " Carrying amount");
    }
  }
  const std::size_t width = t.header.size();

  std::vector<Cell> heading(width, Cell::blank());
  heading[0] = Cell::label(st.section);
  t.rows.push_back(heading);

  const std::size_t nlines = st.periods.empty() ? 0 : st.periods.front().lines.size();
  auto emit = [&](auto pick, bool is_total) {
    std::vector<Cell> row{Cell::label(pick(st.periods.front()).label)};
    for (const auto& p : st.periods) {
      const StatementLine& l = pick(p);
      row.push_back(is_total ? Cell::blank() : Cell::number(l.measure, l.measure_decimals));
      if (st.layout == Statement::Layout::Split) {
        row.push_back(Cell::currency(l.value_to_business));
        row.push_back(Cell::currency(l.value_to_society));
      }
      row.push_back(Cell::currency(l.total()));
    }
    t.rows.push_back(std::move(row));
  };
  for (std::size_t i = 0; i < nlines; ++i) {
    emit([i](const StatementPeriod& p) -> const StatementLine& { return p.lines[i]; }, false);
  }
  if (!st.periods.empty()) emit([](const StatementPeriod& p) -> const StatementLine& { return p.total; }, true);
  return t;
}

nlohmann::json to_json(const Statement& st) {
  nlohmann::json periods = nlohmann::json::array();
  for (const auto& p : st.periods) {
    nlohmann::json lines = nlohmann::json::array();
    for (const auto& l : p.lines) lines.push_back(line_json(l));
    periods.push_back({{"label", p.label}, {"lines", lines}, {"total", line_json(p.total)}});
  }
  return {{"statement", st.id},
          {"title", st.title},
          {"section", st.section},
          {"layout", st.layout == Statement::Layout::Split ? "split" : "carrying_amount"},
          {"currency", "AUD"},
          {"periods", periods}};
}

Document render(const Statement& st) {
  const ReportTable table = to_table(st);
  return {st.id, render_text(table), render_csv(table), to_json(st)};
}

Document render(const Note& note) {
  std::ostringstream os;
  os << note.title << "\n\n";
  for (const auto& para : note.paragraphs) os << para << "\n\n";
  os << render_text(note.table);
  nlohmann::json j = {{"note", note.id}, {"title", note.title}, {"paragraphs", note.paragraphs},
                      {"table", to_json(note.table)}};
  return {note.id, os.str(), render_csv(note.table), std::move(j)};
}

std::string to_string(DisclosureAlternative a) {
  switch (a) {
    case DisclosureAlternative::BalanceSheetItem:
      return "balance_sheet_item";
    case DisclosureAlternative::NotesOnly:
      return "notes_only";
    case DisclosureAlternative::Voluntary:
      return "voluntary";
  }
  return "voluntary";
}

DisclosureAlternative parse_disclosure_alternative(const std::string& text) {
  if (text == "balance_sheet_item") return DisclosureAlternative::BalanceSheetItem;
  if (text == "notes_only") return DisclosureAlternative::NotesOnly;
  if (text == "voluntary") return DisclosureAlternative::Voluntary;
  throw ParameterError("unknown disclosure alternative '" + text +
                       "' (expected balance_sheet_item, notes_only or voluntary)");
}

std::string to_string(Beneficiary b) { return b == Beneficiary::Business ? "business" : "society"; }

Beneficiary parse_beneficiary(const std::string& text) {
  if (text == "business") return Beneficiary::Business;
  if (text == "society") return Beneficiary::Society;
  throw ParameterError("beneficiary must be 'business' or 'society', got '" + text + "'");
}

}  // namespace natcap
