#include "natcap/valuation.hpp"

#include <cmath>

#include "natcap/error.hpp"

namespace natcap {

void validate(const ValuationParams& p) {
  if (!(p.discount_rate > 0.0)) throw ParameterError("discount_rate must be > 0");
  if (p.horizon_years < 1) throw ParameterError("horizon_years must be >= 1");
  if (!(p.sediment_unit_cost >= 0.0)) throw ParameterError("sediment_unit_cost must be >= 0");
  if (!(p.carbon_price >= 0.0)) throw ParameterError("carbon_price must be >= 0");
  for (double s : p.scc_prices) {
    if (!(s >= 0.0)) throw ParameterError("scc_prices must be >= 0");
  }
  if (!(p.c_to_co2 > 0.0)) throw ParameterError("c_to_co2 must be > 0");
}

double flow_value(double tonnes, double unit_cost) {
  if (tonnes < 0.0) throw ParameterError("flow_value: negative tonnage " + format_real(tonnes));
  return tonnes * unit_cost;
}

double annuity_factor(double rate, int years, AnnuityTiming timing) {
  if (!(rate > 0.0)) throw ParameterError("annuity_factor: rate must be > 0 (perpetuities are not supported)");
  if (years < 1) throw ParameterError("annuity_factor: horizon must be >= 1 year");
  // 1 - (1+r)^-T without cancellation for small r.
  const double ordinary = -std::expm1(-years * std::log1p(rate)) / rate;
  return timing == AnnuityTiming::Due ? ordinary * (1.0 + rate) : ordinary;
}

double npv_asset_value(double annual_flow, const ValuationParams& params) {
  if (annual_flow < 0.0) throw ParameterError("npv_asset_value: negative annual flow");
  return annual_flow * annuity_factor(params.discount_rate, params.horizon_years, params.annuity_timing);
}

double carbon_stock_value(double tonnes_carbon, const ValuationParams& params, PriceMode mode, std::size_t scc_index) {
  if (tonnes_carbon < 0.0) throw ParameterError("carbon_stock_value: negative carbon stock");
  double price = params.carbon_price;
  if (mode == PriceMode::SccIndex) {
    if (scc_index >= params.scc_prices.size()) {
      throw ParameterError("scc index " + std::to_string(scc_index) + " out of range (" +
                           std::to_string(params.scc_prices.size()) + " SCC prices)");
    }
    price = params.scc_prices[scc_index];
  }
  return tonnes_carbon * params.c_to_co2 * price;
}

MonetaryAccount build_monetary_account(const PhysicalFlowAccounts& physical, const ValuationParams& params) {
  if (!physical.sediment) throw ParameterError("monetary account: sediment physical account missing");
  if (!physical.carbon) throw ParameterError("monetary account: carbon physical account missing");
  validate(params);
  const auto& sed = *physical.sediment;
  const auto& carb = *physical.carbon;
  if (sed.rows.size() != carb.rows.size()) throw ParameterError("monetary account: service class lists differ");

  MonetaryAccount account;
  account.periods = sed.periods;
  account.totals.name = "Total";
  for (std::size_t i = 0; i < sed.rows.size(); ++i) {
    const auto& s = sed.rows[i];
    const auto& c = carb.rows[i];
    if (s.class_id != c.class_id) throw ParameterError("monetary account: service class lists differ");
    MonetaryRow row;
    row.class_id = s.class_id;
    row.name = s.name;
    row.sediment_baseline = flow_value(s.baseline_qty, params.sediment_unit_cost);
    row.sediment_scenario = flow_value(s.scenario_qty, params.sediment_unit_cost);
    row.sediment_change = row.sediment_scenario - row.sediment_baseline;
    row.carbon_baseline = carbon_stock_value(c.baseline_qty, params);
    row.carbon_scenario = carbon_stock_value(c.scenario_qty, params);
    row.carbon_change = row.carbon_scenario - row.carbon_baseline;

    auto& t = account.totals;
    t.sediment_baseline += row.sediment_baseline;
    t.sediment_scenario += row.sediment_scenario;
    t.sediment_change += row.sediment_change;
    t.carbon_baseline += row.carbon_baseline;
    t.carbon_scenario += row.carbon_scenario;
    t.carbon_change += row.carbon_change;
    account.rows.push_back(std::move(row));
  }
  return account;
}

ReportTable to_table(const MonetaryAccount& a) {
  ReportTable t;
  t.title = "Monetary natural capital account (AU$)";
  const std::string& b = a.periods.baseline;
  const std::string& s = a.periods.scenario;
  t.header = {"Asset", "Sediment filtration " + b, "Sediment filtration " + s, "Sediment filtration change",
              "Carbon storage " + b, "Carbon storage " + s, "Carbon storage change"};
  auto row_cells = [](const MonetaryRow& r) {
    return std::vector<Cell>{Cell::label(r.name),
                             Cell::currency(r.sediment_baseline),
                             Cell::currency(r.sediment_scenario),
                             Cell::currency(r.sediment_change),
                             Cell::currency(r.carbon_baseline),
                             Cell::currency(r.carbon_scenario),
                             Cell::currency(r.carbon_change)};
  };
  for (const auto& r : a.rows) t.rows.push_back(row_cells(r));
  t.rows.push_back(row_cells(a.totals));
  return t;
}

nlohmann::json to_json(const MonetaryAccount& a) {
  auto row_json = [](const MonetaryRow& r) {
    return nlohmann::json{{"class_id", r.class_id},
                          {"name", r.name},
                          {"sediment_filtration", {{"baseline", r.sediment_baseline},
                                                   {"scenario", r.sediment_scenario},
                                                   {"change", r.sediment_change}}},
                          {"carbon_storage", {{"baseline", r.carbon_baseline},
                                              {"scenario", r.carbon_scenario},
                                              {"change", r.carbon_change}}}};
  };
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : a.rows) rows.push_back(row_json(r));
  return {{"account", "monetary"},
          {"currency", "AUD"},
          {"periods", {{"baseline", a.periods.baseline}, {"scenario", a.periods.scenario}}},
          {"rows", rows},
          {"totals", row_json(a.totals)}};
}

std::string to_string(AnnuityTiming timing) { return timing == AnnuityTiming::Due ? "due" : "ordinary"; }

AnnuityTiming parse_annuity_timing(const std::string& text) {
  if (text == "due") return AnnuityTiming::Due;
  if (text == "ordinary") return AnnuityTiming::Ordinary;
  throw ParameterError("annuity_timing must be 'ordinary' or 'due', got '" + text + "'");
}

}  // namespace natcap
