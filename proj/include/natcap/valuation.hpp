#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "natcap/accounts.hpp"

namespace natcap {

/// Ordinary annuities pay at period end, annuities due at period start.
enum class AnnuityTiming { Ordinary, Due };
enum class PriceMode { Market, SccIndex };

/// Prices are AU$; carbon prices per t CO2-e.
struct ValuationParams {
  double sediment_unit_cost = 250.0;
  double discount_rate = 0.07;
  int horizon_years = 100;
  AnnuityTiming annuity_timing = AnnuityTiming::Due;
  double carbon_price = 37.0;
  std::vector<double> scc_prices = {73.0, 274.0};
  double c_to_co2 = 3.67;

  bool operator==(const ValuationParams&) const = default;
};

void validate(const ValuationParams& params);

/// Avoided-cost value of an annual tonnage (AU$/yr).
double flow_value(double tonnes, double unit_cost);

/// Present value of 1 per year for `years` years at `rate`.
double annuity_factor(double rate, int years, AnnuityTiming timing);

double npv_asset_value(double annual_flow, const ValuationParams& params);

/// Stock value t C x c_to_co2 x price, using the market price or one of the SCC prices.
double carbon_stock_value(double tonnes_carbon, const ValuationParams& params, PriceMode mode = PriceMode::Market,
                          std::size_t scc_index = 0);

struct MonetaryRow {
  int class_id = 0;
  std::string name;
  double sediment_baseline = 0.0;
  double sediment_scenario = 0.0;
  double sediment_change = 0.0;
  double carbon_baseline = 0.0;
  double carbon_scenario = 0.0;
  double carbon_change = 0.0;
};

/// Sediment columns are annual flow values; carbon columns are stock values.
struct MonetaryAccount {
  PeriodLabels periods;
  std::vector<MonetaryRow> rows;
  MonetaryRow totals;
};

struct PhysicalFlowAccounts {
  std::optional<PhysicalFlowAccount> sediment;
  std::optional<PhysicalFlowAccount> carbon;
};

MonetaryAccount build_monetary_account(const PhysicalFlowAccounts& physical, const ValuationParams& params);

ReportTable to_table(const MonetaryAccount& account);
nlohmann::json to_json(const MonetaryAccount& account);

std::string to_string(AnnuityTiming timing);
AnnuityTiming parse_annuity_timing(const std::string& text);

}  // namespace natcap
