#include <doctest.h>

#include <cmath>

#include "natcap/carbon.hpp"
#include "natcap/error.hpp"
#include "../targets.hpp"

using namespace natcap;

namespace {

LandCoverGrid blocks(const std::vector<int>& ids, const std::vector<int>& cells) {
  std::vector<double> v;
  for (std::size_t k = 0; k < ids.size(); ++k) v.insert(v.end(), static_cast<std::size_t>(cells[k]), ids[k]);
  const int n = static_cast<int>(v.size());
  return LandCoverGrid(Grid(GridGeometry{n, 1, 0, 0, 100.0}, -9999.0, std::move(v)));
}

std::map<int, CarbonPools> density_pools(const std::array<double, 9>& totals) {
  std::map<int, CarbonPools> pools;
  for (int k = 0; k < 9; ++k) {
    const double d = totals[k] / target::kAreaHa[k];
    pools[k + 1] = {0.5 * d, 0.3 * d, d - 0.5 * d - 0.3 * d};
  }
  return pools;
}

LandCoverGrid case_landcover() {
  std::vector<int> ids, cells;
  for (int k = 0; k < 9; ++k) {
    ids.push_back(k + 1);
    cells.push_back(static_cast<int>(target::kAreaHa[k]));
  }
  return blocks(ids, cells);
}

}  // namespace

TEST_SUITE("carbon") {
  TEST_CASE("class total is density times area") {
    const auto lc = blocks({6}, {68});
    const auto r = carbon_storage(lc, {{6, {100.0, 30.0, 13.0}}});
    CHECK(r.per_class.at(6).total_t == 143.0 * 68.0);
    CHECK(r.per_class.at(6).density_t_per_ha == 143.0);
    CHECK(r.per_class.at(6).area_ha == 68.0);
  }

  TEST_CASE("grass row reproduces its target stock") {
    const double density = target::kCarbon2013[5] / 68.0;
    const auto r = carbon_storage(blocks({6}, {68}), {{6, {density, 0.0, 0.0}}});
    CHECK(std::round(density) == 143.0);
    CHECK(std::round(r.per_class.at(6).total_t) == 9744.0);
  }

  TEST_CASE("class with no cells has zero stock") {
    const auto r = carbon_storage(blocks({1}, {3}), {{1, {1, 1, 1}}, {2, {50, 50, 50}}});
    CHECK(r.per_class.at(2).total_t == 0.0);
    CHECK(r.per_class.at(2).area_ha == 0.0);
    CHECK(r.portfolio_total == doctest::Approx(9.0));
  }

  TEST_CASE("portfolio at target densities") {
    const auto lc = case_landcover();
    const auto t0 = carbon_storage(lc, density_pools(target::kCarbon2013));
    const auto t1 = carbon_storage(lc, density_pools(target::kCarbon2023));
    CHECK(std::round(t0.portfolio_total) == 48795.0);
    CHECK(std::round(t0.portfolio_total / 369.0) == 132.0);
    CHECK(std::round(t1.portfolio_total) == 78956.0);
    for (int k = 0; k < 9; ++k) {
      CHECK(std::round(t0.per_class.at(k + 1).total_t) == target::kCarbon2013Printed[k]);
      CHECK(std::round(t1.per_class.at(k + 1).total_t) == target::kCarbon2023Printed[k]);
    }

    const auto seq = sequestration(t0, t1);
    double total = 0.0;
    for (const auto& [cls, v] : seq) total += v;
    CHECK(std::round(total) == 30161.0);
    CHECK(std::round(seq.at(2)) == 9199.0);
  }

  TEST_CASE("unchanged stock sequesters nothing") {
    const auto lc = blocks({1, 2}, {3, 4});
    const auto t0 = carbon_storage(lc, {{1, {10, 2, 1}}, {2, {5, 5, 5}}});
    for (const auto& [cls, v] : sequestration(t0, t0)) CHECK(v == 0.0);
  }

  TEST_CASE("density loss is negative sequestration") {
    const auto lc = blocks({1}, {5});
    const auto t0 = carbon_storage(lc, {{1, {10, 2, 1}}});
    const auto t1 = carbon_storage(lc, {{1, {8, 2, 1}}});
    CHECK(sequestration(t0, t1).at(1) == doctest::Approx(-10.0));
  }

  TEST_CASE("sequestration needs matching classes") {
    const auto lc = blocks({1, 2}, {1, 1});
    const auto a = carbon_storage(lc, {{1, {1, 0, 0}}, {2, {1, 0, 0}}});
    const auto b = carbon_storage(lc, {{1, {1, 0, 0}}, {2, {1, 0, 0}}, {3, {1, 0, 0}}});
    CHECK_THROWS_AS(sequestration(a, b), ParameterError);
  }

  TEST_CASE("CO2 equivalent") {
    CHECK(co2_equivalent(0.0) == 0.0);
    CHECK(co2_equivalent(1.0) == doctest::Approx(3.67));
    CHECK(co2_equivalent(48795.0) == doctest::Approx(179079.0).epsilon(5e-4));
    CHECK(std::round(co2_equivalent(48795.0)) == 179078.0);
    CHECK(co2_equivalent(2.0, 3.0) == 6.0);
  }

  TEST_CASE("pool errors") {
    const auto lc = blocks({1, 2}, {1, 1});
    CHECK_THROWS_AS(carbon_storage(lc, {{1, {1, 0, 0}}}), ParameterError);
    CHECK_THROWS_AS(carbon_storage(lc, {{1, {1, 0, 0}}, {2, {-1, 0, 0}}}), ParameterError);
  }

  TEST_CASE("pools come from the class table") {
    const ClassTable t({{4, "Swamp Oak", true, 0.1, 1, 0.2, 28.6, 17.2, 11.5}});
    const auto p = carbon_pools(t);
    CHECK(p.at(4).density() == doctest::Approx(57.3));
  }
}
