#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "optiplan/power_math.hpp"

#include "oracles.hpp"

using namespace optiplan;

TEST_CASE("dbm/mw conversions") {
  CHECK(dbm_to_mw(PowerDbm{0.0}).value == doctest::Approx(1.0));
  CHECK(dbm_to_mw(PowerDbm{-6.7}).value == doctest::Approx(0.2137962).epsilon(1e-6));
  CHECK(dbm_to_mw(PowerDbm{1.76}).value == doctest::Approx(1.5).epsilon(1e-3));

  CHECK(mw_to_dbm(PowerMw{1.0}).value == doctest::Approx(0.0));
  CHECK(mw_to_dbm(PowerMw{0.2138}).value == doctest::Approx(-6.7).epsilon(1e-4));
  CHECK_THROWS_AS(mw_to_dbm(PowerMw{0.0}), std::domain_error);
  CHECK_THROWS_AS(mw_to_dbm(PowerMw{-1.0}), std::domain_error);
  CHECK_THROWS_AS(dbm_to_mw(PowerDbm{std::nan("")}), std::domain_error);
}

TEST_CASE("dbm/mw round trip over [-60, 20]") {
  for (double p = -60.0; p <= 20.0; p += 0.37) {
    CHECK(std::abs(mw_to_dbm(dbm_to_mw(PowerDbm{p})).value - p) < 1e-9);
  }
}

TEST_CASE("oma from modulation") {
  // ER -> infinity drives the low level to zero, OMA -> 2*Pavg.
  CHECK(oma_from_modulation({PowerMw{0.5}, 300.0}).value == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(oma_from_modulation({PowerMw{0.5}, 6.0}).value ==
        doctest::Approx(0.5984800).epsilon(1e-6));
  CHECK(oma_from_modulation({PowerMw{1.5}, 16.2}).value ==
        doctest::Approx(2.8594418).epsilon(1e-6));
  CHECK_THROWS_AS(oma_from_modulation({PowerMw{0.5}, 0.0}), std::domain_error);
  CHECK_THROWS_AS(oma_from_modulation({PowerMw{0.5}, -3.0}), std::domain_error);
}

TEST_CASE("signal levels") {
  const auto [high, low] = levels_from_modulation({PowerMw{1.0}, 3.0103});
  CHECK(high.value == doctest::Approx(1.3333333).epsilon(1e-6));
  CHECK(low.value == doctest::Approx(0.6666667).epsilon(1e-6));

  const auto inf_er = levels_from_modulation({PowerMw{0.5}, 300.0});
  CHECK(inf_er.high.value == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(inf_er.low.value == doctest::Approx(0.0).epsilon(1e-9));

  const auto dwdm = levels_from_modulation({PowerMw{1.5}, 16.2});
  CHECK(dwdm.high.value == doctest::Approx(2.9297209).epsilon(1e-6));
  CHECK(dwdm.low.value == doctest::Approx(0.0702791).epsilon(1e-5));
}

TEST_CASE("oma identities over the ER range") {
  for (double er = 0.5; er <= 60.0; er += 0.7) {
    const ModulationSpec m{PowerMw{1.7}, er};
    const auto [high, low] = levels_from_modulation(m);
    const double oma = oma_from_modulation(m).value;
    CHECK(std::abs((high.value - low.value) - oma) < 1e-9 * oma);
    CHECK(std::abs((high.value + low.value) / 2.0 - m.average_power.value) <
          1e-9 * m.average_power.value);
    CHECK(high.value / low.value == doctest::Approx(std::pow(10.0, er / 10.0)).epsilon(1e-9));
    CHECK(oma > 0.0);
    CHECK(oma < 2.0 * m.average_power.value);
  }
}

TEST_CASE("ber from q") {
  CHECK(ber_from_q(QFactor{0.0}) == doctest::Approx(0.5));
  CHECK(ber_from_q(QFactor{7.0345}) == doctest::Approx(1e-12).epsilon(0.02));
  CHECK(ber_from_q(QFactor{3.517}) == doctest::Approx(2.182e-4).epsilon(0.005));
  CHECK_THROWS_AS(ber_from_q(QFactor{-0.1}), std::domain_error);
}

TEST_CASE("q from ber") {
  CHECK(q_from_ber(0.5).value == doctest::Approx(0.0).epsilon(1e-6));
  CHECK(q_from_ber(1e-12).value == doctest::Approx(7.0345).epsilon(1.5e-4));
  CHECK(q_from_ber(1e-9).value == doctest::Approx(5.998).epsilon(1.7e-4));
  CHECK_THROWS_AS(q_from_ber(0.0), std::domain_error);
  CHECK_THROWS_AS(q_from_ber(-1e-3), std::domain_error);
  CHECK_THROWS_AS(q_from_ber(0.6), std::domain_error);
}

TEST_CASE("ber/q monotonicity and inverse pair") {
  double prev = 1.0;
  for (double q = 0.0; q <= 10.0; q += 0.25) {
    const double ber = ber_from_q(QFactor{q});
    CHECK(ber < prev);
    prev = ber;
  }
  for (double q = 0.5; q <= 8.0; q += 0.31) {
    CHECK(std::abs(q_from_ber(ber_from_q(QFactor{q})).value - q) < 1e-5);
  }
  // strictly decreasing in ber
  CHECK(q_from_ber(1e-12).value > q_from_ber(1e-9).value);
  CHECK(q_from_ber(1e-9).value > q_from_ber(1e-4).value);
}

TEST_CASE("ber against gaussian-tail quadrature") {
  for (double q = 1.2; q <= 8.0; q += 0.4) {
    const double oracle = oracles::gaussian_tail_ber(q);
    const double impl = ber_from_q(QFactor{q});
    CHECK(std::abs(impl - oracle) < 1e-3 * oracle);
  }
}
