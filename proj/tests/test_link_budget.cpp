#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "optiplan/errors.hpp"
#include "optiplan/link_budget.hpp"

using namespace optiplan;

namespace {

// Transmitter whose launch OMA lands exactly on `oma_dbm`.
TransmitterSpec tx_with_oma(double oma_dbm, double er_db = 16.2) {
  const double r = std::pow(10.0, er_db / 10.0);
  const double oma_mw = std::pow(10.0, oma_dbm / 10.0);
  TransmitterSpec tx;
  tx.name = "tx";
  tx.tuning = {33};
  tx.current = 33;
  tx.launch = {PowerMw{oma_mw * (r + 1.0) / (2.0 * (r - 1.0))}, er_db};
  tx.rate_gbps = 10.0;
  return tx;
}

ReceiverSpec rx_with_sensitivity(double dbm, DetectorType detector = DetectorType::kApd) {
  ReceiverSpec rx;
  rx.name = "rx";
  rx.detector = detector;
  rx.sensitivity_dbm_at_1e12 = PowerDbm{dbm};
  return rx;
}

OpticalPath bare_path(double launch_oma_dbm, double sensitivity_dbm) {
  return OpticalPath{"path", tx_with_oma(launch_oma_dbm), {}, rx_with_sensitivity(sensitivity_dbm),
                     {}};
}

}  // namespace

TEST_CASE("splitting loss") {
  CHECK(splitting_loss_db(1).value == 0.0);
  CHECK(splitting_loss_db(4).value == doctest::Approx(6.0206).epsilon(1e-4));
  CHECK(splitting_loss_db(32).value == doctest::Approx(15.0515).epsilon(1e-4));
  CHECK(splitting_loss_db(64).value == doctest::Approx(18.0618).epsilon(1e-4));
  CHECK_THROWS_AS(splitting_loss_db(0), ValidationError);

  for (int n = 1; n <= 1024; n *= 2) {
    CHECK(std::abs(splitting_loss_db(2 * n).value - splitting_loss_db(n).value -
                   10.0 * std::log10(2.0)) < 1e-9);
  }
}

TEST_CASE("element losses") {
  CHECK(element_loss_db(StarCoupler{4, 4, 1.0}).value == doctest::Approx(7.0206).epsilon(1e-4));
  CHECK(element_loss_db(Attenuator{13.5}).value == 13.5);
  CHECK(element_loss_db(Awg{8, 2.5, 30, AwgDirection::kDemux}).value == 2.5);
  CHECK(element_loss_db(Awg{8, 2.5, 30, AwgDirection::kBroadcast}).value ==
        doctest::Approx(2.5 + 9.0309).epsilon(1e-4));
  CHECK(element_loss_db(Connector{0.75, ""}).value == 0.75);
  CHECK(element_loss_db(FiberSpan{25.0, 0.4}).value == doctest::Approx(0.01));
  CHECK_THROWS_AS(element_loss_db(Connector{-0.1, ""}), ValidationError);
  CHECK_THROWS_AS(element_loss_db(StarCoupler{4, 0, 1.0}), ValidationError);
}

TEST_CASE("margins from the published subtractions") {
  CHECK(compute_budget(bare_path(-6.7, -14.5)).margin_db == doctest::Approx(7.8).epsilon(1e-6));
  CHECK(compute_budget(bare_path(-8.4, -26.5)).margin_db == doctest::Approx(18.1).epsilon(1e-6));
  CHECK(compute_budget(bare_path(-20.7, -25.5)).margin_db == doctest::Approx(4.8).epsilon(1e-6));
}

TEST_CASE("budget ledger") {
  OpticalPath path = bare_path(4.0, -26.5);
  path.elements = {Connector{0.75, "a"}, StarCoupler{4, 4, 1.75}, FiberSpan{25.0, 0.4},
                   Awg{8, 3.68, 30, AwgDirection::kDemux}, Connector{0.75, "b"}};
  const auto report = compute_budget(path);
  REQUIRE(report.stages.size() == 5);

  double total = 0.0;
  double prev_power = report.launch_oma_dbm.value;
  for (const auto& stage : report.stages) {
    total += stage.loss_db;
    CHECK(stage.power_dbm <= prev_power);
    prev_power = stage.power_dbm;
  }
  CHECK(std::abs(report.received_oma_dbm.value - (report.launch_oma_dbm.value - total)) < 1e-9);
  CHECK(report.margin_db ==
        doctest::Approx(report.received_oma_dbm.value + 26.5).epsilon(1e-9));
  CHECK(report.feasible());

  // loss-only elements commute
  OpticalPath shuffled = path;
  std::reverse(shuffled.elements.begin(), shuffled.elements.end());
  const auto report2 = compute_budget(shuffled);
  CHECK(report2.received_oma_dbm.value ==
        doctest::Approx(report.received_oma_dbm.value).epsilon(1e-12));
  CHECK(report2.margin_db == doctest::Approx(report.margin_db).epsilon(1e-12));
}

TEST_CASE("negative margin is a result, not an error") {
  OpticalPath path = bare_path(-6.7, -14.5);
  path.elements = {Attenuator{20.0}};
  const auto report = compute_budget(path);
  CHECK(report.margin_db == doctest::Approx(-12.2).epsilon(1e-6));
  CHECK_FALSE(report.feasible());
}

TEST_CASE("ber at power") {
  const BerModel model;
  const auto rx = rx_with_sensitivity(-26.5);
  CHECK(ber_at_power(PowerDbm{-26.5}, rx, model) == doctest::Approx(1e-12).epsilon(0.02));
  CHECK(ber_at_power(PowerDbm{-26.5 - 3.01}, rx, model) ==
        doctest::Approx(2.18e-4).epsilon(0.01));
  // 7.8 dB above sensitivity: Q ~ 42, erfc underflows, reported as exactly 0
  CHECK(ber_at_power(PowerDbm{-26.5 + 7.8}, rx, model) == 0.0);

  CHECK_THROWS_AS(ber_at_power(PowerDbm{-20.0}, rx, BerModel{QFactor{0.0}, 1.0}),
                  ValidationError);
  CHECK_THROWS_AS(ber_at_power(PowerDbm{-20.0}, rx, BerModel{QFactor{7.0}, 0.0}),
                  ValidationError);
}

TEST_CASE("steeper waterfalls via the slope exponent") {
  const auto rx = rx_with_sensitivity(-25.0);
  const BerModel shallow{QFactor{7.0345}, 1.0};
  const BerModel steep{QFactor{7.0345}, 2.0};
  // both anchored at sensitivity
  CHECK(ber_at_power(PowerDbm{-25.0}, rx, steep) ==
        doctest::Approx(ber_at_power(PowerDbm{-25.0}, rx, shallow)));
  // below sensitivity the steep model degrades faster
  CHECK(ber_at_power(PowerDbm{-27.0}, rx, steep) > ber_at_power(PowerDbm{-27.0}, rx, shallow));
}

TEST_CASE("attenuation sweep") {
  const OpticalPath multimode = bare_path(-6.7, -14.5);
  const BerModel model;

  const auto single = attenuation_sweep(multimode, 5.0, 5.0, 0.5, model);
  REQUIRE(single.size() == 1);
  CHECK(single[0].attenuation_db == 5.0);

  const auto rows = attenuation_sweep(multimode, 0.0, 15.0, 0.5, model);
  REQUIRE(rows.size() == 31);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    CHECK(rows[i].received_dbm < rows[i - 1].received_dbm);
    CHECK(rows[i].ber >= rows[i - 1].ber);
  }

  // the 1e-12 crossing sits within one step of the margin
  const double margin = compute_budget(multimode).margin_db;
  double crossing = -1.0;
  for (const auto& row : rows) {
    if (row.ber > 1e-12) {
      crossing = row.attenuation_db;
      break;
    }
  }
  CHECK(std::abs(crossing - margin) <= 0.5 + 1e-9);

  CHECK_THROWS_AS(attenuation_sweep(multimode, 0.0, 10.0, 0.0, model), ValidationError);
  CHECK_THROWS_AS(attenuation_sweep(multimode, 0.0, 10.0, -1.0, model), ValidationError);
  CHECK_THROWS_AS(attenuation_sweep(multimode, 10.0, 0.0, 0.5, model), ValidationError);
}

TEST_CASE("dwdm sweep crossing near 18.1 dB") {
  const OpticalPath dwdm = bare_path(-8.4, -26.5);
  const auto rows = attenuation_sweep(dwdm, 0.0, 30.0, 0.5, BerModel{});
  double crossing = -1.0;
  for (const auto& row : rows) {
    if (row.ber > 1e-12) {
      crossing = row.attenuation_db;
      break;
    }
  }
  CHECK(std::abs(crossing - 18.1) <= 0.5 + 1e-9);
}

TEST_CASE("apd substitution shifts margin by exactly its sensitivity gain") {
  OpticalPath pin_path = bare_path(-6.7, -14.5);
  pin_path.rx.detector = DetectorType::kPin;
  OpticalPath apd_path = pin_path;
  apd_path.rx.detector = DetectorType::kApd;
  apd_path.rx.sensitivity_dbm_at_1e12 = PowerDbm{-14.5 - 7.0};
  CHECK(compute_budget(apd_path).margin_db - compute_budget(pin_path).margin_db ==
        doctest::Approx(7.0).epsilon(1e-12));
}

TEST_CASE("scaled margin prediction") {
  const ScalingLedger from4{4, 18.1, {{32, 4.0}}, 3.0};
  CHECK(predict_scaled_margin(from4, 4) == doctest::Approx(18.1));
  CHECK(predict_scaled_margin(from4, 8) == doctest::Approx(18.1 - 3.0103).epsilon(1e-4));
  CHECK(predict_scaled_margin(from4, 32) == doctest::Approx(5.0691).epsilon(1e-4));
  CHECK(predict_scaled_margin(from4, 64) ==
        doctest::Approx(18.1 - 12.0412 - 4.0).epsilon(1e-4));  // delta carries forward

  const ScalingLedger from32{32, 4.8, {}, 3.0};
  CHECK(predict_scaled_margin(from32, 64) == doctest::Approx(1.7897).epsilon(1e-4));

  CHECK_THROWS_AS(predict_scaled_margin(from4, 24), ValidationError);
  CHECK_THROWS_AS(predict_scaled_margin(from4, 2), ValidationError);
}

TEST_CASE("ledger validation") {
  CHECK_THROWS_AS((ScalingLedger{3, 10.0, {}, 0.0}).validate(), ValidationError);
  CHECK_THROWS_AS((ScalingLedger{4, 10.0, {{4, 1.0}}, 0.0}).validate(), ValidationError);
  CHECK_THROWS_AS((ScalingLedger{4, 10.0, {{8, 2.0}, {16, 1.0}}, 0.0}).validate(),
                  ValidationError);
  ScalingLedger ok{4, 10.0, {{8, 1.0}, {16, 2.5}}, 0.0};
  CHECK_NOTHROW(ok.validate());
}

TEST_CASE("max broadcast ports") {
  CHECK(max_broadcast_ports({32, 4.8, {}, 3.0}) == 32);
  CHECK(max_broadcast_ports({32, 4.8, {}, 1.5}) == 64);
  CHECK(max_broadcast_ports({32, 4.8, {}, 0.0}) == 64);  // 128 ports would go negative
  CHECK_THROWS_AS(max_broadcast_ports({32, 4.8, {}, 20.0}), InfeasibleError);
}

TEST_CASE("predicted margin is non-increasing across doublings") {
  const ScalingLedger ledger{4, 18.1, {{16, 2.0}, {64, 5.0}}, -100.0};
  double prev = 1e9;
  for (int ports = 4; ports <= 1024; ports *= 2) {
    const double margin = predict_scaled_margin(ledger, ports);
    CHECK(margin <= prev);
    prev = margin;
  }
}
