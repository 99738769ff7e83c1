#include "optiplan/link_budget.hpp"

#include <cmath>
#include <cstdio>

#include "optiplan/errors.hpp"

namespace optiplan {

namespace {

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

}  // namespace

void BerModel::validate() const {
  if (!(q_at_sensitivity.value > 0.0)) {
    throw ValidationError("BER model anchor Q must be > 0");
  }
  if (!(slope_exponent > 0.0)) {
    throw ValidationError("BER model slope exponent must be > 0");
  }
}

double ScalingLedger::excess_delta(int ports) const {
  const auto it = excess_delta_db.upper_bound(ports);
  if (it == excess_delta_db.begin()) return 0.0;
  return std::prev(it)->second;
}

void ScalingLedger::validate() const {
  if (!is_power_of_two(base_ports)) {
    throw ValidationError("scaling base port count must be a power of two");
  }
  double prev = 0.0;
  for (const auto& [ports, delta] : excess_delta_db) {
    if (ports <= base_ports) {
      throw ValidationError("excess deltas apply only beyond the base port count");
    }
    if (delta < prev) {
      throw ValidationError("excess delta must be non-decreasing in port count");
    }
    prev = delta;
  }
}

LossDb splitting_loss_db(int ports) {
  if (ports < 1) {
    throw ValidationError("port count must be >= 1");
  }
  return LossDb{10.0 * std::log10(static_cast<double>(ports))};
}

LossDb element_loss_db(const PassiveElement& e) {
  validate_element(e);
  return std::visit(
      [](const auto& el) -> LossDb {
        using T = std::decay_t<decltype(el)>;
        if constexpr (std::is_same_v<T, StarCoupler>) {
          return LossDb{splitting_loss_db(el.out_ports).value + el.excess_db};
        } else if constexpr (std::is_same_v<T, Awg>) {
          if (el.direction == AwgDirection::kBroadcast) {
            return LossDb{splitting_loss_db(el.ports).value + el.excess_db};
          }
          return LossDb{el.excess_db};
        } else if constexpr (std::is_same_v<T, Connector>) {
          return LossDb{el.loss_db};
        } else if constexpr (std::is_same_v<T, Attenuator>) {
          return LossDb{el.loss_db};
        } else {
          static_assert(std::is_same_v<T, FiberSpan>);
          return LossDb{el.length_m * el.atten_db_per_km / 1000.0};
        }
      },
      e);
}

std::string element_label(const PassiveElement& e) {
  return std::visit(
      [](const auto& el) -> std::string {
        using T = std::decay_t<decltype(el)>;
        if constexpr (std::is_same_v<T, StarCoupler>) {
          return "star-coupler " + std::to_string(el.in_ports) + "x" +
                 std::to_string(el.out_ports);
        } else if constexpr (std::is_same_v<T, Awg>) {
          return std::string("awg ") + std::to_string(el.ports) + "-port " +
                 (el.direction == AwgDirection::kDemux ? "demux" : "broadcast");
        } else if constexpr (std::is_same_v<T, Connector>) {
          return el.label.empty() ? "connector" : "connector (" + el.label + ")";
        } else if constexpr (std::is_same_v<T, Attenuator>) {
          return "attenuator";
        } else {
          static_assert(std::is_same_v<T, FiberSpan>);
          char buf[48];
          std::snprintf(buf, sizeof buf, "fiber %g m", el.length_m);
          return buf;
        }
      },
      e);
}

BudgetReport compute_budget(const OpticalPath& path) {
  BudgetReport report;
  report.launch_oma_dbm = mw_to_dbm(oma_from_modulation(path.tx.launch));
  double running = report.launch_oma_dbm.value;
  for (const auto& element : path.elements) {
    const double loss = element_loss_db(element).value;
    running -= loss;
    report.stages.push_back(BudgetStage{element_label(element), loss, running});
  }
  report.received_oma_dbm = PowerDbm{running};
  report.margin_db = running - path.rx.sensitivity_dbm_at_1e12.value;
  return report;
}

double ber_at_power(PowerDbm received_oma_dbm, const ReceiverSpec& rx, const BerModel& model) {
  model.validate();
  const double delta_db = received_oma_dbm.value - rx.sensitivity_dbm_at_1e12.value;
  const double q = model.q_at_sensitivity.value *
                   std::pow(10.0, model.slope_exponent * delta_db / 10.0);
  const double ber = ber_from_q(QFactor{q});
  return ber < 1e-300 ? 0.0 : ber;
}

std::vector<SweepRow> attenuation_sweep(const OpticalPath& path, double atten_start_db,
                                        double atten_stop_db, double step_db,
                                        const BerModel& model) {
  if (!(step_db > 0.0)) {
    throw ValidationError("sweep step must be > 0 dB");
  }
  if (atten_start_db > atten_stop_db) {
    throw ValidationError("sweep start must be <= stop");
  }
  const BudgetReport budget = compute_budget(path);
  const auto rows =
      static_cast<std::size_t>(std::floor((atten_stop_db - atten_start_db) / step_db + 1e-9)) + 1;
  std::vector<SweepRow> sweep;
  sweep.reserve(rows);
  for (std::size_t i = 0; i < rows; ++i) {
    const double atten = atten_start_db + static_cast<double>(i) * step_db;
    const PowerDbm received{budget.received_oma_dbm.value - atten};
    sweep.push_back(SweepRow{atten, received.value, ber_at_power(received, path.rx, model)});
  }
  return sweep;
}

double predict_scaled_margin(const ScalingLedger& ledger, int ports) {
  ledger.validate();
  if (!is_power_of_two(ports)) {
    throw ValidationError("coupler port counts are built in power-of-two stages");
  }
  if (ports < ledger.base_ports) {
    throw ValidationError("port count below the ledger base");
  }
  const double splitting_delta =
      splitting_loss_db(ports).value - splitting_loss_db(ledger.base_ports).value;
  return ledger.base_margin_db - splitting_delta - ledger.excess_delta(ports);
}

int max_broadcast_ports(const ScalingLedger& ledger) {
  ledger.validate();
  if (ledger.base_margin_db < ledger.min_margin_db) {
    throw InfeasibleError("base margin " + std::to_string(ledger.base_margin_db) +
                          " dB already below the " + std::to_string(ledger.min_margin_db) +
                          " dB floor (deficit " +
                          std::to_string(ledger.min_margin_db - ledger.base_margin_db) + " dB)");
  }
  int ports = ledger.base_ports;
  // Each doubling costs 3.01 dB of splitting alone, so this terminates.
  while (predict_scaled_margin(ledger, ports * 2) >= ledger.min_margin_db) {
    ports *= 2;
    if (ports > (1 << 24)) {
      throw ValidationError("margin floor admits more than 2^24 ports; out of model range");
    }
  }
  return ports;
}

}  // namespace optiplan
