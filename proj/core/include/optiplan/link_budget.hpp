#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "optiplan/dwdm.hpp"
#include "optiplan/power_math.hpp"

namespace optiplan {

/// One transmitter -> passive chain -> one receiver.
struct OpticalPath {
  std::string name;
  TransmitterSpec tx;
  std::vector<PassiveElement> elements;
  ReceiverSpec rx;
  std::optional<double> published_margin_db;  // quoted figure to print beside the computed one
};

struct BudgetStage {
  std::string element;
  double loss_db = 0.0;
  double power_dbm = 0.0;  // running OMA after this stage
};

/// Per-stage power ledger. All powers are OMA-referenced:
/// received = launch - sum(losses), margin = received - sensitivity.
/// A negative margin is a reported result, not an error.
struct BudgetReport {
  PowerDbm launch_oma_dbm;
  std::vector<BudgetStage> stages;
  PowerDbm received_oma_dbm;
  double margin_db = 0.0;

  bool feasible() const { return margin_db >= 0.0; }
};

/// BER-vs-power law: Q(P) = q_at_sensitivity * 10^(gamma*(P - sensitivity)/10),
/// anchored so BER(sensitivity) = 1e-12.
struct BerModel {
  QFactor q_at_sensitivity{7.0345};
  double slope_exponent = 1.0;  // gamma

  void validate() const;
};

/// Margin extrapolation across coupler doublings.
/// predicted(n) = base_margin - (splitting(n) - splitting(base)) - excess_delta(n).
struct ScalingLedger {
  int base_ports = 0;
  double base_margin_db = 0.0;
  // Extra excess loss vs the base coupler, as a step function of port count:
  // the entry with the largest key <= n applies; no entry means 0.
  std::map<int, double> excess_delta_db;
  double min_margin_db = 0.0;

  double excess_delta(int ports) const;
  void validate() const;
};

/// Ideal 1:n splitting loss, 10*log10(ports).
LossDb splitting_loss_db(int ports);

/// Coupler: splitting(out_ports) + excess. AWG: excess only in demux
/// direction, splitting(ports) + excess in broadcast direction.
/// Connector/attenuator: as given. Fiber: length * atten / 1000.
LossDb element_loss_db(const PassiveElement& e);

std::string element_label(const PassiveElement& e);

BudgetReport compute_budget(const OpticalPath& path);

/// Model BER at a received OMA level; values below 1e-300 clamp to 0.
double ber_at_power(PowerDbm received_oma_dbm, const ReceiverSpec& rx, const BerModel& model);

struct SweepRow {
  double attenuation_db = 0.0;
  double received_dbm = 0.0;
  double ber = 0.0;
};

/// Insert a programmable attenuator and walk it from start to stop.
std::vector<SweepRow> attenuation_sweep(const OpticalPath& path, double atten_start_db,
                                        double atten_stop_db, double step_db,
                                        const BerModel& model);

/// Ports must be powers of two with ports >= base_ports.
double predict_scaled_margin(const ScalingLedger& ledger, int ports);

/// Largest power-of-two port count still meeting min_margin_db. Throws
/// InfeasibleError when the base margin is already below the floor.
int max_broadcast_ports(const ScalingLedger& ledger);

}  // namespace optiplan
