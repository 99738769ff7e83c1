#pragma once

#include <stdexcept>

namespace optiplan {

// Optical powers are carried in two scales, dBm and mW, and only cross via the
// explicit conversions below. The wrappers exist to keep dB and linear values
// from mixing silently.

struct PowerDbm {
  double value = 0.0;  // decibel-milliwatts
};

struct PowerMw {
  double value = 0.0;  // milliwatts, >= 0
};

struct LossDb {
  double value = 0.0;  // decibels, >= 0; losses compose additively
};

struct QFactor {
  double value = 0.0;  // dimensionless, >= 0
};

/// A transmitter's optical output: average launch power plus extinction ratio.
/// ER must be strictly positive (an ER of 0 dB carries no modulation).
struct ModulationSpec {
  PowerMw average_power;
  double extinction_ratio_db = 0.0;
};

struct SignalLevels {
  PowerMw high;  // optical one level
  PowerMw low;   // optical zero level
};

/// 10^(p/10) mW.
PowerMw dbm_to_mw(PowerDbm p);

/// 10*log10(p) dBm. Throws std::domain_error for p <= 0.
PowerDbm mw_to_dbm(PowerMw p);

/// Optical modulation amplitude P1 - P0 = 2*Pavg*(r-1)/(r+1), r = 10^(ER/10).
PowerMw oma_from_modulation(const ModulationSpec& m);

/// One/zero levels: high = 2*Pavg*r/(r+1), low = 2*Pavg/(r+1).
/// (high+low)/2 == Pavg and high/low == r.
SignalLevels levels_from_modulation(const ModulationSpec& m);

/// Gaussian-noise bit error rate, 0.5*erfc(q/sqrt(2)). Result in (0, 0.5].
double ber_from_q(QFactor q);

/// Inverse of ber_from_q by bisection to |dq| < 1e-6.
/// Throws std::domain_error unless 0 < ber <= 0.5.
QFactor q_from_ber(double ber);

}  // namespace optiplan
