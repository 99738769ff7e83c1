#include "optiplan/power_math.hpp"

#include <cmath>

namespace optiplan {

namespace {

void require_modulation(const ModulationSpec& m) {
  if (!(m.extinction_ratio_db > 0.0)) {
    throw std::domain_error("extinction ratio must be > 0 dB");
  }
  if (!(m.average_power.value >= 0.0)) {
    throw std::domain_error("average power must be >= 0 mW");
  }
}

}  // namespace

PowerMw dbm_to_mw(PowerDbm p) {
  if (!std::isfinite(p.value)) {
    throw std::domain_error("power in dBm must be finite");
  }
  return PowerMw{std::pow(10.0, p.value / 10.0)};
}

PowerDbm mw_to_dbm(PowerMw p) {
  if (!(p.value > 0.0)) {
    throw std::domain_error("power must be > 0 mW to express in dBm");
  }
  return PowerDbm{10.0 * std::log10(p.value)};
}

PowerMw oma_from_modulation(const ModulationSpec& m) {
  require_modulation(m);
  const double r = std::pow(10.0, m.extinction_ratio_db / 10.0);
  return PowerMw{2.0 * m.average_power.value * (r - 1.0) / (r + 1.0)};
}

SignalLevels levels_from_modulation(const ModulationSpec& m) {
  require_modulation(m);
  const double r = std::pow(10.0, m.extinction_ratio_db / 10.0);
  const double low = 2.0 * m.average_power.value / (r + 1.0);
  return SignalLevels{PowerMw{r * low}, PowerMw{low}};
}

double ber_from_q(QFactor q) {
  if (!(q.value >= 0.0)) {
    throw std::domain_error("Q factor must be >= 0");
  }
  return 0.5 * std::erfc(q.value / std::sqrt(2.0));
}

QFactor q_from_ber(double ber) {
  if (!(ber > 0.0) || ber > 0.5) {
    throw std::domain_error("BER must be in (0, 0.5]");
  }
  double lo = 0.0;
  double hi = 45.0;  // ber_from_q(45) underflows to 0, below any representable ber
  while (hi - lo > 1e-7) {
    const double mid = 0.5 * (lo + hi);
    if (ber_from_q(QFactor{mid}) > ber) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return QFactor{0.5 * (lo + hi)};
}

}  // namespace optiplan
