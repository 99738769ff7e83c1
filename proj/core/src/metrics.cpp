#include "optiplan/metrics.hpp"

#include <cmath>

#include "optiplan/errors.hpp"

namespace optiplan {

void TransceiverRecord::validate() const {
  if (name.empty()) throw ValidationError("transceiver record needs a name");
  if (lanes < 1) throw ValidationError("record '" + name + "': lanes must be >= 1");
  if (!(rate_per_lane_gbps > 0.0)) {
    throw ValidationError("record '" + name + "': rate must be > 0");
  }
  if (!(total_power_mw > 0.0)) {
    throw ValidationError("record '" + name + "': power must be > 0");
  }
  if (cost_usd_per_gbps && !(cost_usd_per_gbps->first > 0.0 &&
                             cost_usd_per_gbps->second >= cost_usd_per_gbps->first)) {
    throw ValidationError("record '" + name + "': cost range must be positive and ordered");
  }
  if (projected_rate_gbps && !(*projected_rate_gbps > 0.0)) {
    throw ValidationError("record '" + name + "': projected rate must be > 0");
  }
}

void ConnectorDensityRecord::validate() const {
  if (name.empty()) throw ValidationError("connector record needs a name");
  if (channels_per_fiber < 1 || fibers < 1) {
    throw ValidationError("record '" + name + "': channel and fiber counts must be >= 1");
  }
  if (!(rate_gbps > 0.0) || !(width_mm > 0.0) || !(height_mm > 0.0)) {
    throw ValidationError("record '" + name + "': rate and face dimensions must be > 0");
  }
}

void PowerBreakdown::validate() const {
  double sum = 0.0;
  for (const auto& [block, fraction] : blocks) {
    if (fraction < 0.0) {
      throw ValidationError("power block '" + block + "' has a negative fraction");
    }
    sum += fraction;
  }
  if (std::abs(sum - 1.0) > 1e-6) {
    throw ValidationError("power breakdown fractions must sum to 1");
  }
}

double energy_per_bit_pj(double total_power_mw, int lanes, double rate_per_lane_gbps) {
  if (!(total_power_mw > 0.0) || lanes < 1 || !(rate_per_lane_gbps > 0.0)) {
    throw ValidationError("energy per bit needs positive power, lanes and rate");
  }
  return total_power_mw / (lanes * rate_per_lane_gbps);
}

double scale_energy_per_bit(double base_pj, double base_rate_gbps, double new_rate_gbps) {
  if (!(base_rate_gbps > 0.0) || !(new_rate_gbps > 0.0)) {
    throw ValidationError("rates must be > 0");
  }
  return base_pj * base_rate_gbps / new_rate_gbps;
}

double interconnect_density(const ConnectorDensityRecord& rec) {
  rec.validate();
  return rec.channels_per_fiber * rec.fibers * rec.rate_gbps / (rec.width_mm * rec.height_mm);
}

double density_ratio(const ConnectorDensityRecord& a, const ConnectorDensityRecord& b) {
  return interconnect_density(a) / interconnect_density(b);
}

std::string_view to_string(CostZone z) {
  switch (z) {
    case CostZone::kElectricalFavored: return "electrical-favored";
    case CostZone::kCrossover: return "crossover";
    case CostZone::kOpticalFavored: return "optical-favored";
  }
  throw ValidationError("unknown cost zone");
}

CostZone cost_crossover_zone(double cost_usd_per_gbps) {
  if (!(cost_usd_per_gbps > 0.0)) {
    throw ValidationError("cost must be > 0 $/Gbps");
  }
  if (cost_usd_per_gbps > 2.0) return CostZone::kElectricalFavored;
  if (cost_usd_per_gbps >= 1.0) return CostZone::kCrossover;
  return CostZone::kOpticalFavored;
}

int printed_decimals(double value) {
  for (int d = 0; d <= 6; ++d) {
    const double scale = std::pow(10.0, d);
    if (std::abs(std::round(value * scale) / scale - value) <
        1e-9 * std::max(1.0, std::abs(value))) {
      return d;
    }
  }
  return 7;
}

bool printed_value_consistent(double printed, double derived) {
  const int decimals = printed_decimals(printed);
  const double half_ulp = 0.5 * std::pow(10.0, -decimals);
  return std::abs(printed - derived) <= half_ulp + 1e-9;
}

std::vector<ComparisonRow> comparison_table(std::span<const TransceiverRecord> records) {
  if (records.empty()) {
    throw ValidationError("comparison table needs at least one record");
  }
  std::vector<ComparisonRow> rows;
  rows.reserve(records.size());
  for (const auto& rec : records) {
    rec.validate();
    ComparisonRow row;
    row.name = rec.name;
    row.lanes = rec.lanes;
    row.rate_per_lane_gbps = rec.rate_per_lane_gbps;
    row.total_power_mw = rec.total_power_mw;
    row.derived_pj_per_bit =
        energy_per_bit_pj(rec.total_power_mw, rec.lanes, rec.rate_per_lane_gbps);
    row.stated_pj_per_bit = rec.stated_pj_per_bit;
    row.bd_per_lane_gbps_cm = rec.bd_per_lane_gbps_cm;
    row.reach_m = rec.reach_m;
    if (rec.stated_pj_per_bit) {
      row.deviation_pct =
          100.0 * std::abs(row.derived_pj_per_bit - *rec.stated_pj_per_bit) /
          *rec.stated_pj_per_bit;
      row.mismatch_over_5pct = row.deviation_pct > 5.0;
      row.rounding_flag =
          !printed_value_consistent(*rec.stated_pj_per_bit, row.derived_pj_per_bit);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace optiplan
