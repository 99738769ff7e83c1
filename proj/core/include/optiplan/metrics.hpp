#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace optiplan {

/// One transceiver catalog row. `stated_*` fields carry the values printed in
/// the source datasheet or publication, kept verbatim next to what we derive.
struct TransceiverRecord {
  std::string name;
  std::optional<double> wavelength_nm;
  int lanes = 1;
  double rate_per_lane_gbps = 0.0;
  double total_power_mw = 0.0;
  std::optional<double> stated_pj_per_bit;
  std::optional<double> reach_m;
  std::optional<double> bd_per_lane_gbps_cm;
  std::optional<std::pair<double, double>> cost_usd_per_gbps;  // low, high
  // Fixed-power rate projection: what the same part would cost per bit at a
  // higher line rate, with the published projection kept alongside.
  std::optional<double> projected_rate_gbps;
  std::optional<double> stated_projected_pj_per_bit;
  std::string notes;

  void validate() const;
};

/// Connector face-density row: aggregate bandwidth over face area.
struct ConnectorDensityRecord {
  std::string name;
  int channels_per_fiber = 0;
  int fibers = 0;
  double rate_gbps = 0.0;
  double width_mm = 0.0;
  double height_mm = 0.0;
  std::optional<double> stated_density_gbps_mm2;

  void validate() const;
};

/// Where a link's transceiver power goes, as fractions summing to 1.
struct PowerBreakdown {
  std::map<std::string, double> blocks;

  void validate() const;
};

/// total_power / (lanes * rate); 1 pJ/bit == 1 mW per Gbps.
double energy_per_bit_pj(double total_power_mw, int lanes, double rate_per_lane_gbps);

/// Fixed-power scaling: base_pj * base_rate / new_rate.
double scale_energy_per_bit(double base_pj, double base_rate_gbps, double new_rate_gbps);

/// channels_per_fiber * fibers * rate / (width * height), in Gbps/mm^2.
double interconnect_density(const ConnectorDensityRecord& rec);

double density_ratio(const ConnectorDensityRecord& a, const ConnectorDensityRecord& b);

enum class CostZone { kElectricalFavored, kCrossover, kOpticalFavored };

std::string_view to_string(CostZone z);

/// > 2 $/Gbps electrical-favored, [1, 2] crossover, < 1 optical-favored.
CostZone cost_crossover_zone(double cost_usd_per_gbps);

// Printed-value consistency: a stated number is taken as agreeing with the
// derived one when it could be the derived value rounded at its own printed
// precision. Anything further off gets flagged as source rounding.

int printed_decimals(double value);
bool printed_value_consistent(double printed, double derived);

struct ComparisonRow {
  std::string name;
  int lanes = 0;
  double rate_per_lane_gbps = 0.0;
  double total_power_mw = 0.0;
  double derived_pj_per_bit = 0.0;
  std::optional<double> stated_pj_per_bit;
  double deviation_pct = 0.0;        // |derived - stated| / stated, in percent
  bool mismatch_over_5pct = false;   // stated and derived disagree beyond rounding
  bool rounding_flag = false;        // stated is not a rounding of derived
  std::optional<double> bd_per_lane_gbps_cm;
  std::optional<double> reach_m;
};

std::vector<ComparisonRow> comparison_table(std::span<const TransceiverRecord> records);

}  // namespace optiplan
