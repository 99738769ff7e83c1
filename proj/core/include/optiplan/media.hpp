#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "optiplan/topology.hpp"

namespace optiplan {

enum class MediumClass {
  kElectricalPcb,
  kPolymerWaveguide,
  kMultimodeFiber,
  kSingleModeFiber,
};

std::string_view to_string(MediumClass c);
MediumClass medium_class_from_string(std::string_view s);

/// A waveguide class characterized by its bandwidth-distance product, treated
/// as a rate-independent constant per medium.
struct MediumSpec {
  std::string name;
  MediumClass cls = MediumClass::kElectricalPcb;
  double bd_gbps_cm = 0.0;  // > 0
  std::string notes;
};

struct MediumCatalog {
  std::vector<MediumSpec> entries;

  /// Working values with published ranges in the notes: electrical 500
  /// (250-1500), polymer 3000 (measured 1500-3000, ideal 6000), multimode
  /// 500000 (4000-500000+), single-mode 500000 and up.
  static MediumCatalog defaults();

  const MediumSpec* find(std::string_view name) const;
  void validate() const;  // unique names, positive B*d
};

/// Electrical/optical split of an all-to-all fabric at one line rate.
struct FabricClassification {
  double rate_gbps = 0.0;
  double bd_limit_gbps_cm = 0.0;
  std::size_t electrical_count = 0;
  std::size_t optical_count = 0;
  double optical_fraction = 0.0;  // optical / (electrical + optical)
};

/// rate * length, the B*d a link demands of its medium.
double required_bd(double rate_gbps, double length_cm);

/// bd / rate, the longest link the medium supports at the given rate.
double max_reach_cm(const MediumSpec& medium, double rate_gbps);

/// Inclusive threshold: a link goes optical when rate*length >= bd_limit.
bool needs_optical(const Link& link, double rate_gbps, double bd_limit_gbps_cm);

FabricClassification classify_fabric(const NodeGrid& grid, double rate_gbps,
                                     double bd_limit_gbps_cm);

/// One classification per rate; rates must be ascending and non-empty.
std::vector<FabricClassification> crossover_table(const NodeGrid& grid,
                                                  std::span<const double> rates_gbps,
                                                  double bd_limit_gbps_cm);

}  // namespace optiplan
