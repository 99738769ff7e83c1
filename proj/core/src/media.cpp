#include "optiplan/media.hpp"

#include <unordered_set>

#include "optiplan/errors.hpp"

namespace optiplan {

std::string_view to_string(MediumClass c) {
  switch (c) {
    case MediumClass::kElectricalPcb: return "electrical-pcb";
    case MediumClass::kPolymerWaveguide: return "polymer-waveguide";
    case MediumClass::kMultimodeFiber: return "multimode-fiber";
    case MediumClass::kSingleModeFiber: return "single-mode-fiber";
  }
  throw ValidationError("unknown medium class");
}

MediumClass medium_class_from_string(std::string_view s) {
  if (s == "electrical-pcb") return MediumClass::kElectricalPcb;
  if (s == "polymer-waveguide") return MediumClass::kPolymerWaveguide;
  if (s == "multimode-fiber") return MediumClass::kMultimodeFiber;
  if (s == "single-mode-fiber") return MediumClass::kSingleModeFiber;
  throw ValidationError("unknown medium class '" + std::string(s) + "'");
}

MediumCatalog MediumCatalog::defaults() {
  return MediumCatalog{{
      {"electrical-pcb", MediumClass::kElectricalPcb, 500.0,
       "typical range 250-1500 Gbps-cm; 500 most commonly seen"},
      {"polymer-waveguide", MediumClass::kPolymerWaveguide, 3000.0,
       "measured 1500-3000 Gbps-cm; ideal limits up to 6000"},
      {"multimode-fiber", MediumClass::kMultimodeFiber, 500000.0,
       "4000 up to 500,000+ Gbps-cm"},
      {"single-mode-fiber", MediumClass::kSingleModeFiber, 500000.0,
       "500,000 Gbps-cm and up"},
  }};
}

const MediumSpec* MediumCatalog::find(std::string_view name) const {
  for (const auto& entry : entries) {
    if (entry.name == name) return &entry;
  }
  return nullptr;
}

void MediumCatalog::validate() const {
  std::unordered_set<std::string_view> names;
  for (const auto& entry : entries) {
    if (!(entry.bd_gbps_cm > 0.0)) {
      throw ValidationError("medium '" + entry.name + "' must have B*d > 0");
    }
    if (!names.insert(entry.name).second) {
      throw ValidationError("duplicate medium name '" + entry.name + "'");
    }
  }
}

double required_bd(double rate_gbps, double length_cm) {
  if (!(rate_gbps > 0.0) || length_cm < 0.0) {
    throw ValidationError("rate must be > 0 and length >= 0");
  }
  return rate_gbps * length_cm;
}

double max_reach_cm(const MediumSpec& medium, double rate_gbps) {
  if (!(rate_gbps > 0.0)) {
    throw ValidationError("rate must be > 0");
  }
  return medium.bd_gbps_cm / rate_gbps;
}

bool needs_optical(const Link& link, double rate_gbps, double bd_limit_gbps_cm) {
  if (!(rate_gbps > 0.0) || !(bd_limit_gbps_cm > 0.0)) {
    throw ValidationError("rate and B*d limit must be > 0");
  }
  return rate_gbps * link.length_cm >= bd_limit_gbps_cm;
}

FabricClassification classify_fabric(const NodeGrid& grid, double rate_gbps,
                                     double bd_limit_gbps_cm) {
  FabricClassification result;
  result.rate_gbps = rate_gbps;
  result.bd_limit_gbps_cm = bd_limit_gbps_cm;
  const auto links = all_to_all_links(grid);
  for (const Link& link : links) {
    if (needs_optical(link, rate_gbps, bd_limit_gbps_cm)) {
      ++result.optical_count;
    } else {
      ++result.electrical_count;
    }
  }
  result.optical_fraction =
      links.empty() ? 0.0 : static_cast<double>(result.optical_count) / links.size();
  return result;
}

std::vector<FabricClassification> crossover_table(const NodeGrid& grid,
                                                  std::span<const double> rates_gbps,
                                                  double bd_limit_gbps_cm) {
  if (rates_gbps.empty()) {
    throw ValidationError("crossover table needs at least one rate");
  }
  for (std::size_t i = 1; i < rates_gbps.size(); ++i) {
    if (!(rates_gbps[i] > rates_gbps[i - 1])) {
      throw ValidationError("rates must be strictly ascending");
    }
  }
  std::vector<FabricClassification> table;
  table.reserve(rates_gbps.size());
  for (double rate : rates_gbps) {
    table.push_back(classify_fabric(grid, rate, bd_limit_gbps_cm));
  }
  return table;
}

}  // namespace optiplan
