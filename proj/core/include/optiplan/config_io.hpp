#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "optiplan/dwdm.hpp"
#include "optiplan/link_budget.hpp"
#include "optiplan/media.hpp"
#include "optiplan/metrics.hpp"
#include "optiplan/topology.hpp"

namespace optiplan {

// JSON input documents. Every file carries a versioned top-level "schema"
// field; loaders throw ValidationError with a field path on anything invalid.

/// Fabric description: grid geometry, media catalog, rates to classify at.
struct SystemConfig {
  NodeGrid grid;
  MediumCatalog media_catalog;
  std::vector<double> rates_gbps;
  double electrical_bd_limit_gbps_cm = 500.0;
  // Optional published split percentages to print alongside computed ones,
  // keyed by rate.
  std::map<double, double> published_optical_fraction_pct;
};

/// Broadcast network plus the named point-to-point budget paths and models.
struct NetworkPlan {
  BroadcastNetwork network;
  std::vector<OpticalPath> paths;  // lookup is by OpticalPath::name
  BerModel ber_model;
  std::optional<ScalingLedger> scaling;

  const OpticalPath* find_path(std::string_view name) const;
};

struct MetricsCatalog {
  std::vector<TransceiverRecord> transceivers;
  std::vector<ConnectorDensityRecord> connectors;
  std::optional<PowerBreakdown> power_breakdown;
};

inline constexpr std::string_view kSystemSchema = "optiplan/system/1";
inline constexpr std::string_view kNetworkSchema = "optiplan/network/1";
inline constexpr std::string_view kCatalogSchema = "optiplan/catalog/1";

SystemConfig load_system_config(const std::filesystem::path& file);
NetworkPlan load_network_plan(const std::filesystem::path& file);
MetricsCatalog load_metrics_catalog(const std::filesystem::path& file);

// String-input variants; `context` names the source in error messages.
SystemConfig parse_system_config(std::string_view text, std::string_view context = "<string>");
NetworkPlan parse_network_plan(std::string_view text, std::string_view context = "<string>");
MetricsCatalog parse_metrics_catalog(std::string_view text,
                                     std::string_view context = "<string>");

/// FNV-1a 64-bit digest of a file's bytes, as 16 hex characters.
std::string file_digest_hex(const std::filesystem::path& file);

}  // namespace optiplan
