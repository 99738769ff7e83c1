#pragma once

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "optiplan/power_math.hpp"

namespace optiplan {

/// 100 GHz ITU grid channel: frequency = 190.0 + 0.1 * index THz.
struct ItuChannel {
  int index = 0;

  static constexpr double kGridBaseThz = 190.0;
  static constexpr double kSpacingThz = 0.1;
};

double channel_frequency_thz(ItuChannel c);
double channel_wavelength_nm(ItuChannel c);

/// All grid channels whose wavelength lies in [lo_nm, hi_nm].
std::set<int> channels_in_band(double lo_nm, double hi_nm);

/// One laser: fixed to a single channel or tunable over a channel set.
struct TransmitterSpec {
  std::string name;
  std::set<int> tuning;  // allowed channels; a single entry means fixed
  int current = 0;       // must be a member of tuning
  ModulationSpec launch;
  double rate_gbps = 0.0;
  double electrical_power_mw = 0.0;

  bool tunable() const { return tuning.size() > 1; }
  void validate() const;
};

enum class DetectorType { kApd, kPin };

std::string_view to_string(DetectorType d);
DetectorType detector_from_string(std::string_view s);

struct ReceiverSpec {
  std::string name;
  DetectorType detector = DetectorType::kPin;
  PowerDbm sensitivity_dbm_at_1e12;  // minimum OMA for BER 1e-12
  std::set<int> select_channels;     // channels this receiver's filter admits
};

// Passive chain elements. Loss semantics live in link_budget.

struct StarCoupler {
  int in_ports = 0;
  int out_ports = 0;
  double excess_db = 0.0;
};

enum class AwgDirection { kDemux, kBroadcast };

/// Cyclic router: channel c exits port (c - base_channel) mod ports.
struct Awg {
  int ports = 0;
  double excess_db = 0.0;
  int base_channel = 0;
  AwgDirection direction = AwgDirection::kDemux;
};

struct Connector {
  double loss_db = 0.0;
  std::string label;
};

struct Attenuator {
  double loss_db = 0.0;
};

struct FiberSpan {
  double length_m = 0.0;
  double atten_db_per_km = 0.0;
};

using PassiveElement = std::variant<StarCoupler, Awg, Connector, Attenuator, FiberSpan>;

void validate_element(const PassiveElement& e);

/// A node's receive branch: detector plus its wavelength-selection chain.
struct ReceiverBranch {
  ReceiverSpec receiver;
  std::vector<PassiveElement> filters;
};

struct NetworkNode {
  std::string name;
  std::vector<TransmitterSpec> transmitters;
  std::vector<PassiveElement> tx_feed;  // segment from transmitters to the coupler input
  std::vector<ReceiverBranch> receivers;
};

/// The broadcast domain: every transmitter feeds a coupler input, the coupler
/// broadcasts every channel to every output, and each receiver filters what it
/// wants. Values are immutable once constructed; retuning makes a new value.
struct BroadcastNetwork {
  std::vector<NetworkNode> nodes;
  StarCoupler coupler;

  void validate() const;
  const TransmitterSpec* find_transmitter(std::string_view name) const;

  /// Copy of the network with the named transmitter set to `channel`.
  BroadcastNetwork retuned(std::string_view transmitter, int channel) const;
};

/// Every transmitter's current channel: channel -> transmitter names, in
/// network declaration order.
std::map<int, std::vector<std::string>> active_channel_assignments(const BroadcastNetwork& net);

/// Channels driven by two or more transmitters at once.
std::vector<std::pair<int, std::vector<std::string>>> detect_collisions(
    const BroadcastNetwork& net);

/// Channels in `range` not used by any transmitter other than `querying_tx`
/// (a tunable transmitter may retune onto its own current channel).
std::set<int> free_channels(const BroadcastNetwork& net, const std::set<int>& range,
                            std::string_view querying_tx = {});

/// Output port for a channel through a cyclic AWG.
int awg_route(ItuChannel c, const Awg& awg);

struct ReceiverReach {
  std::string node;
  std::string receiver;
  std::set<std::string> transmitters;       // transmitter names heard
  std::set<std::string> transmitter_nodes;  // owning node names
};

/// Who hears whom: a receiver hears a transmitter iff the transmitter's
/// channel is in the receiver's select set. Throws CollisionError if any
/// channel is driven twice.
std::vector<ReceiverReach> reachability(const BroadcastNetwork& net);

}  // namespace optiplan
