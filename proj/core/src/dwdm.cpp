#include "optiplan/dwdm.hpp"

#include <algorithm>
#include <cmath>

#include "optiplan/errors.hpp"

namespace optiplan {

namespace {

constexpr double kSpeedOfLightNmThz = 299792.458;  // c in nm*THz

}  // namespace

double channel_frequency_thz(ItuChannel c) {
  const double f = ItuChannel::kGridBaseThz + ItuChannel::kSpacingThz * c.index;
  if (!(f > 0.0)) {
    throw ValidationError("channel frequency must be > 0 THz");
  }
  return f;
}

double channel_wavelength_nm(ItuChannel c) {
  return kSpeedOfLightNmThz / channel_frequency_thz(c);
}

std::set<int> channels_in_band(double lo_nm, double hi_nm) {
  if (!(lo_nm > 0.0)) {
    throw ValidationError("band edges must be positive wavelengths");
  }
  if (!(lo_nm < hi_nm)) {
    return {};
  }
  // Wavelength decreases with index; bracket the index range then keep exact hits.
  const double f_lo = kSpeedOfLightNmThz / hi_nm;
  const double f_hi = kSpeedOfLightNmThz / lo_nm;
  if ((f_hi - f_lo) / ItuChannel::kSpacingThz > 1e6) {
    throw ValidationError("band spans more than 1e6 grid channels");
  }
  const int n_lo = static_cast<int>(
      std::floor((f_lo - ItuChannel::kGridBaseThz) / ItuChannel::kSpacingThz)) - 1;
  const int n_hi = static_cast<int>(
      std::ceil((f_hi - ItuChannel::kGridBaseThz) / ItuChannel::kSpacingThz)) + 1;
  std::set<int> out;
  for (int n = n_lo; n <= n_hi; ++n) {
    const ItuChannel c{n};
    if (ItuChannel::kGridBaseThz + ItuChannel::kSpacingThz * n <= 0.0) continue;
    const double wl = channel_wavelength_nm(c);
    if (wl >= lo_nm && wl <= hi_nm) {
      out.insert(n);
    }
  }
  return out;
}

void TransmitterSpec::validate() const {
  if (tuning.empty()) {
    throw ValidationError("transmitter '" + name + "' has no allowed channels");
  }
  if (!tuning.contains(current)) {
    throw ValidationError("transmitter '" + name + "' current channel " +
                          std::to_string(current) + " outside its tuning set");
  }
  if (!(launch.extinction_ratio_db > 0.0)) {
    throw ValidationError("transmitter '" + name + "' needs extinction ratio > 0 dB");
  }
}

std::string_view to_string(DetectorType d) {
  return d == DetectorType::kApd ? "APD" : "PIN";
}

DetectorType detector_from_string(std::string_view s) {
  if (s == "APD" || s == "apd") return DetectorType::kApd;
  if (s == "PIN" || s == "pin") return DetectorType::kPin;
  throw ValidationError("unknown detector type '" + std::string(s) + "'");
}

void validate_element(const PassiveElement& e) {
  std::visit(
      [](const auto& el) {
        using T = std::decay_t<decltype(el)>;
        if constexpr (std::is_same_v<T, StarCoupler>) {
          if (el.in_ports < 1 || el.out_ports < 1) {
            throw ValidationError("star coupler needs at least one port per side");
          }
          if (el.excess_db < 0.0) throw ValidationError("coupler excess loss must be >= 0");
        } else if constexpr (std::is_same_v<T, Awg>) {
          if (el.ports < 1) throw ValidationError("AWG needs at least one port");
          if (el.excess_db < 0.0) throw ValidationError("AWG excess loss must be >= 0");
        } else if constexpr (std::is_same_v<T, Connector>) {
          if (el.loss_db < 0.0) throw ValidationError("connector loss must be >= 0");
        } else if constexpr (std::is_same_v<T, Attenuator>) {
          if (el.loss_db < 0.0) throw ValidationError("attenuator loss must be >= 0");
        } else if constexpr (std::is_same_v<T, FiberSpan>) {
          if (el.length_m < 0.0 || el.atten_db_per_km < 0.0) {
            throw ValidationError("fiber span length and attenuation must be >= 0");
          }
        }
      },
      e);
}

void BroadcastNetwork::validate() const {
  validate_element(PassiveElement{coupler});
  std::set<std::string_view> tx_names;
  for (const auto& node : nodes) {
    for (const auto& tx : node.transmitters) {
      tx.validate();
      if (!tx_names.insert(tx.name).second) {
        throw ValidationError("duplicate transmitter name '" + tx.name + "'");
      }
    }
    for (const auto& el : node.tx_feed) validate_element(el);
    for (const auto& branch : node.receivers) {
      for (const auto& el : branch.filters) validate_element(el);
    }
  }
}

const TransmitterSpec* BroadcastNetwork::find_transmitter(std::string_view name) const {
  for (const auto& node : nodes) {
    for (const auto& tx : node.transmitters) {
      if (tx.name == name) return &tx;
    }
  }
  return nullptr;
}

BroadcastNetwork BroadcastNetwork::retuned(std::string_view transmitter, int channel) const {
  BroadcastNetwork copy = *this;
  for (auto& node : copy.nodes) {
    for (auto& tx : node.transmitters) {
      if (tx.name == transmitter) {
        if (!tx.tuning.contains(channel)) {
          throw ValidationError("transmitter '" + tx.name + "' cannot tune to channel " +
                                std::to_string(channel));
        }
        tx.current = channel;
        return copy;
      }
    }
  }
  throw UnknownReferenceError("no transmitter named '" + std::string(transmitter) + "'");
}

std::map<int, std::vector<std::string>> active_channel_assignments(const BroadcastNetwork& net) {
  std::map<int, std::vector<std::string>> assignments;
  for (const auto& node : net.nodes) {
    for (const auto& tx : node.transmitters) {
      assignments[tx.current].push_back(tx.name);
    }
  }
  return assignments;
}

std::vector<std::pair<int, std::vector<std::string>>> detect_collisions(
    const BroadcastNetwork& net) {
  std::vector<std::pair<int, std::vector<std::string>>> collisions;
  for (auto& [channel, txs] : active_channel_assignments(net)) {
    if (txs.size() >= 2) {
      collisions.emplace_back(channel, txs);
    }
  }
  return collisions;
}

std::set<int> free_channels(const BroadcastNetwork& net, const std::set<int>& range,
                            std::string_view querying_tx) {
  std::set<int> free = range;
  for (const auto& node : net.nodes) {
    for (const auto& tx : node.transmitters) {
      if (!querying_tx.empty() && tx.name == querying_tx) continue;
      free.erase(tx.current);
    }
  }
  return free;
}

int awg_route(ItuChannel c, const Awg& awg) {
  validate_element(PassiveElement{awg});
  const int offset = (c.index - awg.base_channel) % awg.ports;
  return offset < 0 ? offset + awg.ports : offset;
}

std::vector<ReceiverReach> reachability(const BroadcastNetwork& net) {
  const auto collisions = detect_collisions(net);
  if (!collisions.empty()) {
    std::string what = "channel collision on";
    std::vector<int> channels;
    for (const auto& [channel, txs] : collisions) {
      what += " " + std::to_string(channel);
      channels.push_back(channel);
    }
    throw CollisionError(what, channels);
  }

  // The star coupler broadcasts every input channel to every output, so a
  // receiver's reach is exactly the transmitters on its selected channels.
  std::vector<ReceiverReach> result;
  for (const auto& rx_node : net.nodes) {
    for (const auto& branch : rx_node.receivers) {
      ReceiverReach reach;
      reach.node = rx_node.name;
      reach.receiver = branch.receiver.name;
      for (const auto& tx_node : net.nodes) {
        for (const auto& tx : tx_node.transmitters) {
          if (branch.receiver.select_channels.contains(tx.current)) {
            reach.transmitters.insert(tx.name);
            reach.transmitter_nodes.insert(tx_node.name);
          }
        }
      }
      result.push_back(std::move(reach));
    }
  }
  return result;
}

}  // namespace optiplan
