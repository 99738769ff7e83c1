#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "optiplan/dwdm.hpp"
#include "optiplan/errors.hpp"

using namespace optiplan;

namespace {

TransmitterSpec fixed_tx(std::string name, int channel) {
  TransmitterSpec tx;
  tx.name = std::move(name);
  tx.tuning = {channel};
  tx.current = channel;
  tx.launch = {PowerMw{1.5}, 16.2};
  tx.rate_gbps = 10.0;
  return tx;
}

ReceiverBranch rx_branch(std::string name, std::set<int> select) {
  ReceiverBranch branch;
  branch.receiver.name = std::move(name);
  branch.receiver.detector = DetectorType::kApd;
  branch.receiver.sensitivity_dbm_at_1e12 = PowerDbm{-26.5};
  branch.receiver.select_channels = std::move(select);
  return branch;
}

// The four-node working plan: fixed channels 33, 34, {30,31,32,37} and one
// tunable transmitter parked on 35.
BroadcastNetwork four_node_network() {
  BroadcastNetwork net;
  net.coupler = StarCoupler{4, 4, 1.75};

  NetworkNode n1{"node1", {fixed_tx("node1.tx", 33)}, {}, {rx_branch("node1.rx", {30})}};
  NetworkNode n2{"node2", {fixed_tx("node2.tx", 34)}, {}, {rx_branch("node2.rx", {31})}};

  TransmitterSpec tunable;
  tunable.name = "node3.tx";
  tunable.tuning = {30, 31, 32, 33, 34, 35, 36, 37};
  tunable.current = 35;
  tunable.launch = {PowerMw{1.5}, 16.2};
  tunable.rate_gbps = 10.0;
  NetworkNode n3{"node3", {tunable}, {}, {rx_branch("node3.rx", {30, 31, 32, 33, 34, 35, 36, 37})}};

  NetworkNode n4{"node4",
                 {fixed_tx("node4.tx30", 30), fixed_tx("node4.tx31", 31),
                  fixed_tx("node4.tx32", 32), fixed_tx("node4.tx37", 37)},
                 {Awg{8, 3.68, 30, AwgDirection::kDemux}},
                 {rx_branch("node4.rx", {32, 34, 35})}};

  net.nodes = {n1, n2, n3, n4};
  net.validate();
  return net;
}

}  // namespace

TEST_CASE("channel frequencies") {
  CHECK(channel_frequency_thz({30}) == doctest::Approx(193.0));
  CHECK(channel_frequency_thz({0}) == doctest::Approx(190.0));
  CHECK(channel_frequency_thz({37}) == doctest::Approx(193.7));
  CHECK_THROWS_AS(channel_frequency_thz({-2000}), ValidationError);
}

TEST_CASE("channel wavelengths match the published plan") {
  const std::pair<int, double> plan[] = {
      {30, 1553.33}, {31, 1552.52}, {32, 1551.72}, {33, 1550.92},
      {34, 1550.12}, {35, 1549.32}, {37, 1547.72},
  };
  for (const auto& [channel, wavelength] : plan) {
    CHECK(std::abs(channel_wavelength_nm({channel}) - wavelength) < 0.01);
  }
}

TEST_CASE("grid consistency") {
  for (int n = -100; n < 100; ++n) {
    CHECK(channel_wavelength_nm({n}) > channel_wavelength_nm({n + 1}));
    CHECK(channel_frequency_thz({n + 1}) - channel_frequency_thz({n}) ==
          doctest::Approx(0.1).epsilon(1e-12));
  }
}

TEST_CASE("channels in band") {
  CHECK(channels_in_band(1547.0, 1554.0) ==
        std::set<int>{30, 31, 32, 33, 34, 35, 36, 37});
  CHECK(channels_in_band(1550.0, 1550.0).empty());
  // 100 GHz grid arithmetic puts 50 channels in 1525-1565 nm
  // (indices 16 through 65), well short of the ~80 sometimes cited.
  const auto c_band = channels_in_band(1525.0, 1565.0);
  CHECK(c_band.size() == 50);
  CHECK(*c_band.begin() == 16);
  CHECK(*c_band.rbegin() == 65);
  // edges: channel 16 is just inside, 15 just outside
  CHECK(channel_wavelength_nm({16}) <= 1565.0);
  CHECK(channel_wavelength_nm({15}) > 1565.0);

  CHECK_THROWS_AS(channels_in_band(0.0, 1550.0), ValidationError);
  CHECK_THROWS_AS(channels_in_band(1e-6, 1e9), ValidationError);
}

TEST_CASE("active assignments for the working plan") {
  const auto net = four_node_network();
  const auto assignments = active_channel_assignments(net);
  REQUIRE(assignments.size() == 7);
  CHECK(assignments.at(30) == std::vector<std::string>{"node4.tx30"});
  CHECK(assignments.at(31) == std::vector<std::string>{"node4.tx31"});
  CHECK(assignments.at(32) == std::vector<std::string>{"node4.tx32"});
  CHECK(assignments.at(33) == std::vector<std::string>{"node1.tx"});
  CHECK(assignments.at(34) == std::vector<std::string>{"node2.tx"});
  CHECK(assignments.at(35) == std::vector<std::string>{"node3.tx"});
  CHECK(assignments.at(37) == std::vector<std::string>{"node4.tx37"});

  CHECK(active_channel_assignments(BroadcastNetwork{{}, {1, 1, 0.0}}).empty());
}

TEST_CASE("collision detection") {
  const auto net = four_node_network();
  CHECK(detect_collisions(net).empty());

  const auto clashed = net.retuned("node3.tx", 33);
  const auto collisions = detect_collisions(clashed);
  REQUIRE(collisions.size() == 1);
  CHECK(collisions[0].first == 33);
  CHECK(collisions[0].second == std::vector<std::string>{"node1.tx", "node3.tx"});

  BroadcastNetwork lone{{{"solo", {fixed_tx("solo.tx", 33)}, {}, {}}}, {1, 1, 0.0}};
  CHECK(detect_collisions(lone).empty());
}

TEST_CASE("free channels") {
  const auto net = four_node_network();
  const std::set<int> range{30, 31, 32, 33, 34, 35, 36, 37};
  CHECK(free_channels(net, range, "node3.tx") == std::set<int>{35, 36});
  // without the self-exclusion, the parked channel is counted as busy
  CHECK(free_channels(net, range) == std::set<int>{36});
  CHECK(free_channels(BroadcastNetwork{{}, {1, 1, 0.0}}, range) == range);

  auto full = net;
  full.nodes[2].transmitters[0].current = 36;
  full.nodes.push_back({"node5", {fixed_tx("node5.tx", 35)}, {}, {}});
  CHECK(free_channels(full, range).empty());
}

TEST_CASE("awg routing") {
  const Awg awg{8, 2.5, 30, AwgDirection::kDemux};
  CHECK(awg_route({30}, awg) == 0);
  CHECK(awg_route({35}, awg) == 5);
  CHECK(awg_route({38}, awg) == 0);  // cyclic wrap
  CHECK(awg_route({29}, awg) == 7);  // wraps below the base as well
  CHECK_THROWS_AS(awg_route({30}, Awg{0, 0.0, 30, AwgDirection::kDemux}), ValidationError);
}

TEST_CASE("awg cyclic reciprocity") {
  const Awg awg{8, 2.5, 30, AwgDirection::kDemux};
  for (int port = 0; port < awg.ports; ++port) {
    // demux then mux through the same device lands back on the origin port
    CHECK(awg_route({awg.base_channel + port}, awg) == port);
    for (int k = -3; k <= 3; ++k) {
      CHECK(awg_route({awg.base_channel + port + k * awg.ports}, awg) == port);
    }
  }
}

TEST_CASE("reachability reproduces the receiver plan") {
  const auto net = four_node_network();
  const auto reach = reachability(net);
  REQUIRE(reach.size() == 4);

  CHECK(reach[0].node == "node1");
  CHECK(reach[0].transmitter_nodes == std::set<std::string>{"node4"});
  CHECK(reach[0].transmitters == std::set<std::string>{"node4.tx30"});

  CHECK(reach[1].transmitter_nodes == std::set<std::string>{"node4"});

  CHECK(reach[2].transmitter_nodes ==
        std::set<std::string>{"node1", "node2", "node3", "node4"});

  CHECK(reach[3].node == "node4");
  CHECK(reach[3].transmitter_nodes == std::set<std::string>{"node2", "node3", "node4"});
  CHECK(reach[3].transmitters ==
        std::set<std::string>{"node2.tx", "node3.tx", "node4.tx32"});
}

TEST_CASE("reachability refuses colliding plans") {
  const auto clashed = four_node_network().retuned("node3.tx", 33);
  try {
    reachability(clashed);
    FAIL("expected CollisionError");
  } catch (const CollisionError& e) {
    CHECK(e.channels() == std::vector<int>{33});
  }
}

TEST_CASE("broadcast closure: an all-channel receiver hears every transmitter") {
  auto net = four_node_network();
  net.nodes[0].receivers.push_back(
      rx_branch("node1.rx-monitor", {30, 31, 32, 33, 34, 35, 36, 37}));
  const auto reach = reachability(net);
  const auto assignments = active_channel_assignments(net);
  std::size_t tx_count = 0;
  for (const auto& [channel, txs] : assignments) tx_count += txs.size();
  CHECK(reach[1].transmitters.size() == tx_count);

  ReceiverReach deaf;
  for (const auto& r : reach) {
    if (r.receiver == "node1.rx-monitor") deaf = r;
  }
  CHECK(deaf.transmitters.size() == 7);
}

TEST_CASE("empty select set hears nothing") {
  auto net = four_node_network();
  net.nodes[0].receivers[0].receiver.select_channels.clear();
  const auto reach = reachability(net);
  CHECK(reach[0].transmitters.empty());
}

TEST_CASE("retuning") {
  const auto net = four_node_network();
  CHECK_THROWS_AS(net.retuned("node1.tx", 34), ValidationError);  // fixed tx cannot move
  CHECK_THROWS_AS(net.retuned("ghost.tx", 34), UnknownReferenceError);
  const auto moved = net.retuned("node3.tx", 36);
  CHECK(moved.find_transmitter("node3.tx")->current == 36);
  CHECK(net.find_transmitter("node3.tx")->current == 35);  // original untouched
}

TEST_CASE("transmitter and network validation") {
  TransmitterSpec bad;
  bad.name = "bad";
  bad.tuning = {30, 31};
  bad.current = 35;
  bad.launch = {PowerMw{1.0}, 6.0};
  CHECK_THROWS_AS(bad.validate(), ValidationError);

  TransmitterSpec no_channels;
  no_channels.name = "none";
  no_channels.launch = {PowerMw{1.0}, 6.0};
  CHECK_THROWS_AS(no_channels.validate(), ValidationError);

  auto net = four_node_network();
  net.nodes[1].transmitters[0].name = "node1.tx";  // duplicate
  CHECK_THROWS_AS(net.validate(), ValidationError);
}
