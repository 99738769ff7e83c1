#include "optiplan/config_io.hpp"

#include <cstdint>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "optiplan/errors.hpp"

namespace optiplan {

namespace {

using nlohmann::json;

[[noreturn]] void fail(std::string_view context, const std::string& what) {
  throw ValidationError(std::string(context) + ": " + what);
}

const json& require(const json& obj, const char* key, std::string_view context) {
  if (!obj.is_object() || !obj.contains(key)) {
    fail(context, std::string("missing required field '") + key + "'");
  }
  return obj.at(key);
}

double require_number(const json& obj, const char* key, std::string_view context) {
  const json& v = require(obj, key, context);
  if (!v.is_number()) fail(context, std::string("field '") + key + "' must be a number");
  return v.get<double>();
}

int require_int(const json& obj, const char* key, std::string_view context) {
  const json& v = require(obj, key, context);
  if (!v.is_number_integer()) fail(context, std::string("field '") + key + "' must be an integer");
  return v.get<int>();
}

std::string require_string(const json& obj, const char* key, std::string_view context) {
  const json& v = require(obj, key, context);
  if (!v.is_string()) fail(context, std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

double number_or(const json& obj, const char* key, double fallback) {
  if (obj.is_object() && obj.contains(key)) return obj.at(key).get<double>();
  return fallback;
}

std::string string_or(const json& obj, const char* key, const std::string& fallback) {
  if (obj.is_object() && obj.contains(key)) return obj.at(key).get<std::string>();
  return fallback;
}

void check_schema(const json& doc, std::string_view expected, std::string_view context) {
  const std::string schema = require_string(doc, "schema", context);
  if (schema != expected) {
    fail(context, "schema is '" + schema + "', expected '" + std::string(expected) + "'");
  }
}

json parse_document(std::string_view text, std::string_view context) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    fail(context, e.what());
  }
}

std::string read_file(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) {
    throw ValidationError("cannot open '" + file.string() + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::set<int> parse_channel_set(const json& arr, std::string_view context) {
  if (!arr.is_array()) fail(context, "channel list must be an array");
  std::set<int> channels;
  for (const auto& c : arr) {
    if (!c.is_number_integer()) fail(context, "channel numbers must be integers");
    channels.insert(c.get<int>());
  }
  return channels;
}

PassiveElement parse_element(const json& el, std::string_view context) {
  const std::string kind = require_string(el, "kind", context);
  PassiveElement parsed;
  if (kind == "star_coupler") {
    parsed = StarCoupler{require_int(el, "in_ports", context), require_int(el, "out_ports", context),
                         require_number(el, "excess_db", context)};
  } else if (kind == "awg") {
    const std::string dir = string_or(el, "direction", "demux");
    if (dir != "demux" && dir != "broadcast") {
      fail(context, "awg direction must be 'demux' or 'broadcast'");
    }
    parsed = Awg{require_int(el, "ports", context), require_number(el, "excess_db", context),
                 require_int(el, "base_channel", context),
                 dir == "demux" ? AwgDirection::kDemux : AwgDirection::kBroadcast};
  } else if (kind == "connector") {
    parsed = Connector{require_number(el, "loss_db", context), string_or(el, "label", "")};
  } else if (kind == "attenuator") {
    parsed = Attenuator{require_number(el, "loss_db", context)};
  } else if (kind == "fiber") {
    parsed = FiberSpan{require_number(el, "length_m", context),
                       require_number(el, "atten_db_per_km", context)};
  } else {
    fail(context, "unknown element kind '" + kind + "'");
  }
  try {
    validate_element(parsed);
  } catch (const ValidationError& e) {
    fail(context, e.what());
  }
  return parsed;
}

std::vector<PassiveElement> parse_elements(const json& arr, std::string_view context) {
  if (!arr.is_array()) fail(context, "elements must be an array");
  std::vector<PassiveElement> elements;
  std::size_t i = 0;
  for (const auto& el : arr) {
    elements.push_back(
        parse_element(el, std::string(context) + ".elements[" + std::to_string(i) + "]"));
    ++i;
  }
  return elements;
}

ModulationSpec parse_modulation(const json& obj, std::string_view context) {
  ModulationSpec spec;
  spec.average_power = PowerMw{require_number(obj, "average_power_mw", context)};
  spec.extinction_ratio_db = require_number(obj, "extinction_ratio_db", context);
  if (!(spec.extinction_ratio_db > 0.0)) {
    fail(context, "extinction_ratio_db must be > 0");
  }
  return spec;
}

TransmitterSpec parse_transmitter(const json& obj, std::string_view parent) {
  TransmitterSpec tx;
  tx.name = require_string(obj, "name", parent);
  const std::string context = std::string(parent) + ".transmitter '" + tx.name + "'";
  const json& tuning = require(obj, "tuning", context);
  if (tuning.is_object() && tuning.contains("fixed")) {
    const int channel = tuning.at("fixed").get<int>();
    tx.tuning = {channel};
    tx.current = channel;
  } else if (tuning.is_object() && tuning.contains("tunable")) {
    tx.tuning = parse_channel_set(tuning.at("tunable"), context);
    tx.current = require_int(obj, "current", context);
  } else {
    fail(context, "tuning must be {\"fixed\": n} or {\"tunable\": [...]}");
  }
  tx.launch = parse_modulation(require(obj, "launch", context), context + ".launch");
  tx.rate_gbps = require_number(obj, "rate_gbps", context);
  tx.electrical_power_mw = number_or(obj, "electrical_power_mw", 0.0);
  try {
    tx.validate();
  } catch (const ValidationError& e) {
    fail(context, e.what());
  }
  return tx;
}

ReceiverSpec parse_receiver(const json& obj, std::string_view parent) {
  ReceiverSpec rx;
  rx.name = require_string(obj, "name", parent);
  const std::string context = std::string(parent) + ".receiver '" + rx.name + "'";
  rx.detector = detector_from_string(require_string(obj, "detector", context));
  rx.sensitivity_dbm_at_1e12 = PowerDbm{require_number(obj, "sensitivity_dbm_at_1e12", context)};
  if (obj.contains("select_channels")) {
    rx.select_channels = parse_channel_set(obj.at("select_channels"), context);
  }
  return rx;
}

MediumCatalog parse_media_catalog(const json& arr, std::string_view context) {
  if (!arr.is_array()) fail(context, "media_catalog must be an array");
  MediumCatalog catalog;
  for (const auto& entry : arr) {
    MediumSpec spec;
    spec.name = require_string(entry, "name", context);
    spec.cls = medium_class_from_string(require_string(entry, "class", context));
    spec.bd_gbps_cm = require_number(entry, "bd_gbps_cm", context);
    spec.notes = string_or(entry, "notes", "");
    catalog.entries.push_back(std::move(spec));
  }
  try {
    catalog.validate();
  } catch (const ValidationError& e) {
    fail(context, e.what());
  }
  return catalog;
}

ScalingLedger parse_scaling(const json& obj, std::string_view context) {
  ScalingLedger ledger;
  ledger.base_ports = require_int(obj, "base_ports", context);
  ledger.base_margin_db = require_number(obj, "base_margin_db", context);
  ledger.min_margin_db = require_number(obj, "min_margin_db", context);
  if (obj.contains("excess_delta_db")) {
    const json& deltas = obj.at("excess_delta_db");
    if (!deltas.is_object()) fail(context, "excess_delta_db must be an object");
    for (const auto& [key, value] : deltas.items()) {
      try {
        ledger.excess_delta_db[std::stoi(key)] = value.get<double>();
      } catch (const std::exception&) {
        fail(context, "excess_delta_db keys must be integer port counts");
      }
    }
  }
  try {
    ledger.validate();
  } catch (const ValidationError& e) {
    fail(context, e.what());
  }
  return ledger;
}

}  // namespace

SystemConfig parse_system_config(std::string_view text, std::string_view context) {
  const json doc = parse_document(text, context);
  check_schema(doc, kSystemSchema, context);

  SystemConfig config;
  const json& grid = require(doc, "grid", context);
  config.grid.rows = require_int(grid, "rows", std::string(context) + ".grid");
  config.grid.cols = require_int(grid, "cols", std::string(context) + ".grid");
  config.grid.pitch_cm = require_number(grid, "pitch_cm", std::string(context) + ".grid");
  try {
    config.grid.validate();
  } catch (const ValidationError& e) {
    fail(context, e.what());
  }

  const json& rates = require(doc, "rates_gbps", context);
  if (!rates.is_array() || rates.empty()) {
    fail(context, "rates_gbps must be a non-empty array");
  }
  for (const auto& r : rates) config.rates_gbps.push_back(r.get<double>());

  config.electrical_bd_limit_gbps_cm =
      require_number(doc, "electrical_bd_limit_gbps_cm", context);
  if (!(config.electrical_bd_limit_gbps_cm > 0.0)) {
    fail(context, "electrical_bd_limit_gbps_cm must be > 0");
  }

  config.media_catalog = doc.contains("media_catalog")
                             ? parse_media_catalog(doc.at("media_catalog"),
                                                   std::string(context) + ".media_catalog")
                             : MediumCatalog::defaults();

  if (doc.contains("published_optical_fraction_pct")) {
    const json& published = doc.at("published_optical_fraction_pct");
    if (!published.is_object()) {
      fail(context, "published_optical_fraction_pct must map rate -> percent");
    }
    for (const auto& [key, value] : published.items()) {
      try {
        config.published_optical_fraction_pct[std::stod(key)] = value.get<double>();
      } catch (const std::exception&) {
        fail(context, "published_optical_fraction_pct keys must be numeric rates");
      }
    }
  }
  return config;
}

NetworkPlan parse_network_plan(std::string_view text, std::string_view context) {
  const json doc = parse_document(text, context);
  check_schema(doc, kNetworkSchema, context);

  NetworkPlan plan;
  const json& nodes = require(doc, "nodes", context);
  if (!nodes.is_array()) fail(context, "nodes must be an array");
  for (const auto& node_json : nodes) {
    NetworkNode node;
    node.name = require_string(node_json, "name", context);
    const std::string node_ctx = std::string(context) + ".node '" + node.name + "'";
    if (node_json.contains("transmitters")) {
      for (const auto& tx : node_json.at("transmitters")) {
        node.transmitters.push_back(parse_transmitter(tx, node_ctx));
      }
    }
    if (node_json.contains("tx_feed")) {
      node.tx_feed = parse_elements(node_json.at("tx_feed"), node_ctx + ".tx_feed");
    }
    if (node_json.contains("receivers")) {
      for (const auto& rx_json : node_json.at("receivers")) {
        ReceiverBranch branch;
        branch.receiver = parse_receiver(rx_json, node_ctx);
        if (rx_json.contains("filters")) {
          branch.filters = parse_elements(rx_json.at("filters"),
                                          node_ctx + ".receiver '" + branch.receiver.name + "'");
        }
        node.receivers.push_back(std::move(branch));
      }
    }
    plan.network.nodes.push_back(std::move(node));
  }
  const json& coupler = require(doc, "coupler", context);
  const PassiveElement coupler_el = parse_element(coupler, std::string(context) + ".coupler");
  if (!std::holds_alternative<StarCoupler>(coupler_el)) {
    fail(context, "coupler must be a star_coupler element");
  }
  plan.network.coupler = std::get<StarCoupler>(coupler_el);
  try {
    plan.network.validate();
  } catch (const ValidationError& e) {
    fail(context, e.what());
  }

  if (doc.contains("paths")) {
    const json& paths = doc.at("paths");
    if (!paths.is_array()) fail(context, "paths must be an array");
    for (const auto& path_json : paths) {
      OpticalPath path;
      path.name = require_string(path_json, "name", context);
      const std::string path_ctx = std::string(context) + ".path '" + path.name + "'";
      path.tx = parse_transmitter(require(path_json, "tx", path_ctx), path_ctx);
      path.elements = parse_elements(require(path_json, "elements", path_ctx), path_ctx);
      path.rx = parse_receiver(require(path_json, "rx", path_ctx), path_ctx);
      if (path_json.contains("published_margin_db")) {
        path.published_margin_db = path_json.at("published_margin_db").get<double>();
      }
      if (plan.find_path(path.name) != nullptr) {
        fail(context, "duplicate path name '" + path.name + "'");
      }
      plan.paths.push_back(std::move(path));
    }
  }

  if (doc.contains("ber_model")) {
    const json& model = doc.at("ber_model");
    plan.ber_model.q_at_sensitivity =
        QFactor{number_or(model, "q_at_sensitivity", plan.ber_model.q_at_sensitivity.value)};
    plan.ber_model.slope_exponent =
        number_or(model, "slope_exponent", plan.ber_model.slope_exponent);
    try {
      plan.ber_model.validate();
    } catch (const ValidationError& e) {
      fail(context, e.what());
    }
  }

  if (doc.contains("scaling")) {
    plan.scaling = parse_scaling(doc.at("scaling"), std::string(context) + ".scaling");
  }
  return plan;
}

MetricsCatalog parse_metrics_catalog(std::string_view text, std::string_view context) {
  const json doc = parse_document(text, context);
  check_schema(doc, kCatalogSchema, context);

  MetricsCatalog catalog;
  if (doc.contains("transceivers")) {
    for (const auto& rec_json : doc.at("transceivers")) {
      TransceiverRecord rec;
      rec.name = require_string(rec_json, "name", context);
      const std::string rec_ctx = std::string(context) + ".transceiver '" + rec.name + "'";
      if (rec_json.contains("wavelength_nm") && !rec_json.at("wavelength_nm").is_null()) {
        rec.wavelength_nm = rec_json.at("wavelength_nm").get<double>();
      }
      rec.lanes = require_int(rec_json, "lanes", rec_ctx);
      rec.rate_per_lane_gbps = require_number(rec_json, "rate_per_lane_gbps", rec_ctx);
      rec.total_power_mw = require_number(rec_json, "total_power_mw", rec_ctx);
      if (rec_json.contains("stated_pj_per_bit")) {
        rec.stated_pj_per_bit = rec_json.at("stated_pj_per_bit").get<double>();
      }
      if (rec_json.contains("reach_m")) rec.reach_m = rec_json.at("reach_m").get<double>();
      if (rec_json.contains("bd_per_lane_gbps_cm")) {
        rec.bd_per_lane_gbps_cm = rec_json.at("bd_per_lane_gbps_cm").get<double>();
      }
      if (rec_json.contains("cost_usd_per_gbps")) {
        const json& cost = rec_json.at("cost_usd_per_gbps");
        if (!cost.is_array() || cost.size() != 2) {
          fail(rec_ctx, "cost_usd_per_gbps must be [low, high]");
        }
        rec.cost_usd_per_gbps = {cost.at(0).get<double>(), cost.at(1).get<double>()};
      }
      if (rec_json.contains("projected_rate_gbps")) {
        rec.projected_rate_gbps = rec_json.at("projected_rate_gbps").get<double>();
      }
      if (rec_json.contains("stated_projected_pj_per_bit")) {
        rec.stated_projected_pj_per_bit =
            rec_json.at("stated_projected_pj_per_bit").get<double>();
      }
      rec.notes = string_or(rec_json, "notes", "");
      try {
        rec.validate();
      } catch (const ValidationError& e) {
        fail(context, e.what());
      }
      catalog.transceivers.push_back(std::move(rec));
    }
  }
  if (doc.contains("connectors")) {
    for (const auto& rec_json : doc.at("connectors")) {
      ConnectorDensityRecord rec;
      rec.name = require_string(rec_json, "name", context);
      const std::string rec_ctx = std::string(context) + ".connector '" + rec.name + "'";
      rec.channels_per_fiber = require_int(rec_json, "channels_per_fiber", rec_ctx);
      rec.fibers = require_int(rec_json, "fibers", rec_ctx);
      rec.rate_gbps = require_number(rec_json, "rate_gbps", rec_ctx);
      rec.width_mm = require_number(rec_json, "width_mm", rec_ctx);
      rec.height_mm = require_number(rec_json, "height_mm", rec_ctx);
      if (rec_json.contains("stated_density_gbps_mm2")) {
        rec.stated_density_gbps_mm2 = rec_json.at("stated_density_gbps_mm2").get<double>();
      }
      try {
        rec.validate();
      } catch (const ValidationError& e) {
        fail(context, e.what());
      }
      catalog.connectors.push_back(std::move(rec));
    }
  }
  if (doc.contains("power_breakdown")) {
    PowerBreakdown breakdown;
    for (const auto& [block, fraction] : doc.at("power_breakdown").items()) {
      breakdown.blocks[block] = fraction.get<double>();
    }
    try {
      breakdown.validate();
    } catch (const ValidationError& e) {
      fail(context, e.what());
    }
    catalog.power_breakdown = std::move(breakdown);
  }
  if (catalog.transceivers.empty() && catalog.connectors.empty()) {
    fail(context, "catalog has no transceiver or connector records");
  }
  return catalog;
}

const OpticalPath* NetworkPlan::find_path(std::string_view name) const {
  for (const auto& path : paths) {
    if (path.name == name) return &path;
  }
  return nullptr;
}

SystemConfig load_system_config(const std::filesystem::path& file) {
  return parse_system_config(read_file(file), file.string());
}

NetworkPlan load_network_plan(const std::filesystem::path& file) {
  return parse_network_plan(read_file(file), file.string());
}

MetricsCatalog load_metrics_catalog(const std::filesystem::path& file) {
  return parse_metrics_catalog(read_file(file), file.string());
}

std::string file_digest_hex(const std::filesystem::path& file) {
  const std::string bytes = read_file(file);
  std::uint64_t hash = 0xcbf29ce484222325ull;
  for (unsigned char byte : bytes) {
    hash ^= byte;
    hash *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

}  // namespace optiplan
