// optiplan: batch planner for highly-interconnected electrical/optical fabrics.
//
// Exit codes: 0 success, 2 input/schema error, 3 channel collision,
// 4 unknown reference, 5 infeasible budget.

#include <cmath>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "optiplan/config_io.hpp"
#include "optiplan/errors.hpp"
#include "optiplan/link_budget.hpp"
#include "optiplan/media.hpp"
#include "optiplan/metrics.hpp"
#include "optiplan/report.hpp"
#include "optiplan/topology.hpp"

namespace {

using namespace optiplan;

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitCollision = 3;
constexpr int kExitUnknownRef = 4;
constexpr int kExitInfeasible = 5;

struct OutputOptions {
  std::string format = "text";
  std::string out_dir;
};

std::string join_args(int argc, char** argv) {
  std::string joined;
  for (int i = 1; i < argc; ++i) {
    if (i > 1) joined += ' ';
    joined += argv[i];
  }
  return joined;
}

std::string join_set(const std::set<int>& values) {
  std::string out;
  for (int v : values) {
    if (!out.empty()) out += ' ';
    out += std::to_string(v);
  }
  return out;
}

std::string join_set(const std::set<std::string>& values) {
  std::string out;
  for (const auto& v : values) {
    if (!out.empty()) out += ' ';
    out += v;
  }
  return out;
}

std::string join_names(const std::vector<std::string>& values) {
  std::string out;
  for (const auto& v : values) {
    if (!out.empty()) out += ' ';
    out += v;
  }
  return out;
}

void emit(const Report& report, const OutputOptions& opts, const std::string& command) {
  if (opts.format == "csv") {
    if (const Table* primary = report.primary_table()) {
      std::cout << render_csv(*primary);
    }
  } else {
    std::cout << render_text(report);
  }
  if (!opts.out_dir.empty()) {
    const std::filesystem::path dir(opts.out_dir);
    std::filesystem::create_directories(dir);
    write_file_atomic(dir / (command + "_report.txt"), render_text(report));
    for (const auto& table : report.tables) {
      write_file_atomic(dir / (command + "_" + table.slug + ".csv"), render_csv(table));
    }
  }
}

Report make_report(const std::string& echo, const std::string& input) {
  Report report;
  report.command = echo;
  report.input_path = input;
  report.input_digest = file_digest_hex(input);
  return report;
}

int run_topology(const std::string& echo, const std::string& config_file,
                 const OutputOptions& opts) {
  const SystemConfig config = load_system_config(config_file);
  Report report = make_report(echo, config_file);
  report.primary_slug = "histogram";

  const LengthHistogram hist = length_histogram(config.grid);
  Table histogram{"link-length histogram", "histogram", {"length_cm", "count"}, {}};
  for (const auto& [length, count] : hist.bins) {
    histogram.rows.push_back({fmt_number(length), fmt_count(count)});
  }
  report.tables.push_back(std::move(histogram));
  if (hist.total == 0) {
    report.notes.push_back("grid has a single node; an all-to-all fabric needs none");
  }

  const auto table =
      crossover_table(config.grid, config.rates_gbps, config.electrical_bd_limit_gbps_cm);
  Table crossover{"electrical/optical split",
                  "crossover",
                  {"rate_gbps", "electrical_count", "optical_count", "computed_optical_pct",
                   "published_optical_pct", "max_electrical_reach_cm"},
                  {}};
  for (const auto& row : table) {
    const MediumSpec limit_medium{"bd-limit", MediumClass::kElectricalPcb,
                                  row.bd_limit_gbps_cm, ""};
    std::string published = "-";
    const auto it = config.published_optical_fraction_pct.find(row.rate_gbps);
    if (it != config.published_optical_fraction_pct.end()) {
      published = fmt_number(it->second);
      if (std::abs(row.optical_fraction * 100.0 - it->second) > 1.0) {
        report.notes.push_back(
            "at " + fmt_number(row.rate_gbps) + " Gbps the computed optical fraction " +
            fmt_fixed(row.optical_fraction * 100.0, 1) + "% differs from the published " +
            fmt_number(it->second) + "%; the pure Manhattan-length B*d model does not" +
            " reproduce that figure");
      }
    }
    crossover.rows.push_back({fmt_number(row.rate_gbps), fmt_count(row.electrical_count),
                              fmt_count(row.optical_count),
                              fmt_fixed(row.optical_fraction * 100.0, 2), published,
                              fmt_number(max_reach_cm(limit_medium, row.rate_gbps))});
  }
  report.tables.push_back(std::move(crossover));

  Table media{"media catalog",
              "media",
              {"name", "class", "bd_gbps_cm", "notes"},
              {}};
  for (const auto& medium : config.media_catalog.entries) {
    media.rows.push_back({medium.name, std::string(to_string(medium.cls)),
                          fmt_number(medium.bd_gbps_cm), medium.notes});
  }
  report.tables.push_back(std::move(media));

  emit(report, opts, "topology");
  return kExitOk;
}

int run_plan(const std::string& echo, const std::string& network_file,
             const OutputOptions& opts) {
  const NetworkPlan plan = load_network_plan(network_file);
  const BroadcastNetwork& net = plan.network;
  Report report = make_report(echo, network_file);
  report.primary_slug = "reachability";

  Table assignments{"channel assignments",
                    "assignments",
                    {"channel", "frequency_thz", "computed_wavelength_nm", "transmitters"},
                    {}};
  for (const auto& [channel, txs] : active_channel_assignments(net)) {
    const ItuChannel c{channel};
    assignments.rows.push_back({std::to_string(channel), fmt_fixed(channel_frequency_thz(c), 1),
                                fmt_fixed(channel_wavelength_nm(c), 2), join_names(txs)});
  }
  report.tables.push_back(std::move(assignments));

  const auto collisions = detect_collisions(net);
  Table collision_table{"collisions", "collisions", {"channel", "transmitters"}, {}};
  for (const auto& [channel, txs] : collisions) {
    collision_table.rows.push_back({std::to_string(channel), join_names(txs)});
  }
  report.tables.push_back(std::move(collision_table));

  if (!collisions.empty()) {
    for (const auto& [channel, txs] : collisions) {
      report.notes.push_back("collision on channel " + std::to_string(channel) + " between " +
                             join_names(txs));
    }
    emit(report, opts, "plan");
    return kExitCollision;
  }

  Table reach_table{"reachability",
                    "reachability",
                    {"node", "receiver", "select_channels", "hears_nodes", "hears_transmitters"},
                    {}};
  for (const auto& reach : reachability(net)) {
    const ReceiverBranch* branch = nullptr;
    for (const auto& node : net.nodes) {
      if (node.name != reach.node) continue;
      for (const auto& b : node.receivers) {
        if (b.receiver.name == reach.receiver) branch = &b;
      }
    }
    reach_table.rows.push_back({reach.node, reach.receiver,
                                branch ? join_set(branch->receiver.select_channels) : "",
                                join_set(reach.transmitter_nodes),
                                join_set(reach.transmitters)});
  }
  report.tables.push_back(std::move(reach_table));

  Table free_table{"tunable transmitters: free channels",
                   "free_channels",
                   {"transmitter", "node", "tuning_range", "free_channels"},
                   {}};
  for (const auto& node : net.nodes) {
    for (const auto& tx : node.transmitters) {
      if (!tx.tunable()) continue;
      free_table.rows.push_back({tx.name, node.name, join_set(tx.tuning),
                                 join_set(free_channels(net, tx.tuning, tx.name))});
    }
  }
  report.tables.push_back(std::move(free_table));

  emit(report, opts, "plan");
  return kExitOk;
}

const OpticalPath& find_path_or_throw(const NetworkPlan& plan, const std::string& name) {
  const OpticalPath* path = plan.find_path(name);
  if (path == nullptr) {
    throw UnknownReferenceError("no path named '" + name + "' in the plan");
  }
  return *path;
}

int run_budget(const std::string& echo, const std::string& network_file,
               const std::string& path_name, const OutputOptions& opts) {
  const NetworkPlan plan = load_network_plan(network_file);
  const OpticalPath& path = find_path_or_throw(plan, path_name);
  const BudgetReport budget = compute_budget(path);

  Report report = make_report(echo, network_file);
  report.primary_slug = "budget";

  Table ledger{"power ledger: " + path.name, "budget", {"stage", "loss_db", "power_dbm"}, {}};
  ledger.rows.push_back({"launch", fmt_db(0.0), fmt_db(budget.launch_oma_dbm.value)});
  for (const auto& stage : budget.stages) {
    ledger.rows.push_back({stage.element, fmt_db(stage.loss_db), fmt_db(stage.power_dbm)});
  }
  report.tables.push_back(std::move(ledger));

  Table margin{"margin",
               "margin",
               {"path", "received_dbm", "sensitivity_dbm", "computed_margin_db",
                "published_margin_db", "feasible"},
               {{path.name, fmt_db(budget.received_oma_dbm.value),
                 fmt_db(path.rx.sensitivity_dbm_at_1e12.value), fmt_db(budget.margin_db),
                 path.published_margin_db ? fmt_number(*path.published_margin_db) : "-",
                 budget.feasible() ? "yes" : "no"}}};
  report.tables.push_back(std::move(margin));
  if (path.published_margin_db &&
      std::abs(budget.margin_db - *path.published_margin_db) > 0.05) {
    report.notes.push_back("computed margin " + fmt_db(budget.margin_db) +
                           " dB differs from the published " +
                           fmt_number(*path.published_margin_db) + " dB");
  }

  report.notes.push_back("budget is OMA-referenced; transmitter average power " +
                         fmt_number(path.tx.launch.average_power.value) + " mW, extinction ratio " +
                         fmt_number(path.tx.launch.extinction_ratio_db) + " dB");
  report.notes.push_back(std::string("receiver: ") + std::string(to_string(path.rx.detector)) +
                         ", sensitivity " + fmt_db(path.rx.sensitivity_dbm_at_1e12.value) +
                         " dBm at BER 1e-12");
  if (!budget.feasible()) {
    report.notes.push_back("negative margin: link infeasible as configured");
  }

  emit(report, opts, "budget");
  return kExitOk;
}

int run_sweep(const std::string& echo, const std::string& network_file,
              const std::string& path_name, const std::string& atten_spec,
              const OutputOptions& opts) {
  double start = 0.0, stop = 0.0, step = 0.0;
  {
    std::istringstream in(atten_spec);
    char sep1 = 0, sep2 = 0;
    if (!(in >> start >> sep1 >> stop >> sep2 >> step) || sep1 != ':' || sep2 != ':' ||
        !in.eof()) {
      throw ValidationError("--atten must be start:stop:step, e.g. 0:30:0.5");
    }
  }
  const NetworkPlan plan = load_network_plan(network_file);
  const OpticalPath& path = find_path_or_throw(plan, path_name);
  const auto rows = attenuation_sweep(path, start, stop, step, plan.ber_model);
  const BudgetReport budget = compute_budget(path);

  Report report = make_report(echo, network_file);
  report.primary_slug = "sweep";
  Table sweep{"attenuation sweep: " + path.name,
              "sweep",
              {"attenuation_db", "received_dbm", "ber"},
              {}};
  for (const auto& row : rows) {
    sweep.rows.push_back({fmt_db(row.attenuation_db), fmt_db(row.received_dbm),
                          fmt_ber(row.ber)});
  }
  report.tables.push_back(std::move(sweep));

  for (const auto& row : rows) {
    if (row.ber > 1e-12) {
      report.notes.push_back("modeled BER first exceeds 1e-12 at " + fmt_db(row.attenuation_db) +
                             " dB attenuation (computed margin " + fmt_db(budget.margin_db) +
                             " dB)");
      break;
    }
  }

  emit(report, opts, "sweep");
  return kExitOk;
}

int run_scale(const std::string& echo, const std::string& network_file,
              double min_margin_override, bool has_override, const OutputOptions& opts) {
  const NetworkPlan plan = load_network_plan(network_file);
  if (!plan.scaling) {
    throw ValidationError("plan has no scaling ledger");
  }
  ScalingLedger ledger = *plan.scaling;
  if (has_override) {
    ledger.min_margin_db = min_margin_override;
  }
  const int max_ports = max_broadcast_ports(ledger);

  Report report = make_report(echo, network_file);
  report.primary_slug = "scale";
  Table scale{"broadcast-domain scaling",
              "scale",
              {"ports", "predicted_margin_db", "meets_floor"},
              {}};
  for (int ports = ledger.base_ports;; ports *= 2) {
    const double margin = predict_scaled_margin(ledger, ports);
    scale.rows.push_back(
        {std::to_string(ports), fmt_db(margin), margin >= ledger.min_margin_db ? "yes" : "no"});
    if (margin < ledger.min_margin_db) break;
  }
  report.tables.push_back(std::move(scale));
  report.notes.push_back("maximum feasible broadcast ports at a " +
                         fmt_db(ledger.min_margin_db) + " dB margin floor: " +
                         std::to_string(max_ports));

  emit(report, opts, "scale");
  return kExitOk;
}

int run_metrics(const std::string& echo, const std::string& catalog_file,
                const OutputOptions& opts) {
  const MetricsCatalog catalog = load_metrics_catalog(catalog_file);
  Report report = make_report(echo, catalog_file);
  report.primary_slug = "transceivers";

  if (!catalog.transceivers.empty()) {
    Table transceivers{"transceiver energy per bit",
                       "transceivers",
                       {"name", "lanes", "rate_gbps_per_lane", "power_mw", "computed_pj_per_bit",
                        "published_pj_per_bit", "deviation_pct", "flag", "published_bd_gbps_cm",
                        "rate_x_reach_gbps_cm", "bd_flag"},
                       {}};
    const auto rows = comparison_table(catalog.transceivers);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const auto& row = rows[i];
      const auto& rec = catalog.transceivers[i];
      std::string flag;
      if (row.mismatch_over_5pct) {
        flag = "mismatch>5%";
      } else if (row.rounding_flag) {
        flag = "source-rounding";
        report.notes.push_back("'" + row.name + "': published " +
                               fmt_number(*row.stated_pj_per_bit) +
                               " pJ/bit is not a rounding of computed " +
                               fmt_fixed(row.derived_pj_per_bit, 2) + " pJ/bit");
      }
      std::string bd_flag;
      std::string rate_x_reach = "-";
      if (rec.reach_m) {
        const double derived_bd = rec.rate_per_lane_gbps * (*rec.reach_m) * 100.0;
        rate_x_reach = fmt_number(derived_bd);
        if (rec.bd_per_lane_gbps_cm &&
            std::abs(derived_bd - *rec.bd_per_lane_gbps_cm) > 0.05 * *rec.bd_per_lane_gbps_cm) {
          bd_flag = "bd!=rate*reach";
        }
      }
      transceivers.rows.push_back(
          {row.name, std::to_string(row.lanes), fmt_number(row.rate_per_lane_gbps),
           fmt_number(row.total_power_mw), fmt_fixed(row.derived_pj_per_bit, 2),
           row.stated_pj_per_bit ? fmt_number(*row.stated_pj_per_bit) : "-",
           row.stated_pj_per_bit ? fmt_fixed(row.deviation_pct, 2) : "-", flag,
           rec.bd_per_lane_gbps_cm ? fmt_number(*rec.bd_per_lane_gbps_cm) : "-", rate_x_reach,
           bd_flag});
    }
    report.tables.push_back(std::move(transceivers));

    Table projections{"fixed-power rate projections",
                      "projections",
                      {"name", "base_pj_per_bit", "base_rate_gbps", "projected_rate_gbps",
                       "computed_pj_per_bit", "published_pj_per_bit", "flag"},
                      {}};
    for (const auto& rec : catalog.transceivers) {
      if (!rec.projected_rate_gbps) continue;
      const double base_pj =
          energy_per_bit_pj(rec.total_power_mw, rec.lanes, rec.rate_per_lane_gbps);
      const double projected =
          scale_energy_per_bit(base_pj, rec.rate_per_lane_gbps, *rec.projected_rate_gbps);
      std::string flag;
      if (rec.stated_projected_pj_per_bit &&
          !printed_value_consistent(*rec.stated_projected_pj_per_bit, projected)) {
        flag = "source-rounding";
      }
      projections.rows.push_back(
          {rec.name, fmt_fixed(base_pj, 2), fmt_number(rec.rate_per_lane_gbps),
           fmt_number(*rec.projected_rate_gbps), fmt_fixed(projected, 2),
           rec.stated_projected_pj_per_bit ? fmt_number(*rec.stated_projected_pj_per_bit) : "-",
           flag});
    }
    if (!projections.rows.empty()) report.tables.push_back(std::move(projections));

    Table costs{"cost zones",
                "cost_zones",
                {"name", "cost_low_usd_per_gbps", "cost_high_usd_per_gbps", "zone_at_low",
                 "zone_at_high"},
                {}};
    for (const auto& rec : catalog.transceivers) {
      if (!rec.cost_usd_per_gbps) continue;
      costs.rows.push_back({rec.name, fmt_number(rec.cost_usd_per_gbps->first),
                            fmt_number(rec.cost_usd_per_gbps->second),
                            std::string(to_string(cost_crossover_zone(rec.cost_usd_per_gbps->first))),
                            std::string(to_string(cost_crossover_zone(rec.cost_usd_per_gbps->second)))});
    }
    if (!costs.rows.empty()) report.tables.push_back(std::move(costs));
  }

  if (!catalog.connectors.empty()) {
    Table density{"connector interconnect density",
                  "density",
                  {"name", "channels_per_fiber", "fibers", "rate_gbps", "face_mm2",
                   "computed_gbps_mm2", "published_gbps_mm2", "flag"},
                  {}};
    for (const auto& rec : catalog.connectors) {
      const double computed = interconnect_density(rec);
      std::string flag;
      if (rec.stated_density_gbps_mm2 &&
          !printed_value_consistent(*rec.stated_density_gbps_mm2, computed)) {
        flag = "source-rounding";
        report.notes.push_back("'" + rec.name + "': published density " +
                               fmt_number(*rec.stated_density_gbps_mm2) +
                               " Gbps/mm2 is not a rounding of computed " +
                               fmt_fixed(computed, 3));
      }
      density.rows.push_back({rec.name, std::to_string(rec.channels_per_fiber),
                              std::to_string(rec.fibers), fmt_number(rec.rate_gbps),
                              fmt_fixed(rec.width_mm * rec.height_mm, 2), fmt_fixed(computed, 3),
                              rec.stated_density_gbps_mm2
                                  ? fmt_number(*rec.stated_density_gbps_mm2)
                                  : "-",
                              flag});
    }
    report.tables.push_back(std::move(density));

    const ConnectorDensityRecord& baseline = catalog.connectors.front();
    Table ratios{"density ratio vs " + baseline.name,
                 "density_ratios",
                 {"name", "ratio"},
                 {}};
    for (const auto& rec : catalog.connectors) {
      ratios.rows.push_back({rec.name, fmt_fixed(density_ratio(rec, baseline), 3)});
    }
    report.tables.push_back(std::move(ratios));
  }

  if (catalog.power_breakdown) {
    Table breakdown{"link power breakdown", "power_breakdown", {"block", "fraction"}, {}};
    for (const auto& [block, fraction] : catalog.power_breakdown->blocks) {
      breakdown.rows.push_back({block, fmt_fixed(fraction, 3)});
    }
    report.tables.push_back(std::move(breakdown));
  }

  emit(report, opts, "metrics");
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"optiplan: plan electrical/optical interconnect fabrics"};
  app.require_subcommand(1);

  OutputOptions opts;
  std::string config_file, network_file, catalog_file, path_name, atten_spec;
  double min_margin = 0.0;

  auto add_output_flags = [&](CLI::App* cmd) {
    cmd->add_option("--out", opts.out_dir, "Directory for report and CSV files");
    cmd->add_option("--format", opts.format, "Stdout format")
        ->check(CLI::IsMember({"csv", "text"}));
  };

  CLI::App* topology =
      app.add_subcommand("topology", "Link-length histogram and electrical/optical split");
  topology->add_option("--config", config_file, "System config JSON")->required();
  add_output_flags(topology);

  CLI::App* plan_cmd =
      app.add_subcommand("plan", "Validate a channel plan: collisions, reachability");
  plan_cmd->add_option("--network", network_file, "Network plan JSON")->required();
  add_output_flags(plan_cmd);

  CLI::App* budget_cmd = app.add_subcommand("budget", "Optical power ledger for a named path");
  budget_cmd->add_option("--network", network_file, "Network plan JSON")->required();
  budget_cmd->add_option("--path", path_name, "Path name")->required();
  add_output_flags(budget_cmd);

  CLI::App* sweep_cmd =
      app.add_subcommand("sweep", "BER vs inserted attenuation for a named path");
  sweep_cmd->add_option("--network", network_file, "Network plan JSON")->required();
  sweep_cmd->add_option("--path", path_name, "Path name")->required();
  sweep_cmd->add_option("--atten", atten_spec, "start:stop:step in dB")->required();
  add_output_flags(sweep_cmd);

  CLI::App* scale_cmd =
      app.add_subcommand("scale", "Margin extrapolation across coupler doublings");
  scale_cmd->add_option("--network", network_file, "Network plan JSON")->required();
  CLI::Option* min_margin_opt =
      scale_cmd->add_option("--min-margin", min_margin, "Margin floor in dB");
  add_output_flags(scale_cmd);

  CLI::App* metrics_cmd =
      app.add_subcommand("metrics", "Energy per bit, density and cost comparisons");
  metrics_cmd->add_option("--catalog", catalog_file, "Metrics catalog JSON")->required();
  add_output_flags(metrics_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  const std::string echo = join_args(argc, argv);
  try {
    if (topology->parsed()) return run_topology(echo, config_file, opts);
    if (plan_cmd->parsed()) return run_plan(echo, network_file, opts);
    if (budget_cmd->parsed()) return run_budget(echo, network_file, path_name, opts);
    if (sweep_cmd->parsed()) return run_sweep(echo, network_file, path_name, atten_spec, opts);
    if (scale_cmd->parsed()) {
      return run_scale(echo, network_file, min_margin, min_margin_opt->count() > 0, opts);
    }
    if (metrics_cmd->parsed()) return run_metrics(echo, catalog_file, opts);
  } catch (const CollisionError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitCollision;
  } catch (const UnknownReferenceError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUnknownRef;
  } catch (const InfeasibleError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInfeasible;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitOk;
}
