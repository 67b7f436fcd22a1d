#include "commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "pagrowth/error.hpp"
#include "pagrowth/fitting.hpp"
#include "pagrowth/growth_sim.hpp"
#include "pagrowth/kcore.hpp"
#include "pagrowth/pa_measure.hpp"

namespace pagrowth::cli {
namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

// Reference sizes of the public SNAP citation graphs after cleaning.
struct KnownDataset {
  const char* name;
  std::size_t nodes;
  std::size_t edges;
};
constexpr KnownDataset kKnownDatasets[] = {
    {"cit-HepTh", 27770, 352807},
    {"cit-HepPh", 30566, 347414},
};

std::ofstream open_output(const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write '" + path.string() + "'");
  return out;
}

std::ifstream open_input(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot read '" + path.string() + "'");
  return in;
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw DataError("cannot create '" + dir.string() + "': " + ec.message());
}

IngestResult load_dataset(const RunConfig& config) {
  IngestOptions options;
  options.snap_strip_prefix = config.snap_strip_prefix;
  auto edges = open_input(config.input);
  if (config.format == InputFormat::kSnapCitation) {
    auto dates = open_input(config.dates);
    return ingest_snap(edges, dates, options);
  }
  return ingest_generic(edges, options);
}

std::string format_time(Timestamp t, TimeUnit unit) {
  return unit == TimeUnit::kDays ? format_iso_date(t) : std::to_string(t);
}

std::string now_utc() {
  const auto now = std::chrono::system_clock::now();
  const auto t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

json report_json(const IngestReport& r) {
  return {{"lines", r.lines},
          {"comment_lines", r.comment_lines},
          {"edges_read", r.edges_read},
          {"edges_kept", r.edges_kept},
          {"self_loops", r.self_loops},
          {"duplicates", r.duplicates},
          {"missing_dates", r.missing_dates},
          {"nodes", r.nodes}};
}

json fit_options_json(const FitOptions& f) {
  return {{"min_class_size", f.min_class_size}, {"tail_trim", f.tail_trim}};
}

std::string window_dir_name(std::size_t index) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "w%04zu", index);
  return buf;
}

void write_bundle(const fs::path& dir, const WindowMeasurement& m, const RunConfig& config,
                  TimeUnit unit, json& manifest_entry) {
  ensure_dir(dir);
  {
    auto out = open_output(dir / "degree.csv");
    write_attachment_csv(out, m.degree);
  }
  {
    auto out = open_output(dir / "coreness.csv");
    write_attachment_csv(out, m.coreness);
  }
  {
    auto out = open_output(dir / "hybrid.csv");
    write_hybrid_csv(out, m.hybrid);
  }
  {
    auto out = open_output(dir / "shells.csv");
    write_shell_csv(out, m.shells);
  }
  json curves = json::array();
  const auto shells = shells_of(m.hybrid);
  const auto degrees = degrees_of(m.hybrid);
  for (std::uint32_t c0 : config.c0) {
    if (!std::binary_search(shells.begin(), shells.end(), c0)) continue;
    const std::string name = "phi_c" + std::to_string(c0) + ".csv";
    auto out = open_output(dir / name);
    write_curve_csv(out, phi_within_shell(m.hybrid, c0));
    curves.push_back(name);
  }
  for (std::uint32_t k0 : config.k0) {
    if (!std::binary_search(degrees.begin(), degrees.end(), k0)) continue;
    const std::string name = "pi_k" + std::to_string(k0) + ".csv";
    auto out = open_output(dir / name);
    write_curve_csv(out, pi_among_shells(m.hybrid, k0));
    curves.push_back(name);
  }

  json window;
  window["cutoff"] = m.cutoff;
  window["window_end"] = m.window_end;
  window["cutoff_label"] = format_time(m.cutoff, unit);
  window["events"] = m.degree.total_events;
  window["new_new"] = m.new_new;
  window["old_old"] = m.old_old;
  window["nodes"] = m.hybrid.total_nodes;
  window["empty"] = !m.degree.has_events;
  window["curves"] = curves;
  {
    auto out = open_output(dir / "window.json");
    out << window.dump(2) << '\n';
  }
  manifest_entry = window;
  manifest_entry["dir"] = dir.filename().string();
}

WindowMeasurement read_bundle(const fs::path& dir) {
  WindowMeasurement m;
  json window;
  {
    auto in = open_input(dir / "window.json");
    try {
      window = json::parse(in);
    } catch (const json::exception& e) {
      throw DataError(dir.string() + "/window.json: " + e.what());
    }
  }
  m.cutoff = window.at("cutoff").get<Timestamp>();
  m.window_end = window.at("window_end").get<Timestamp>();
  m.new_new = window.value("new_new", std::size_t{0});
  m.old_old = window.value("old_old", std::size_t{0});
  auto with_context = [&](const char* file, auto&& read) {
    auto in = open_input(dir / file);
    try {
      return read(in);
    } catch (const ParseError& e) {
      throw DataError((dir / file).string() + ": " + e.what());
    }
  };
  m.degree = with_context("degree.csv", [](std::istream& in) {
    return read_attachment_csv(in, Axis::kDegree);
  });
  m.coreness = with_context("coreness.csv", [](std::istream& in) {
    return read_attachment_csv(in, Axis::kCoreness);
  });
  m.hybrid = with_context("hybrid.csv", [](std::istream& in) { return read_hybrid_csv(in); });
  m.shells = with_context("shells.csv", [](std::istream& in) { return read_shell_csv(in); });
  for (auto* stats : {&m.degree, &m.coreness}) {
    stats->window_begin = m.cutoff;
    stats->window_end = m.window_end;
  }
  m.hybrid.window_begin = m.cutoff;
  m.hybrid.window_end = m.window_end;
  return m;
}

std::vector<std::uint32_t> parse_value_list(const std::string& text, const std::string& field) {
  std::vector<std::uint32_t> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      std::size_t used = 0;
      const unsigned long v = std::stoul(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      values.push_back(static_cast<std::uint32_t>(v));
    } catch (const std::exception&) {
      throw ConfigError(field + ": '" + item + "' is not a nonnegative integer");
    }
  }
  return values;
}

}  // namespace

WindowSchedule build_schedule(const TemporalNetwork& net, const RunConfig& config) {
  const Timestamp stride = config.stride.value_or(config.dt);
  WindowSchedule schedule = WindowSchedule::yearly_default(net, config.dt, stride);
  if (config.start) {
    if (auto date = parse_iso_date(*config.start)) {
      schedule.start = *date;
    } else {
      schedule.start = std::stoll(*config.start);
    }
    const Timestamp last = net.last_time();
    schedule.count = schedule.start <= last
                         ? static_cast<std::size_t>((last - schedule.start) / stride) + 1
                         : 0;
  }
  if (config.windows) schedule.count = *config.windows;
  return schedule;
}

int cmd_ingest(const RunConfig& config, std::ostream& out) {
  const IngestResult result = load_dataset(config);
  const fs::path dir = config.output;
  ensure_dir(dir);
  {
    auto file = open_output(dir / "edges.tsv");
    write_generic(file, result.network);
  }
  {
    auto file = open_output(dir / "node_ids.tsv");
    write_id_table(file, result.network);
  }
  json report = report_json(result.report);
  report["time_unit"] = result.network.time_unit() == TimeUnit::kDays ? "days" : "ticks";
  if (result.network.num_edges() > 0) {
    report["first_time"] = format_time(result.network.first_time(), result.network.time_unit());
    report["last_time"] = format_time(result.network.last_time(), result.network.time_unit());
  }
  {
    auto file = open_output(dir / "ingest_report.json");
    file << report.dump(2) << '\n';
  }

  const IngestReport& r = result.report;
  out << "nodes " << r.nodes << ", edges " << r.edges_kept << " (read " << r.edges_read
      << ", self-loops " << r.self_loops << ", duplicates " << r.duplicates
      << ", missing dates " << r.missing_dates << ")\n";
  if (config.format == InputFormat::kSnapCitation) {
    for (const auto& known : kKnownDatasets) {
      const double dn = std::abs(static_cast<double>(r.nodes) - known.nodes) / known.nodes;
      if (dn < 0.1) {
        out << "reference " << known.name << ": " << known.nodes << " nodes, " << known.edges
            << " edges\n";
      }
    }
  }
  if (result.network.num_edges() == 0) {
    out << "no usable edges\n";
    return kExitData;
  }
  return kExitOk;
}

int cmd_measure(const RunConfig& config, std::ostream& out) {
  const IngestResult data = load_dataset(config);
  const TemporalNetwork& net = data.network;
  const WindowSchedule schedule = build_schedule(net, config);
  if (schedule.count == 0) {
    out << "window schedule is empty; set --start or --windows\n";
    return kExitInsufficient;
  }
  PipelineOptions options;
  options.mode = config.degree_mode;
  options.fit = config.fit;
  options.threads = config.threads;
  const auto windows = measure_schedule(net, schedule, options);

  const fs::path dir = config.output;
  ensure_dir(dir / "windows");
  json manifest;
  manifest["dataset"] = config.input;
  manifest["time_unit"] = net.time_unit() == TimeUnit::kDays ? "days" : "ticks";
  manifest["degree_mode"] = to_string(config.degree_mode);
  manifest["dt"] = config.dt;
  manifest["stride"] = schedule.stride;
  manifest["nodes"] = net.num_nodes();
  manifest["edges"] = net.num_edges();
  manifest["c0"] = config.c0;
  manifest["k0"] = config.k0;
  manifest["fit_options"] = fit_options_json(config.fit);
  if (config.timestamp) manifest["generated_at"] = now_utc();
  json& entries = manifest["windows"];
  entries = json::array();

  std::size_t with_events = 0;
  for (std::size_t i = 0; i < windows.size(); ++i) {
    json entry;
    write_bundle(dir / "windows" / window_dir_name(i), windows[i], config, net.time_unit(), entry);
    if (windows[i].degree.has_events) ++with_events;
    entries.push_back(std::move(entry));
  }
  if (config.export_coreness) {
    for (std::size_t i = 0; i < windows.size(); ++i) {
      const Snapshot g(net, windows[i].cutoff, config.degree_mode);
      auto file = open_output(dir / "windows" / window_dir_name(i) / "nodes.csv");
      write_coreness_csv(file, g, core_decomposition(g));
    }
  }
  {
    auto file = open_output(dir / "manifest.json");
    file << manifest.dump(2) << '\n';
  }
  out << "measured " << windows.size() << " windows (" << with_events << " with attachments)\n";
  if (with_events == 0) {
    out << "no window has attachment events; adjust --start/--dt/--windows\n";
    return kExitInsufficient;
  }
  return kExitOk;
}

int cmd_fit(const RunConfig& config, std::ostream& out) {
  const fs::path in_dir = config.input;
  json manifest;
  {
    auto in = open_input(in_dir / "manifest.json");
    try {
      manifest = json::parse(in);
    } catch (const json::exception& e) {
      throw DataError("manifest.json: " + std::string(e.what()));
    }
  }
  std::vector<WindowMeasurement> windows;
  for (const auto& entry : manifest.at("windows")) {
    windows.push_back(read_bundle(in_dir / "windows" / entry.at("dir").get<std::string>()));
  }
  if (windows.empty()) {
    out << "no measurement windows found\n";
    return kExitInsufficient;
  }

  const fs::path dir = config.output;
  ensure_dir(dir);
  std::vector<ExponentSeries> all;
  bool any_sufficient = false;
  for (ExponentKind kind : kAllExponents) {
    ExponentSeries series = series_from_measurements(windows, kind, config.fit);
    auto file = open_output(dir / ("series_" + std::string(to_string(kind)) + ".csv"));
    write_series_csv(file, series);
    const SeriesSummary s = summarize(series);
    any_sufficient = any_sufficient || s.windows_used > 0;
    char line[160];
    std::snprintf(line, sizeof line, "%-9s mean %.4f std %.4f over %zu/%zu windows\n",
                  std::string(to_string(kind)).c_str(), s.mean, s.stddev, s.windows_used,
                  s.windows_total);
    out << line;
    all.push_back(std::move(series));
  }
  {
    auto file = open_output(dir / "report.json");
    write_series_report(file, all, manifest.value("dataset", config.input));
  }
  if (!any_sufficient) {
    out << "every window has an insufficient fit\n";
    return kExitInsufficient;
  }
  return kExitOk;
}

int cmd_simulate(const RunConfig& config, std::ostream& out) {
  const TemporalNetwork net = simulate(config.sim, config.kernel);
  const fs::path dir = config.output;
  ensure_dir(dir);
  {
    auto file = open_output(dir / "edges.tsv");
    write_generic(file, net);
  }
  {
    auto file = open_output(dir / "metadata.json");
    write_sim_metadata(file, config.sim, config.kernel);
  }
  out << "simulated " << net.num_nodes() << " nodes, " << net.num_edges() << " edges\n";
  return kExitOk;
}

int cmd_report(const RunConfig& config, std::ostream& out) {
  const int measured = cmd_measure(config, out);
  if (measured != kExitOk) return measured;
  RunConfig fit_config = config;
  fit_config.input = config.output;
  return cmd_fit(fit_config, out);
}

// ---------------------------------------------------------------------------
// Argument parsing

namespace {

const std::set<std::string> kFlagKeys = {"export-coreness", "no-timestamp"};

// Splices config-file entries in front of the explicit arguments so the
// latter win under the take-last policy.
std::vector<std::string> splice_config(const std::vector<std::string>& args) {
  std::string path;
  std::vector<std::string> rest;
  for (std::size_t i = 1; i < args.size(); ++i) {
    const std::string& a = args[i];
    if (a == "--config" && i + 1 < args.size()) {
      path = args[++i];
    } else if (a.starts_with("--config=")) {
      path = a.substr(9);
    } else {
      rest.push_back(a);
    }
  }
  if (path.empty() || rest.empty()) return args;

  std::vector<std::string> spliced = {args[0], rest[0]};
  for (auto& [key, value] : read_config_file(path)) {
    if (kFlagKeys.count(key) != 0) {
      if (value == "true" || value == "1" || value == "yes") spliced.push_back("--" + key);
      continue;
    }
    spliced.push_back("--" + key);
    spliced.push_back(value);
  }
  spliced.insert(spliced.end(), rest.begin() + 1, rest.end());
  return spliced;
}

struct ParseState {
  std::string format = "generic";
  std::string degree_mode = "undirected";
  std::string c0 = "20";
  std::string k0 = "20";
  std::string kernel = "degree_only";
  std::string out_degree = "fixed";
  bool no_timestamp = false;
  std::size_t n_final = 1000;
  std::size_t windows = 0;
  Timestamp stride = 0;
  std::string start;
};

void add_common(CLI::App& sub, RunConfig& cfg, ParseState& st) {
  sub.add_option("--output,-o", cfg.output, "Output directory");
  sub.add_option("--threads", cfg.threads, "Worker threads (0 = hardware concurrency)");
  sub.add_flag("--no-timestamp", st.no_timestamp, "Omit generation timestamps from outputs");
}

void add_dataset(CLI::App& sub, RunConfig& cfg, ParseState& st) {
  sub.add_option("--input,-i", cfg.input, "Edge list (generic TSV or SNAP edges file)");
  sub.add_option("--dates", cfg.dates, "SNAP dates file");
  sub.add_option("--format", st.format, "generic | snap");
  sub.add_option("--snap-strip-prefix", cfg.snap_strip_prefix,
                 "Prefix stripped from SNAP dates-file ids (cross-listed papers)");
}

void add_windows(CLI::App& sub, RunConfig& cfg, ParseState& st) {
  sub.add_option("--degree-mode", st.degree_mode, "undirected | in | out");
  sub.add_option("--dt", cfg.dt, "Window length in days or ticks");
  sub.add_option("--start", st.start, "First cutoff (YYYY-MM-DD or tick)");
  sub.add_option("--stride", st.stride, "Distance between cutoffs (default dt)");
  sub.add_option("--windows", st.windows, "Number of windows");
  sub.add_option("--c0", st.c0, "Shells for within-shell curves, comma separated");
  sub.add_option("--k0", st.k0, "Degrees for among-shell curves, comma separated");
  sub.add_flag("--export-coreness", cfg.export_coreness, "Write node,coreness,degree per window");
}

void add_fit(CLI::App& sub, RunConfig& cfg) {
  sub.add_option("--min-class-size", cfg.fit.min_class_size, "Drop classes with fewer nodes");
  sub.add_option("--tail-trim", cfg.fit.tail_trim, "Fraction of top abscissa values dropped");
}

void add_simulation(CLI::App& sub, RunConfig& cfg, ParseState& st) {
  sub.add_option("--n", st.n_final, "Final node count");
  sub.add_option("--m", cfg.sim.m, "Edges per new node (mean for variable laws)");
  sub.add_option("--out-degree", st.out_degree, "fixed | uniform | geometric | power_law");
  sub.add_option("--out-degree-tail", cfg.sim.out_degree_tail, "Pareto shape for power_law");
  sub.add_option("--seed", cfg.sim.rng_seed, "RNG seed");
  sub.add_option("--coreness-refresh", cfg.sim.coreness_refresh,
                 "Recompute coreness every n ticks");
  sub.add_option("--kernel", st.kernel, "degree_only | coreness_only | hybrid");
  sub.add_option("--alpha", cfg.kernel.alpha, "Degree exponent");
  sub.add_option("--beta", cfg.kernel.beta, "Coreness exponent");
  sub.add_option("--degree-offset", cfg.kernel.degree_offset, "Added to k before the power");
}

// Copies the string-typed fields into the config; returns field errors.
std::vector<std::string> finish(RunConfig& cfg, const ParseState& st) {
  std::vector<std::string> errors;
  if (st.format == "generic") {
    cfg.format = InputFormat::kGenericTsv;
  } else if (st.format == "snap") {
    cfg.format = InputFormat::kSnapCitation;
  } else {
    errors.push_back("format: expected generic or snap, got '" + st.format + "'");
  }
  if (auto mode = parse_degree_mode(st.degree_mode)) {
    cfg.degree_mode = *mode;
  } else {
    errors.push_back("degree-mode: expected undirected, in or out, got '" + st.degree_mode + "'");
  }
  if (auto mode = parse_kernel_mode(st.kernel)) {
    cfg.kernel.mode = *mode;
  } else {
    errors.push_back("kernel: expected degree_only, coreness_only or hybrid, got '" + st.kernel +
                     "'");
  }
  if (auto law = parse_out_degree_law(st.out_degree)) {
    cfg.sim.out_degree = *law;
  } else {
    errors.push_back("out-degree: expected fixed, uniform, geometric or power_law, got '" +
                     st.out_degree + "'");
  }
  try {
    cfg.c0 = parse_value_list(st.c0, "c0");
    cfg.k0 = parse_value_list(st.k0, "k0");
  } catch (const ConfigError& e) {
    errors.push_back(e.what());
  }
  cfg.sim.n_final = st.n_final;
  cfg.timestamp = !st.no_timestamp;
  if (!st.start.empty()) cfg.start = st.start;
  if (st.stride != 0) cfg.stride = st.stride;
  if (st.windows != 0) cfg.windows = st.windows;
  return errors;
}

}  // namespace

int run_cli(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  try {
    args = splice_config(raw_args);
  } catch (const ConfigError& e) {
    err << e.what() << '\n';
    return kExitUsage;
  }

  RunConfig cfg;
  ParseState st;
  CLI::App app{"Preferential-attachment measurement on temporal networks", "pagrowth"};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);
  app.set_version_flag("--version", "pagrowth 0.1.0");
  app.add_option("--config", "Key = value file supplying any option; flags override it");

  auto* ingest = app.add_subcommand("ingest", "Normalize a dataset and report cleaning counts");
  add_common(*ingest, cfg, st);
  add_dataset(*ingest, cfg, st);

  auto* measure = app.add_subcommand("measure", "Per-window attachment tables");
  add_common(*measure, cfg, st);
  add_dataset(*measure, cfg, st);
  add_windows(*measure, cfg, st);
  add_fit(*measure, cfg);

  auto* fit = app.add_subcommand("fit", "Exponent series from measurement bundles");
  add_common(*fit, cfg, st);
  fit->add_option("--input,-i", cfg.input, "Directory written by `measure`");
  add_fit(*fit, cfg);

  auto* sim = app.add_subcommand("simulate", "Grow a synthetic network with a planted kernel");
  add_common(*sim, cfg, st);
  add_simulation(*sim, cfg, st);

  auto* report = app.add_subcommand("report", "measure + fit into one directory");
  add_common(*report, cfg, st);
  add_dataset(*report, cfg, st);
  add_windows(*report, cfg, st);
  add_fit(*report, cfg);

  std::vector<std::string> reversed(args.rbegin(), args.rend() - 1);
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << app.version() << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return kExitUsage;
  }
  for (auto* sub : app.get_subcommands()) cfg.command = sub->get_name();

  auto errors = finish(cfg, st);
  auto more = validate(cfg);
  errors.insert(errors.end(), more.begin(), more.end());
  if (!errors.empty()) {
    for (const auto& e : errors) err << "config error: " << e << '\n';
    return kExitUsage;
  }

  try {
    if (cfg.command == "ingest") return cmd_ingest(cfg, out);
    if (cfg.command == "measure") return cmd_measure(cfg, out);
    if (cfg.command == "fit") return cmd_fit(cfg, out);
    if (cfg.command == "simulate") return cmd_simulate(cfg, out);
    if (cfg.command == "report") return cmd_report(cfg, out);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DataError& e) {
    err << "data error: " << e.what() << '\n';
    return kExitData;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  }
  return kExitUsage;
}

}  // namespace pagrowth::cli
