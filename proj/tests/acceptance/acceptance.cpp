// One PASS/FAIL/SKIP line per acceptance criterion. Exit status is 1 when
// any selected criterion fails, 77 when all of them were skipped.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "oracles.hpp"
#include "pagrowth/fitting.hpp"
#include "pagrowth/growth_sim.hpp"
#include "pagrowth/kcore.hpp"
#include "pagrowth/pa_measure.hpp"

using namespace pagrowth;

namespace {

// Tolerances and workloads.
constexpr int kOracleGraphs = 200;
constexpr std::size_t kOracleMaxNodes = 200;
constexpr double kOracleSeconds = 10.0;
constexpr double kHandTolerance = 1e-12;

constexpr std::size_t kSimNodes = 20000;
constexpr std::uint32_t kSimM = 3;
constexpr int kSeeds = 5;
constexpr int kSeedsRequired = 4;
constexpr Timestamp kWindow = kDaysPerYear;

constexpr double kBaAlpha = 1.0;
constexpr double kBaBand = 0.15;
constexpr double kBaSeconds = 60.0;

constexpr double kHybridAlpha = 0.7;
constexpr double kHybridBeta = 0.2;
constexpr double kAlphaBand = 0.15;
constexpr double kBetaBand = 0.08;
constexpr double kMinRSquared = 0.9;
constexpr double kHybridSeconds = 300.0;

constexpr std::size_t kLocalizedMinPoints = 5;
constexpr double kLocalizedShare = 0.9;

constexpr double kSumTolerance = 1e-9;

// Reported to ctest as a skipped test.
constexpr int kExitSkipped = 77;

struct DatasetBand {
  double alpha, alpha_tol, beta, beta_tol;
};
constexpr DatasetBand kHepTh{0.70, 0.12, 0.19, 0.14};
constexpr DatasetBand kHepPh{0.72, 0.19, 0.25, 0.17};

enum class Verdict { kPass, kFail, kSkip };

struct Outcome {
  Verdict verdict;
  std::string detail;
};

Outcome pass_if(bool ok, std::string detail) {
  return {ok ? Verdict::kPass : Verdict::kFail, std::move(detail)};
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// ---------------------------------------------------------------------------
// Simulations shared by criteria 4, 5 and 7.

struct SeedRun {
  std::uint64_t seed = 0;
  TemporalNetwork net;
  std::vector<WindowMeasurement> windows;
};

SimConfig sim_config(std::uint64_t seed, OutDegreeLaw law) {
  SimConfig c;
  c.n_final = kSimNodes;
  c.m = kSimM;
  c.out_degree = law;
  c.rng_seed = seed;
  return c;
}

std::vector<SeedRun> run_seeds(OutDegreeLaw law, const KernelSpec& kernel) {
  std::vector<SeedRun> runs(kSeeds);
  {
    std::vector<std::jthread> workers;
    for (int i = 0; i < kSeeds; ++i) {
      workers.emplace_back([&, i] {
        SeedRun& r = runs[i];
        r.seed = static_cast<std::uint64_t>(i + 1);
        r.net = simulate(sim_config(r.seed, law), kernel);
        PipelineOptions opts;
        opts.threads = 1;
        r.windows = measure_schedule(r.net, WindowSchedule::yearly_default(r.net, kWindow), opts);
      });
    }
  }
  return runs;
}

const std::vector<SeedRun>& hybrid_runs() {
  static const std::vector<SeedRun> runs = run_seeds(
      OutDegreeLaw::kGeometric, {KernelMode::kHybrid, kHybridAlpha, kHybridBeta, 1.0});
  return runs;
}

SeriesSummary window_mean(const std::vector<WindowMeasurement>& w, ExponentKind kind,
                          double* mean_r2 = nullptr) {
  const auto series = series_from_measurements(w, kind);
  if (mean_r2) {
    double sum = 0.0;
    std::size_t n = 0;
    for (const auto& f : series.values) {
      if (!f.sufficient) continue;
      sum += f.r_squared;
      ++n;
    }
    *mean_r2 = n ? sum / n : 0.0;
  }
  return summarize(series);
}

// ---------------------------------------------------------------------------

Outcome criterion_kcore_oracle() {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(20240601);
  const double probs[] = {0.02, 0.05, 0.1};
  int mismatched = 0;
  for (int i = 0; i < kOracleGraphs; ++i) {
    const std::size_t n = 1 + rng() % kOracleMaxNodes;
    const auto edges = oracle::random_graph(n, probs[i % 3], rng);
    const auto cm = core_decomposition(Snapshot::from_static(n, edges));
    if (cm.coreness != oracle::naive_coreness(n, edges)) ++mismatched;
  }
  const double s = seconds_since(t0);
  return pass_if(mismatched == 0 && s < kOracleSeconds,
                 fmt("%d graphs, %d mismatches, %.2f s", kOracleGraphs, mismatched, s));
}

Outcome criterion_hand_oracle() {
  // 0-1-2 before t = 5; node 3 cites 0 (degree 1) and 1 (degree 2).
  const auto net = TemporalNetwork::from_edges({{0, 1, 1}, {1, 2, 1}, {3, 0, 5}, {3, 1, 5}}, 4);
  const Snapshot g(net, 5);
  const auto d = measure_degree_pa(g, window_attachments(net, 5, 1));
  const double t1 = d.find(1)->rate, t2 = d.find(2)->rate;

  // Path 0-1-2-3 (classes (1,1) and (1,2), two nodes each); one hit on node 1.
  const auto path = TemporalNetwork::from_edges({{0, 1, 1}, {1, 2, 1}, {2, 3, 1}, {4, 1, 5}}, 5);
  const Snapshot pg(path, 5);
  const auto h = measure_hybrid(pg, core_decomposition(pg), window_attachments(path, 5, 1));
  const double raw = h.find(1, 2)->raw;

  const double err = std::max({std::abs(t1 - 1.0 / 3.0), std::abs(t2 - 2.0 / 3.0),
                               std::abs(raw - 2.0)});
  return pass_if(err <= kHandTolerance,
                 fmt("T(1)=%.15f T(2)=%.15f raw(1,2)=%.15f, max error %.1e", t1, t2, raw, err));
}

Outcome criterion_ba_baseline() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto runs = run_seeds(OutDegreeLaw::kFixed, {KernelMode::kDegreeOnly, kBaAlpha, 0.0, 1.0});
  int ok = 0;
  std::string values;
  for (const auto& r : runs) {
    const auto a = window_mean(r.windows, ExponentKind::kAlpha);
    const bool in = a.windows_used > 0 && std::abs(a.mean - kBaAlpha) <= kBaBand;
    ok += in;
    values += fmt(" %.3f", a.mean);
  }
  const double s = seconds_since(t0);
  return pass_if(ok >= kSeedsRequired && s < kBaSeconds,
                 fmt("alpha window-mean per seed:%s; %d/%d in [%.2f, %.2f]; %.1f s",
                     values.c_str(), ok, kSeeds, kBaAlpha - kBaBand, kBaAlpha + kBaBand, s));
}

Outcome criterion_hybrid_round_trip() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto& runs = hybrid_runs();
  int ok = 0;
  std::string values;
  for (const auto& r : runs) {
    double r2 = 0.0;
    const auto a = window_mean(r.windows, ExponentKind::kAlpha);
    const auto b = window_mean(r.windows, ExponentKind::kBeta, &r2);
    const bool in = a.windows_used > 0 && b.windows_used > 0 &&
                    std::abs(a.mean - kHybridAlpha) <= kAlphaBand &&
                    std::abs(b.mean - kHybridBeta) <= kBetaBand && r2 >= kMinRSquared;
    ok += in;
    values += fmt(" (%.3f, %.3f, r2 %.3f)", a.mean, b.mean, r2);
  }
  const double s = seconds_since(t0);
  return pass_if(ok >= kSeedsRequired && s < kHybridSeconds,
                 fmt("(alpha, beta) window-means:%s; %d/%d within +-%.2f / +-%.2f; %.1f s",
                     values.c_str(), ok, kSeeds, kAlphaBand, kBetaBand, s));
}

Outcome criterion_localized_laws() {
  const auto& runs = hybrid_runs();
  std::size_t shells = 0, shells_pos = 0, classes = 0, classes_pos = 0;
  for (const auto& r : runs) {
    const auto& h = r.windows.back().hybrid;
    for (const auto& cf : localized_exponents(h, LocalizedAxis::kWithinShell)) {
      if (!cf.fit.sufficient) continue;
      ++shells;
      shells_pos += cf.fit.slope > 0.0;
    }
    for (const auto& cf : localized_exponents(h, LocalizedAxis::kAmongShells)) {
      if (!cf.fit.sufficient || cf.fit.n_points < kLocalizedMinPoints) continue;
      ++classes;
      classes_pos += cf.fit.slope > 0.0;
    }
  }
  const bool phi_ok = shells > 0 && shells_pos == shells;
  // An empty qualifying set proves nothing and counts as a failure.
  const bool pi_ok = classes > 0 && classes_pos >= kLocalizedShare * classes;
  return pass_if(phi_ok && pi_ok,
                 fmt("final windows of %d seeds: Phi slope > 0 in %zu/%zu shells; Pi slope > 0 in "
                     "%zu/%zu degree classes with >= %zu fit points%s",
                     kSeeds, shells_pos, shells, classes_pos, classes, kLocalizedMinPoints,
                     classes == 0 ? " (no class qualifies)" : ""));
}

bool window_consistent(const WindowMeasurement& m, std::uint64_t nodes) {
  auto table_ok = [&](const AttachmentStats& s) {
    std::uint64_t n = 0;
    for (const auto& r : s.rows) n += r.size;
    if (n != nodes) return false;
    if (!s.has_events) return true;
    double sum = 0.0, prev = 0.0;
    for (const auto& r : s.rows) {
      sum += r.rate;
      if (r.cumulative < prev) return false;
      prev = r.cumulative;
    }
    return std::abs(sum - 1.0) <= kSumTolerance && std::abs(prev - 1.0) <= kSumTolerance;
  };
  if (!table_ok(m.degree) || !table_ok(m.coreness)) return false;
  std::uint64_t n = 0;
  double sum = 0.0;
  for (const auto& r : m.hybrid.rows) {
    n += r.size;
    sum += r.rate;
  }
  if (n != nodes || m.hybrid.total_nodes != nodes) return false;
  if (m.shells.total_nodes() != nodes) return false;
  if (!m.hybrid.has_events) return true;
  if (std::abs(sum - 1.0) > kSumTolerance) return false;
  auto monotone = [](const LocalizedCurve& c) {
    double prev = 0.0;
    for (const auto& p : c.points) {
      if (p.cumulative < prev) return false;
      prev = p.cumulative;
    }
    return true;
  };
  for (auto c0 : shells_of(m.hybrid))
    if (!monotone(phi_within_shell(m.hybrid, c0))) return false;
  for (auto k0 : degrees_of(m.hybrid))
    if (!monotone(pi_among_shells(m.hybrid, k0))) return false;
  return true;
}

Outcome criterion_normalization() {
  std::vector<TemporalNetwork> nets;
  nets.push_back(TemporalNetwork::from_edges({{0, 1, 1}, {1, 2, 1}, {3, 0, 5}, {3, 1, 5}}, 4));
  nets.push_back(TemporalNetwork::from_edges({{0, 1, 1}, {1, 2, 1}, {2, 3, 1}, {4, 1, 5}}, 5));
  nets.push_back(TemporalNetwork::from_edges(
      {{0, 1, 1}, {1, 2, 1}, {2, 0, 1}, {3, 0, 1}, {4, 1, 5}, {4, 3, 5}}, 5));
  for (auto law : {OutDegreeLaw::kFixed, OutDegreeLaw::kGeometric, OutDegreeLaw::kPowerLaw}) {
    SimConfig c = sim_config(7, law);
    c.n_final = 5000;
    nets.push_back(simulate(c, {KernelMode::kHybrid, kHybridAlpha, kHybridBeta, 1.0}));
  }
  std::size_t windows = 0, bad = 0;
  for (const auto& net : nets) {
    std::vector<Timestamp> cutoffs;
    if (net.num_nodes() < 10) {
      for (Timestamp t = 0; t <= net.last_time() + 1; ++t) cutoffs.push_back(t);
    } else {
      cutoffs = WindowSchedule::yearly_default(net, kWindow, 100).cutoffs();
    }
    const Timestamp length = net.num_nodes() < 10 ? 1 : kWindow;
    for (Timestamp t : cutoffs) {
      const auto m = measure_window(net, t, length);
      ++windows;
      bad += !window_consistent(m, Snapshot(net, t).num_nodes());
    }
  }
  return pass_if(bad == 0, fmt("%zu windows over %zu networks, %zu violations", windows,
                               nets.size(), bad));
}

Outcome criterion_shell_degree() {
  const auto& runs = hybrid_runs();
  int ok = 0;
  std::string values;
  for (const auto& r : runs) {
    const Snapshot g(r.net, kNever);
    const auto fit = fit_shell_degree_relation(shell_stats(g, core_decomposition(g)));
    ok += fit.sufficient && fit.exponent > 1.0;
    values += fit.sufficient ? fmt(" %.3f", fit.exponent) : std::string(" n/a");
  }
  return pass_if(ok >= kSeedsRequired,
                 fmt("gamma per seed:%s; %d/%d above 1", values.c_str(), ok, kSeeds));
}

struct DatasetPaths {
  std::string edges, dates;
};

Outcome dataset_check(const DatasetPaths& p, const DatasetBand& band, const char* name) {
  std::ifstream edges(p.edges), dates(p.dates);
  if (!edges || !dates) return {Verdict::kFail, fmt("%s: cannot read input files", name)};
  const auto data = ingest_snap(edges, dates);
  const auto windows =
      measure_schedule(data.network, WindowSchedule::yearly_default(data.network));
  const auto a = window_mean(windows, ExponentKind::kAlpha);
  const auto b = window_mean(windows, ExponentKind::kBeta);
  const bool ok = std::abs(a.mean - band.alpha) <= band.alpha_tol &&
                  std::abs(b.mean - band.beta) <= band.beta_tol;
  return pass_if(ok, fmt("%s: %zu nodes, %zu edges, alpha %.3f +- %.3f, beta %.3f +- %.3f", name,
                         data.network.num_nodes(), data.network.num_edges(), a.mean, a.stddev,
                         b.mean, b.stddev));
}

Outcome criterion_datasets(const std::optional<DatasetPaths>& th,
                           const std::optional<DatasetPaths>& ph) {
  if (!th && !ph) return {Verdict::kSkip, "no dataset paths given"};
  std::vector<Outcome> parts;
  if (th) parts.push_back(dataset_check(*th, kHepTh, "Hep-Th"));
  if (ph) parts.push_back(dataset_check(*ph, kHepPh, "Hep-Ph"));
  Outcome out{Verdict::kPass, ""};
  for (const auto& p : parts) {
    if (p.verdict == Verdict::kFail) out.verdict = Verdict::kFail;
    out.detail += (out.detail.empty() ? "" : "; ") + p.detail;
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  std::vector<int> only;
  std::string th_edges, th_dates, ph_edges, ph_dates;
  app.add_option("--only", only, "Criteria to run (default all)");
  app.add_option("--hepth-edges", th_edges);
  app.add_option("--hepth-dates", th_dates);
  app.add_option("--hepph-edges", ph_edges);
  app.add_option("--hepph-dates", ph_dates);
  CLI11_PARSE(app, argc, argv);

  std::optional<DatasetPaths> th, ph;
  if (!th_edges.empty()) th = DatasetPaths{th_edges, th_dates};
  if (!ph_edges.empty()) ph = DatasetPaths{ph_edges, ph_dates};

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"k-core oracle equivalence", criterion_kcore_oracle},
      {"estimator hand oracle", criterion_hand_oracle},
      {"BA baseline alpha", criterion_ba_baseline},
      {"hybrid kernel round trip", criterion_hybrid_round_trip},
      {"localized laws", criterion_localized_laws},
      {"normalization and monotonicity", criterion_normalization},
      {"shell-degree relation gamma > 1", criterion_shell_degree},
      {"dataset reproduction (optional)", [&] { return criterion_datasets(th, ph); }},
  };

  int failures = 0, ran = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i + 1);
    if (!only.empty() && std::find(only.begin(), only.end(), id) == only.end()) continue;
    const auto& [name, check] = criteria[i];
    const Outcome o = check();
    const char* tag = o.verdict == Verdict::kPass ? "PASS" : o.verdict == Verdict::kFail ? "FAIL" : "SKIP";
    std::printf("[%s] %d %s: %s\n", tag, id, name.c_str(), o.detail.c_str());
    std::fflush(stdout);
    failures += o.verdict == Verdict::kFail;
    ran += o.verdict != Verdict::kSkip;
  }
  if (failures > 0) return 1;
  return ran == 0 ? kExitSkipped : 0;
}
