#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <ostream>
#include <thread>

#include <nlohmann/json.hpp>

#include "pagrowth/error.hpp"
#include "pagrowth/fitting.hpp"

namespace pagrowth {

std::string_view to_string(ExponentKind kind) {
  switch (kind) {
    case ExponentKind::kAlpha:
      return "alpha";
    case ExponentKind::kBeta:
      return "beta";
    case ExponentKind::kGamma:
      return "gamma";
    case ExponentKind::kAlphaBar:
      return "alpha_bar";
    case ExponentKind::kBetaBar:
      return "beta_bar";
  }
  return "alpha";
}

std::optional<ExponentKind> parse_exponent_kind(std::string_view text) {
  for (ExponentKind kind : kAllExponents) {
    if (to_string(kind) == text) return kind;
  }
  return std::nullopt;
}

std::vector<Timestamp> WindowSchedule::cutoffs() const {
  std::vector<Timestamp> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    out.push_back(start + static_cast<Timestamp>(i) * stride);
  }
  return out;
}

WindowSchedule WindowSchedule::yearly_default(const TemporalNetwork& net, Timestamp length,
                                              Timestamp stride) {
  if (length <= 0 || stride <= 0) throw ConfigError("window length and stride must be positive");
  WindowSchedule s;
  s.length = length;
  s.stride = stride;
  if (net.num_edges() == 0) return s;
  s.start = net.time_unit() == TimeUnit::kDays ? next_new_year(net.first_time())
                                               : net.first_time() + stride;
  const Timestamp last = net.last_time();
  if (s.start <= last) s.count = static_cast<std::size_t>((last - s.start) / stride) + 1;
  return s;
}

WindowMeasurement measure_window(const TemporalNetwork& net, Timestamp cutoff,
                                 Timestamp length, DegreeMode mode) {
  WindowMeasurement m;
  m.cutoff = cutoff;
  m.window_end = cutoff + length;
  const Snapshot g(net, cutoff, mode);
  const WindowAttachments w = window_attachments(net, cutoff, length);
  const CorenessMap cm = core_decomposition(g);
  m.new_new = w.new_new;
  m.old_old = w.old_old;
  m.degree = measure_degree_pa(g, w);
  m.coreness = measure_coreness_pa(g, cm, w);
  m.hybrid = measure_hybrid(g, cm, w);
  m.shells = shell_stats(g, cm);
  return m;
}

FitResult fit_exponent(const WindowMeasurement& m, ExponentKind kind,
                       const FitOptions& options) {
  switch (kind) {
    case ExponentKind::kAlpha: {
      FitOptions opts = options;
      opts.cumulative = true;
      return fit_power_law(cumulative_points(m.degree), opts);
    }
    case ExponentKind::kBeta:
      return fit_exponential(cumulative_points(m.coreness), options);
    case ExponentKind::kGamma:
      return fit_shell_degree_relation(m.shells, options);
    case ExponentKind::kAlphaBar:
      return averaged_localized_exponents(m.hybrid, LocalizedAxis::kWithinShell, options).summary;
    case ExponentKind::kBetaBar:
      return averaged_localized_exponents(m.hybrid, LocalizedAxis::kAmongShells, options).summary;
  }
  return {};
}

std::vector<WindowMeasurement> measure_schedule(const TemporalNetwork& net,
                                                const WindowSchedule& schedule,
                                                const PipelineOptions& options) {
  const auto cutoffs = schedule.cutoffs();
  if (cutoffs.empty()) throw ConfigError("window schedule is empty");
  if (schedule.length <= 0) throw ConfigError("window length must be positive");

  std::vector<WindowMeasurement> out(cutoffs.size());
  unsigned threads = options.threads != 0 ? options.threads : std::thread::hardware_concurrency();
  threads = std::clamp<unsigned>(threads, 1, static_cast<unsigned>(cutoffs.size()));

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < cutoffs.size(); i = next++) {
      try {
        out[i] = measure_window(net, cutoffs[i], schedule.length, options.mode);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

ExponentSeries series_from_measurements(std::span<const WindowMeasurement> windows,
                                        ExponentKind kind, const FitOptions& options) {
  ExponentSeries series;
  series.kind = kind;
  if (!windows.empty()) series.length = windows.front().window_end - windows.front().cutoff;
  for (const auto& m : windows) {
    series.windows.push_back(m.cutoff);
    series.values.push_back(fit_exponent(m, kind, options));
  }
  return series;
}

ExponentSeries exponent_time_series(const TemporalNetwork& net, const WindowSchedule& schedule,
                                    ExponentKind kind, const PipelineOptions& options) {
  const auto windows = measure_schedule(net, schedule, options);
  auto series = series_from_measurements(windows, kind, options.fit);
  series.length = schedule.length;
  return series;
}

SeriesSummary summarize(const ExponentSeries& series) {
  SeriesSummary s;
  s.windows_total = series.values.size();
  double sum = 0.0;
  for (const auto& f : series.values) {
    if (!f.sufficient) continue;
    sum += f.exponent;
    ++s.windows_used;
  }
  if (s.windows_used == 0) return s;
  s.mean = sum / static_cast<double>(s.windows_used);
  if (s.windows_used > 1) {
    double ss = 0.0;
    for (const auto& f : series.values) {
      if (f.sufficient) ss += (f.exponent - s.mean) * (f.exponent - s.mean);
    }
    s.stddev = std::sqrt(ss / static_cast<double>(s.windows_used - 1));
  }
  return s;
}

void write_series_report(std::ostream& out, std::span<const ExponentSeries> series,
                         std::string_view dataset) {
  nlohmann::ordered_json report;
  report["dataset"] = dataset;
  report["summary_statistic"] = "mean and sample standard deviation over windows with sufficient fits";
  auto& all = report["series"];
  all = nlohmann::ordered_json::object();
  for (const auto& s : series) {
    const SeriesSummary sum = summarize(s);
    nlohmann::ordered_json entry;
    entry["summary"] = {{"mean", sum.mean},
                        {"std", sum.stddev},
                        {"windows_used", sum.windows_used},
                        {"windows_total", sum.windows_total}};
    auto& rows = entry["windows"];
    rows = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < s.values.size(); ++i) {
      const FitResult& f = s.values[i];
      nlohmann::ordered_json row;
      row["cutoff"] = s.windows[i];
      row["window_end"] = s.windows[i] + s.length;
      row["sufficient"] = f.sufficient;
      row["model"] = to_string(f.model);
      row["n_points"] = f.n_points;
      if (f.sufficient) {
        row["exponent"] = f.exponent;
        row["intercept"] = f.intercept;
        row["r2"] = f.r_squared;
      }
      rows.push_back(std::move(row));
    }
    all[std::string(to_string(s.kind))] = std::move(entry);
  }
  out << report.dump(2) << '\n';
}

}  // namespace pagrowth
