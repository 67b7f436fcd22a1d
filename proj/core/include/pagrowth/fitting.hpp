#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pagrowth/kcore.hpp"
#include "pagrowth/pa_measure.hpp"
#include "pagrowth/temporal_graph.hpp"

namespace pagrowth {

enum class FitModel { kPowerLaw, kExponential };

std::string_view to_string(FitModel model);

inline constexpr std::uint64_t kUnknownClassSize = std::numeric_limits<std::uint64_t>::max();

struct FitPoint {
  double x = 0.0;
  double y = 0.0;
  // Nodes behind this point; kUnknownClassSize skips the size filter.
  std::uint64_t class_size = kUnknownClassSize;
};

struct FitOptions {
  // Points from classes with fewer members are dropped.
  std::uint64_t min_class_size = 5;
  // Fraction of the remaining abscissa values dropped from the top, rounded
  // up (0 disables).
  double tail_trim = 0.01;
  std::optional<double> x_min;
  std::optional<double> x_max;
  // Drop x == 0 (degree-0 / coreness-0 classes).
  bool exclude_zero = true;
  // Power-law fit of a cumulative curve: the reported exponent is slope - 1.
  bool cumulative = false;
};

struct FitResult {
  FitModel model = FitModel::kPowerLaw;
  // False when fewer than 3 usable points remained; numbers are then 0.
  bool sufficient = false;
  double slope = 0.0;
  double exponent = 0.0;
  double intercept = 0.0;
  double fit_lo = 0.0;
  double fit_hi = 0.0;
  double r_squared = 0.0;
  std::size_t n_points = 0;
  // Points dropped by the size, range, sign or tail filters.
  std::size_t n_excluded = 0;
};

// Least squares on (ln x, ln y).
FitResult fit_power_law(std::span<const FitPoint> points, const FitOptions& options = {});
// Least squares on (x, ln y).
FitResult fit_exponential(std::span<const FitPoint> points, const FitOptions& options = {});

// (value, kappa, class size) for each row. Empty for a window without events.
std::vector<FitPoint> cumulative_points(const AttachmentStats& stats);
// (value, T, class size) for each row.
std::vector<FitPoint> rate_points(const AttachmentStats& stats);
std::vector<FitPoint> cumulative_points(const LocalizedCurve& curve);

// <k_c> against c as a power law; shells with c = 0 are excluded. Fewer
// than three positive shells yield an insufficient fit.
FitResult fit_shell_degree_relation(const ShellStats& stats, const FitOptions& options = {});

enum class LocalizedAxis { kWithinShell, kAmongShells };

struct ClassFit {
  std::uint32_t fixed_value = 0;
  FitResult fit;
};

// Per-class fits: Phi(c0, .) as a cumulative power law for every shell, or
// Pi(., k0) as an exponential for every degree class.
std::vector<ClassFit> localized_exponents(const HybridStats& h, LocalizedAxis axis,
                                          const FitOptions& options = {});

struct AveragedExponent {
  // exponent/intercept/r_squared are means over the sufficient class fits,
  // fit range their hull; n_points sums their points.
  FitResult summary;
  std::size_t classes_averaged = 0;
  std::vector<ClassFit> per_class;
};

AveragedExponent averaged_localized_exponents(const HybridStats& h, LocalizedAxis axis,
                                              const FitOptions& options = {});

// ---------------------------------------------------------------------------
// Windowed pipeline

struct WindowSchedule {
  Timestamp start = 0;
  Timestamp stride = kDaysPerYear;
  Timestamp length = kDaysPerYear;
  std::size_t count = 0;

  std::vector<Timestamp> cutoffs() const;

  // Cutoffs every `stride` starting at the first January 1 after the earliest
  // edge (dated data) or one stride after it (ticks), while the cutoff is not
  // past the last edge.
  static WindowSchedule yearly_default(const TemporalNetwork& net,
                                       Timestamp length = kDaysPerYear,
                                       Timestamp stride = kDaysPerYear);
};

// Everything measured for one window.
struct WindowMeasurement {
  Timestamp cutoff = 0;
  Timestamp window_end = 0;
  std::size_t new_new = 0;
  std::size_t old_old = 0;
  AttachmentStats degree;
  AttachmentStats coreness;
  HybridStats hybrid;
  ShellStats shells;
};

WindowMeasurement measure_window(const TemporalNetwork& net, Timestamp cutoff,
                                 Timestamp length, DegreeMode mode = DegreeMode::kUndirected);

enum class ExponentKind { kAlpha, kBeta, kGamma, kAlphaBar, kBetaBar };

inline constexpr ExponentKind kAllExponents[] = {ExponentKind::kAlpha, ExponentKind::kBeta,
                                                 ExponentKind::kGamma, ExponentKind::kAlphaBar,
                                                 ExponentKind::kBetaBar};

std::string_view to_string(ExponentKind kind);
std::optional<ExponentKind> parse_exponent_kind(std::string_view text);

// alpha: kappa(k) power law (slope - 1); beta: kappa(c) exponential; gamma:
// <k_c> power law; alpha_bar / beta_bar: averaged localized exponents.
FitResult fit_exponent(const WindowMeasurement& m, ExponentKind kind,
                       const FitOptions& options = {});

struct ExponentSeries {
  ExponentKind kind = ExponentKind::kAlpha;
  // Window cutoffs, strictly increasing; each window spans
  // [cutoff, cutoff + length).
  std::vector<Timestamp> windows;
  Timestamp length = kDaysPerYear;
  std::vector<FitResult> values;
};

struct PipelineOptions {
  DegreeMode mode = DegreeMode::kUndirected;
  FitOptions fit;
  // Worker threads for per-window work; 0 picks hardware concurrency.
  unsigned threads = 0;
};

// snapshot -> coreness -> measure -> fit for every window. Throws
// ConfigError on an empty schedule.
ExponentSeries exponent_time_series(const TemporalNetwork& net, const WindowSchedule& schedule,
                                    ExponentKind kind, const PipelineOptions& options = {});

// Measures every window of the schedule (in parallel) and returns them in
// schedule order.
std::vector<WindowMeasurement> measure_schedule(const TemporalNetwork& net,
                                                const WindowSchedule& schedule,
                                                const PipelineOptions& options = {});

ExponentSeries series_from_measurements(std::span<const WindowMeasurement> windows,
                                        ExponentKind kind, const FitOptions& options = {});

struct SeriesSummary {
  // Mean and sample standard deviation over windows with sufficient fits.
  double mean = 0.0;
  double stddev = 0.0;
  std::size_t windows_used = 0;
  std::size_t windows_total = 0;
};

SeriesSummary summarize(const ExponentSeries& series);

// CSV: `window_end,exponent,intercept,r2,n_points,model`. Insufficient fits
// leave exponent, intercept and r2 blank.
void write_series_csv(std::ostream& out, const ExponentSeries& series);
ExponentSeries read_series_csv(std::istream& in, ExponentKind kind, Timestamp length);

// JSON bundle of every series plus mean/std summaries.
void write_series_report(std::ostream& out, std::span<const ExponentSeries> series,
                         std::string_view dataset);

}  // namespace pagrowth
