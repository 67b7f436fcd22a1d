#include "pagrowth/fitting.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>

#include "csv.hpp"

namespace pagrowth {

std::string_view to_string(FitModel model) {
  return model == FitModel::kPowerLaw ? "power_law" : "exponential";
}

namespace {

struct Prepared {
  std::vector<double> xs;
  std::vector<double> ys;
  std::size_t excluded = 0;
};

Prepared prepare(std::span<const FitPoint> points, const FitOptions& options, FitModel model) {
  Prepared out;
  std::vector<std::pair<double, double>> kept;
  kept.reserve(points.size());
  for (const auto& p : points) {
    const bool too_small =
        p.class_size != kUnknownClassSize && p.class_size < options.min_class_size;
    const bool outside = (options.x_min && p.x < *options.x_min) ||
                         (options.x_max && p.x > *options.x_max);
    const bool bad_x = (options.exclude_zero && p.x == 0.0) ||
                       (model == FitModel::kPowerLaw && p.x <= 0.0) || !std::isfinite(p.x);
    const bool bad_y = !(p.y > 0.0) || !std::isfinite(p.y);
    if (too_small || outside || bad_x || bad_y) {
      ++out.excluded;
      continue;
    }
    kept.emplace_back(p.x, p.y);
  }
  std::stable_sort(kept.begin(), kept.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });

  // Duplicate abscissae are averaged in y; weights remember how many points
  // each merged value stands for, for the trim bookkeeping.
  std::vector<std::size_t> weight;
  for (std::size_t i = 0; i < kept.size();) {
    std::size_t j = i;
    double sum = 0.0;
    while (j < kept.size() && kept[j].first == kept[i].first) sum += kept[j++].second;
    out.xs.push_back(kept[i].first);
    out.ys.push_back(sum / static_cast<double>(j - i));
    weight.push_back(j - i);
    i = j;
  }

  if (options.tail_trim > 0.0 && !out.xs.empty()) {
    auto drop = static_cast<std::size_t>(
        std::ceil(options.tail_trim * static_cast<double>(out.xs.size()) - 1e-12));
    drop = std::min(drop, out.xs.size());
    for (std::size_t i = out.xs.size() - drop; i < out.xs.size(); ++i) out.excluded += weight[i];
    out.xs.resize(out.xs.size() - drop);
    out.ys.resize(out.ys.size() - drop);
  }
  return out;
}

FitResult least_squares(const Prepared& data, FitModel model, bool cumulative) {
  FitResult r;
  r.model = model;
  r.n_points = data.xs.size();
  r.n_excluded = data.excluded;
  if (data.xs.size() < 3) return r;

  const std::size_t n = data.xs.size();
  std::vector<double> u(n);
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) {
    u[i] = model == FitModel::kPowerLaw ? std::log(data.xs[i]) : data.xs[i];
    v[i] = std::log(data.ys[i]);
  }
  double mu = 0.0;
  double mv = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mu += u[i];
    mv += v[i];
  }
  mu /= static_cast<double>(n);
  mv /= static_cast<double>(n);
  double suu = 0.0;
  double suv = 0.0;
  double svv = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    suu += (u[i] - mu) * (u[i] - mu);
    suv += (u[i] - mu) * (v[i] - mv);
    svv += (v[i] - mv) * (v[i] - mv);
  }
  if (suu <= 0.0) return r;

  r.sufficient = true;
  r.slope = suv / suu;
  r.intercept = mv - r.slope * mu;
  r.exponent = cumulative && model == FitModel::kPowerLaw ? r.slope - 1.0 : r.slope;
  r.fit_lo = data.xs.front();
  r.fit_hi = data.xs.back();
  double ss_res = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double e = v[i] - (r.intercept + r.slope * u[i]);
    ss_res += e * e;
  }
  if (svv > 0.0) {
    r.r_squared = std::clamp(1.0 - ss_res / svv, 0.0, 1.0);
  } else {
    // Flat data is fitted exactly by a zero slope.
    r.r_squared = 1.0;
  }
  return r;
}

}  // namespace

FitResult fit_power_law(std::span<const FitPoint> points, const FitOptions& options) {
  return least_squares(prepare(points, options, FitModel::kPowerLaw), FitModel::kPowerLaw,
                       options.cumulative);
}

FitResult fit_exponential(std::span<const FitPoint> points, const FitOptions& options) {
  return least_squares(prepare(points, options, FitModel::kExponential),
                       FitModel::kExponential, false);
}

std::vector<FitPoint> cumulative_points(const AttachmentStats& stats) {
  std::vector<FitPoint> points;
  if (!stats.has_events) return points;
  for (const auto& row : stats.rows) {
    points.push_back({static_cast<double>(row.value), row.cumulative, row.size});
  }
  return points;
}

std::vector<FitPoint> rate_points(const AttachmentStats& stats) {
  std::vector<FitPoint> points;
  if (!stats.has_events) return points;
  for (const auto& row : stats.rows) {
    points.push_back({static_cast<double>(row.value), row.rate, row.size});
  }
  return points;
}

std::vector<FitPoint> cumulative_points(const LocalizedCurve& curve) {
  std::vector<FitPoint> points;
  for (const auto& p : curve.points) {
    points.push_back({static_cast<double>(p.value), p.cumulative, p.size});
  }
  return points;
}

FitResult fit_shell_degree_relation(const ShellStats& stats, const FitOptions& options) {
  std::vector<FitPoint> points;
  for (const auto& s : stats.shells) {
    points.push_back({static_cast<double>(s.coreness), s.mean_degree, s.size});
  }
  FitOptions opts = options;
  opts.exclude_zero = true;
  opts.cumulative = false;
  return fit_power_law(points, opts);
}

std::vector<ClassFit> localized_exponents(const HybridStats& h, LocalizedAxis axis,
                                          const FitOptions& options) {
  std::vector<ClassFit> fits;
  if (axis == LocalizedAxis::kWithinShell) {
    FitOptions opts = options;
    opts.cumulative = true;
    for (std::uint32_t c0 : shells_of(h)) {
      auto points = cumulative_points(phi_within_shell(h, c0));
      fits.push_back({c0, fit_power_law(points, opts)});
    }
  } else {
    for (std::uint32_t k0 : degrees_of(h)) {
      auto points = cumulative_points(pi_among_shells(h, k0));
      fits.push_back({k0, fit_exponential(points, options)});
    }
  }
  return fits;
}

AveragedExponent averaged_localized_exponents(const HybridStats& h, LocalizedAxis axis,
                                              const FitOptions& options) {
  AveragedExponent out;
  out.per_class = localized_exponents(h, axis, options);
  FitResult& s = out.summary;
  s.model = axis == LocalizedAxis::kWithinShell ? FitModel::kPowerLaw : FitModel::kExponential;
  bool first = true;
  for (const auto& cf : out.per_class) {
    const FitResult& f = cf.fit;
    if (!f.sufficient) continue;
    ++out.classes_averaged;
    s.exponent += f.exponent;
    s.slope += f.slope;
    s.intercept += f.intercept;
    s.r_squared += f.r_squared;
    s.n_points += f.n_points;
    s.n_excluded += f.n_excluded;
    s.fit_lo = first ? f.fit_lo : std::min(s.fit_lo, f.fit_lo);
    s.fit_hi = first ? f.fit_hi : std::max(s.fit_hi, f.fit_hi);
    first = false;
  }
  if (out.classes_averaged > 0) {
    const double n = static_cast<double>(out.classes_averaged);
    s.sufficient = true;
    s.exponent /= n;
    s.slope /= n;
    s.intercept /= n;
    s.r_squared /= n;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Series I/O

void write_series_csv(std::ostream& out, const ExponentSeries& series) {
  out << "window_end,exponent,intercept,r2,n_points,model\n";
  for (std::size_t i = 0; i < series.values.size(); ++i) {
    const FitResult& f = series.values[i];
    out << series.windows[i] + series.length << ',';
    if (f.sufficient) {
      out << csv::format_double(f.exponent) << ',' << csv::format_double(f.intercept) << ','
          << csv::format_double(f.r_squared);
    } else {
      out << ",,";
    }
    out << ',' << f.n_points << ',' << to_string(f.model) << '\n';
  }
}

ExponentSeries read_series_csv(std::istream& in, ExponentKind kind, Timestamp length) {
  ExponentSeries series;
  series.kind = kind;
  series.length = length;
  csv::Reader reader(in, "window_end,exponent,intercept,r2,n_points,model");
  while (auto row = reader.next()) {
    series.windows.push_back(reader.get_int64(*row, 0) - length);
    FitResult f;
    const std::string& model = (*row)[5];
    if (model == "power_law") {
      f.model = FitModel::kPowerLaw;
    } else if (model == "exponential") {
      f.model = FitModel::kExponential;
    } else {
      throw ParseError(reader.line(), "unknown model '" + model + "'");
    }
    f.n_points = reader.get_uint64(*row, 4);
    if (!reader.is_empty(*row, 1)) {
      f.sufficient = true;
      f.exponent = reader.get_double(*row, 1);
      f.intercept = reader.get_double(*row, 2);
      f.r_squared = reader.get_double(*row, 3);
    }
    series.values.push_back(f);
  }
  return series;
}

}  // namespace pagrowth
