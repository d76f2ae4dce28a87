#include "anosov/exponents.hpp"

#include "anosov/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace anosov {

double evaluate_form(const LinearForm& phi, const CartanVector& v) { return phi(v); }

CountSeries CountSeries::from_points(double bin, std::vector<long long> index, std::vector<std::uint64_t> counts) {
  if (!(bin > 0.0) || !std::isfinite(bin)) throw InputError("bin width must be positive");
  if (index.size() != counts.size()) throw InputError("count series: index and count lengths differ");
  if (index.empty()) throw InputError("count series is empty");
  for (std::size_t i = 1; i < index.size(); ++i) {
    if (index[i] <= index[i - 1]) throw InputError("count series thresholds must increase");
    if (counts[i] < counts[i - 1]) throw InputError("count series counts must be nondecreasing");
  }
  CountSeries cs;
  cs.bin = bin;
  cs.thresholds.reserve(index.size());
  for (long long k : index) cs.thresholds.push_back(static_cast<double>(k) * bin);
  cs.index = std::move(index);
  cs.counts = std::move(counts);
  return cs;
}

namespace {
constexpr double kBinSnap = 1e-9;
}  // namespace

FormHistogram::FormHistogram(double bin) : bin_(bin) {
  if (!(bin > 0.0) || !std::isfinite(bin)) throw InputError("bin width must be positive");
}

void FormHistogram::add(double value) {
  if (!std::isfinite(value)) throw NumericError("non-finite form value in histogram");
  // Values within rounding of a bin ceiling belong to the lower bin, so that
  // scaling phi and the bin together gives the same keys.
  ++bins_[static_cast<long long>(std::ceil(value / bin_ - kBinSnap))];
  ++total_;
  max_ = std::max(max_, value);
}

void FormHistogram::merge(const FormHistogram& other) {
  if (other.bin_ != bin_) throw InputError("cannot merge histograms with different bins");
  for (const auto& [k, c] : other.bins_) bins_[k] += c;
  total_ += other.total_;
  max_ = std::max(max_, other.max_);
}

CountSeries FormHistogram::series() const {
  if (bins_.empty()) throw InputError("count series of an empty stream");
  std::vector<long long> index;
  std::vector<std::uint64_t> counts;
  std::uint64_t running = 0;
  auto it = bins_.begin();
  for (long long k = bins_.begin()->first; k <= bins_.rbegin()->first; ++k) {
    if (it != bins_.end() && it->first == k) {
      running += it->second;
      ++it;
    }
    index.push_back(k);
    counts.push_back(running);
  }
  return CountSeries::from_points(bin_, std::move(index), std::move(counts));
}

CountSeries count_series(const std::vector<CartanVector>& entries, const LinearForm& phi, double bin) {
  FormHistogram h(bin);
  for (const auto& v : entries) h.add(phi(v));
  return h.series();
}

namespace {

struct Fit {
  double slope = 0.0;
  double std_error = 0.0;
  double max_local_deviation = 0.0;
};

// Regression in index units; callers divide by the bin width.
Fit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  const auto m = static_cast<double>(x.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= m;
  my /= m;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  Fit f;
  if (sxx <= 0.0) return f;
  f.slope = sxy / sxx;
  const double icept = my - f.slope * mx;
  double ssr = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (icept + f.slope * x[i]);
    ssr += r * r;
  }
  f.std_error = x.size() > 2 ? std::sqrt(ssr / (m - 2.0) / sxx) : 0.0;
  for (std::size_t i = 1; i < x.size(); ++i) {
    const double local = (y[i] - y[i - 1]) / (x[i] - x[i - 1]);
    f.max_local_deviation = std::max(f.max_local_deviation, std::abs(local - f.slope));
  }
  return f;
}

}  // namespace

ExponentEstimate critical_exponent(const CountSeries& cs, const WindowOptions& opts) {
  if (cs.size() == 0) throw InputError("critical exponent of an empty count series");
  ExponentEstimate est;
  const double bin = cs.bin;

  if (cs.counts.front() == cs.counts.back()) {
    est.degenerate = true;
    est.low_confidence = true;
    est.method = "degenerate: counts constant";
    est.window_lo = cs.thresholds.front();
    est.window_hi = cs.thresholds.back();
    est.count_at_hi = cs.counts.back();
    est.points = static_cast<int>(cs.size());
    return est;
  }

  // The histogram maximum is not stored in the series; the last threshold is
  // the ceiling of it, which the truncation rule treats as R_max.
  const double hi_limit = std::min(cs.thresholds.back() - opts.truncation, opts.complete_up_to);
  auto usable = [&](std::size_t i, std::uint64_t min_count) {
    if (cs.counts[i] < min_count) return false;
    if (opts.log_correction && cs.index[i] <= 0) return false;
    return true;
  };

  std::vector<std::size_t> chosen;
  for (std::size_t i = 0; i < cs.size(); ++i) {
    if (usable(i, opts.min_count) && cs.thresholds[i] <= hi_limit) chosen.push_back(i);
  }
  std::ostringstream method;
  method << (opts.log_correction ? "ols log(N*R) vs R" : "ols log N vs R") << ", bin " << bin;
  if (static_cast<int>(chosen.size()) < opts.min_points) {
    chosen.clear();
    for (std::size_t i = 0; i < cs.size(); ++i) {
      if (usable(i, 1)) chosen.push_back(i);
    }
    est.low_confidence = true;
    method << ", low-confidence: fewer than " << opts.min_points
           << " thresholds in the window, fitted every threshold with N >= 1";
  } else {
    method << ", window N >= " << opts.min_count << " and R <= " << hi_limit;
  }
  if (chosen.size() < 2) {
    est.degenerate = true;
    est.low_confidence = true;
    est.method = method.str() + ", degenerate: fewer than 2 thresholds";
    if (!chosen.empty()) {
      est.window_lo = est.window_hi = cs.thresholds[chosen.front()];
      est.count_at_hi = cs.counts[chosen.front()];
    }
    est.points = static_cast<int>(chosen.size());
    return est;
  }

  std::vector<double> x;
  std::vector<double> y;
  for (std::size_t i : chosen) {
    const double n = static_cast<double>(cs.counts[i]);
    x.push_back(static_cast<double>(cs.index[i]));
    y.push_back(opts.log_correction ? std::log(n * cs.thresholds[i]) : std::log(n));
  }
  const Fit f = fit_line(x, y);
  est.value = std::max(0.0, f.slope / bin);
  est.std_error = f.std_error / bin;
  est.diagnostics = f.max_local_deviation / bin;
  est.window_lo = cs.thresholds[chosen.front()];
  est.window_hi = cs.thresholds[chosen.back()];
  est.count_at_hi = cs.counts[chosen.back()];
  est.points = static_cast<int>(chosen.size());
  est.method = method.str();
  return est;
}

LayeredCounter::LayeredCounter(double bin) : hist_(bin) {}

void LayeredCounter::add(std::size_t length, double value) {
  hist_.add(value);
  auto [it, inserted] = min_by_length_.try_emplace(length, value);
  if (!inserted) it->second = std::min(it->second, value);
  if (length == 1) generator_max_ = std::max(generator_max_, value);
}

void LayeredCounter::merge(const LayeredCounter& other) {
  hist_.merge(other.hist_);
  for (const auto& [len, v] : other.min_by_length_) {
    auto [it, inserted] = min_by_length_.try_emplace(len, v);
    if (!inserted) it->second = std::min(it->second, v);
  }
  generator_max_ = std::max(generator_max_, other.generator_max_);
}

std::size_t LayeredCounter::max_length() const {
  return min_by_length_.empty() ? 0 : min_by_length_.rbegin()->first;
}

WindowOptions LayeredCounter::window(WindowOptions base) const {
  base.truncation = generator_max_;
  const std::size_t top = max_length();
  double outer = std::numeric_limits<double>::infinity();
  for (const auto& [len, v] : min_by_length_) {
    if (len > 0 && len + 1 >= top) outer = std::min(outer, v);
  }
  base.complete_up_to = outer;
  return base;
}

ExponentEstimate LayeredCounter::estimate(WindowOptions base) const {
  return critical_exponent(hist_.series(), window(base));
}

ExponentEstimate critical_exponent(const std::vector<BallEntry>& ball, const LinearForm& phi, double bin) {
  if (ball.empty()) throw InputError("exponent estimate of an empty ball");
  LayeredCounter c(bin);
  for (const auto& e : ball) c.add(e.word.length(), phi(e.mu));
  ExponentEstimate est = c.estimate();
  est.form = phi.coeffs();
  return est;
}

ExponentEstimate entropy(const std::vector<ConjClassEntry>& classes, const LinearForm& phi, double bin) {
  if (classes.empty()) throw InputError("entropy estimate of an empty class list");
  LayeredCounter c(bin);
  for (const auto& e : classes) c.add(e.representative.length(), phi(e.lambda));
  WindowOptions opts;
  opts.log_correction = true;
  ExponentEstimate est = c.estimate(opts);
  est.form = phi.coeffs();
  return est;
}

double poincare_series(const std::vector<CartanVector>& entries, const LinearForm& phi, double s) {
  if (!(s >= 0.0)) throw InputError("Poincare series exponent must be nonnegative");
  double sum = 0.0;
  for (const auto& v : entries) sum += std::exp(-s * phi(v));
  return sum;
}

}  // namespace anosov
