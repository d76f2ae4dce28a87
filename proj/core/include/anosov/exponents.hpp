#pragma once

#include "anosov/linalg.hpp"
#include "anosov/words.hpp"

#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <vector>

namespace anosov {

inline constexpr double kDefaultBin = 0.25;

/// phi(v) = sum c_i v_i. Throws InputError on dimension mismatch.
double evaluate_form(const LinearForm& phi, const CartanVector& v);

/// N_k = #{entries with phi <= thresholds[k]}, thresholds = index[k] * bin.
struct CountSeries {
  double bin = kDefaultBin;
  std::vector<long long> index;
  std::vector<double> thresholds;
  std::vector<std::uint64_t> counts;

  /// Validates increasing thresholds and nondecreasing counts.
  static CountSeries from_points(double bin, std::vector<long long> index, std::vector<std::uint64_t> counts);
  std::size_t size() const { return counts.size(); }
};

/// Histogram of phi-values keyed by ceil(phi / bin). Merging is exact integer
/// addition, so any partition of the input gives identical series.
class FormHistogram {
 public:
  explicit FormHistogram(double bin = kDefaultBin);

  void add(double value);
  void merge(const FormHistogram& other);

  double bin() const { return bin_; }
  std::uint64_t total() const { return total_; }
  bool empty() const { return total_ == 0; }
  double max_value() const { return max_; }

  /// Cumulative counts at every bin multiple from the lowest to the highest
  /// occupied key. Throws InputError when empty.
  CountSeries series() const;

 private:
  double bin_;
  std::map<long long, std::uint64_t> bins_;
  std::uint64_t total_ = 0;
  double max_ = -std::numeric_limits<double>::infinity();
};

CountSeries count_series(const std::vector<CartanVector>& entries, const LinearForm& phi, double bin = kDefaultBin);

struct ExponentEstimate {
  double value = 0.0;
  double std_error = 0.0;
  double window_lo = 0.0;
  double window_hi = 0.0;
  std::uint64_t count_at_hi = 0;
  int points = 0;
  std::string method;
  /// Largest deviation of a local (adjacent-threshold) slope from the fit.
  double diagnostics = 0.0;
  bool low_confidence = false;
  bool degenerate = false;
  std::vector<double> form;
};

/// Window rules: thresholds with N >= min_count, at most max_value - truncation,
/// and at most complete_up_to.
struct WindowOptions {
  double truncation = 0.0;
  double complete_up_to = std::numeric_limits<double>::infinity();
  std::uint64_t min_count = 10;
  int min_points = 6;
  /// Regress log(N * R) instead of log N (counts with a 1/R prefactor, as for
  /// closed geodesics).
  bool log_correction = false;
};

/// Least-squares slope of log N against R over the window. With fewer than
/// min_points usable thresholds the fit falls back to every threshold with
/// N >= 1 and is tagged low-confidence; constant counts give value 0 tagged
/// degenerate.
ExponentEstimate critical_exponent(const CountSeries& cs, const WindowOptions& opts = {});

/// Histogram that also tracks, per word length, the smallest value seen and
/// the largest value among length-1 words. Merging is exact.
class LayeredCounter {
 public:
  explicit LayeredCounter(double bin = kDefaultBin);

  void add(std::size_t length, double value);
  void merge(const LayeredCounter& other);

  const FormHistogram& histogram() const { return hist_; }
  std::size_t max_length() const;

  /// base with truncation = largest length-1 value and complete_up_to =
  /// smallest value on the two outermost lengths.
  WindowOptions window(WindowOptions base = {}) const;
  ExponentEstimate estimate(WindowOptions base = {}) const;

 private:
  FormHistogram hist_;
  std::map<std::size_t, double> min_by_length_;
  double generator_max_ = 0.0;
};

/// Ball-level estimate: histogram over mu, window truncated by the largest
/// generator phi-value and by the smallest phi-value on the two outermost
/// spheres.
ExponentEstimate critical_exponent(const std::vector<BallEntry>& ball, const LinearForm& phi,
                                   double bin = kDefaultBin);

/// Conjugacy-class estimate over phi(lambda), with the 1/R correction.
ExponentEstimate entropy(const std::vector<ConjClassEntry>& classes, const LinearForm& phi,
                         double bin = kDefaultBin);

/// Partial sum of exp(-s phi(mu)) in input order.
double poincare_series(const std::vector<CartanVector>& entries, const LinearForm& phi, double s);

}  // namespace anosov
