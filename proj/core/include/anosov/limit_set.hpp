#pragma once

#include "anosov/linalg.hpp"
#include "anosov/words.hpp"

#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace anosov {

/// Samples whose singular gap falls below this are discarded (line position
/// uncertain beyond 1e-1).
inline const double kQualityGap = std::log(10.0);
/// Below this gap a sample is rejected as evidence the group is not Anosov.
inline constexpr double kMinimalGap = 1e-6;
inline constexpr std::size_t kMinBoxPoints = 500;
inline constexpr int kDefaultScales = 16;

struct SymLimitPoint {
  ProjPoint line;
  DualProjPoint hyperplane;
  Word word;
  double gap;       // mu_1 - mu_2 of the word matrix
  double dual_gap;  // mu_{n-1} - mu_n
};

struct LimitSample {
  std::vector<SymLimitPoint> points;
  std::size_t discarded_low_quality = 0;
  std::size_t rejected = 0;
  std::vector<std::string> diagnostics;
};

/// For `count` reduced words of length word_len, taken at a fixed stride
/// through the lexicographic order with offset seed mod stride: line = top
/// left singular vector of the word matrix, hyperplane = the last left
/// singular vector as a covector (computed as the top left singular vector of
/// the inverse transpose). Samples with min(gap, dual_gap) < min_gap are
/// discarded; throws NumericError if nothing survives.
LimitSample sample_limit_set(const GeneratorSet& gs, int word_len, int count, std::uint64_t seed,
                             double min_gap = kQualityGap);

/// Line and covector of one word matrix, as in sample_limit_set.
SymLimitPoint limit_point_of(const GeneratorSet& gs, const Word& w);

struct DimensionEstimate {
  double value = 0.0;
  double std_error = 0.0;
  std::vector<std::pair<double, std::uint64_t>> scales;  // (eps, N(eps))
  int window_lo = 0;  // indices into scales
  int window_hi = -1;
  std::size_t points = 0;
  double diameter = 0.0;
  bool low_confidence = false;
  bool degenerate = false;
};

/// Symmetric distance between points i and j of a fixed ordering.
using IndexMetric = std::function<double(std::size_t, std::size_t)>;

/// Greedy nested nets at eps_j = diam / 2^j, j = 2 .. scale_count + 1: each
/// scale starts from the previous centres and adds, in index order, every
/// point farther than eps_j from all centres. Slope of log N against
/// log(1/eps) over scales with N <= count/10. Scales after the first with
/// N > count/2 are not computed. The caller fixes the order.
/// Throws InputError for fewer than min_points points.
DimensionEstimate box_dimension(std::size_t count, const IndexMetric& metric, int scale_count = kDefaultScales,
                                std::size_t min_points = kMinBoxPoints);

/// Sorts the coordinate vectors lexicographically, then runs box_dimension.
DimensionEstimate box_dimension(const std::vector<Vec>& coords,
                                const std::function<double(const Vec&, const Vec&)>& metric,
                                int scale_count = kDefaultScales, std::size_t min_points = kMinBoxPoints);

enum class SymMetric { Sym, Line, Dual };
SymMetric parse_sym_metric(const std::string& name);

DimensionEstimate box_dimension(const std::vector<SymLimitPoint>& points, SymMetric metric,
                                int scale_count = kDefaultScales, std::size_t min_points = kMinBoxPoints);

/// Largest dist(g p, [e1]) / (r e^(mu2 - mu1)) over `sample` points p on the
/// sphere of radius r about [e1]. Requires the attracting line of g along e1
/// and its repelling hyperplane span(e2..en) (1e-6 rad), and 0 < r <= 0.1.
double distortion_check(const SquareMatrix& g, double r, int sample);

}  // namespace anosov
