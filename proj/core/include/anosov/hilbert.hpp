#pragma once

#include "anosov/exponents.hpp"
#include "anosov/limit_set.hpp"
#include "anosov/linalg.hpp"
#include "anosov/words.hpp"

#include <string>
#include <utility>
#include <vector>

namespace anosov {

/// A properly convex domain in P(R^d) given by one of two parametric models:
///  - ellipsoid(n): lines where x_1^2 + ... + x_{n-1}^2 - x_n^2 < 0 (d = n);
///  - psd_cone(k): positive definite symmetric k x k matrices, in the
///    orthonormal coordinates S_ii, sqrt(2) S_ij (i < j), lexicographic
///    (d = k(k+1)/2, matching sym_square).
class ConvexDomain {
 public:
  enum class Model { Ellipsoid, PsdCone };

  static ConvexDomain ellipsoid(int n);
  static ConvexDomain psd_cone(int k);

  Model model() const { return model_; }
  /// n for the ellipsoid, k for the psd cone.
  int size() const { return size_; }
  /// Dimension of the vector space containing the cone.
  int dim() const;
  std::string name() const;

  /// Bilinear form x^T J y of the ellipsoid model.
  double form(const Vec& x, const Vec& y) const;
  /// Interior test: q(unit x) < -1e-10 (ellipsoid) or min eigenvalue of the
  /// trace-normalized matrix > 1e-10 (psd cone).
  bool interior(const Vec& x) const;

 private:
  ConvexDomain(Model m, int size) : model_(m), size_(size) {}
  Model model_;
  int size_;
};

/// Orthonormal coordinates of a symmetric matrix and back.
Vec psd_vector(const Mat& s);
Mat psd_matrix(const Vec& v, int k);
/// (x1, x2, x3) -> [[x3 + x1, x2], [x2, x3 - x1]], whose determinant is
/// x3^2 - x1^2 - x2^2; maps the disk ellipsoid(3) onto psd_cone(2).
Vec disk_to_psd(const Vec& x);

struct BoundaryPoint {
  ProjPoint point;
  DualProjPoint tangent;  // supporting hyperplane J p
};

/// Ellipsoid model only. Throws InputError unless |q(unit v)| <= 1e-9.
BoundaryPoint boundary_point(const ConvexDomain& omega, const Vec& v);
/// Radial projection (x', x_n) -> (|x_n| x'/|x'|, |x_n|) onto the boundary.
BoundaryPoint project_to_boundary(const ConvexDomain& omega, const Vec& v);

/// Hilbert distance. Ellipsoid: cross-ratio of the chord, with the boundary
/// intersections from a quadratic solve. Psd cone: log sigma_1 - log sigma_k
/// of L_x^-1 L_y for Cholesky factors (x = L_x L_x^T).
/// Throws InputError for points not in the interior or of the wrong size.
double hilbert_distance(const ConvexDomain& omega, const Vec& x, const Vec& y);
double hilbert_distance(const ConvexDomain& omega, const ProjPoint& x, const ProjPoint& y);

/// Cross-ratio route for both models (the psd chord meets the boundary at the
/// generalized eigenvalues of (y, x)).
double hilbert_distance_chord(const ConvexDomain& omega, const Vec& x, const Vec& y);

/// Ellipsoid distance from Gram data q(x), q(y) < 0 and b(x, y) of two points
/// on the same sheet.
double hilbert_distance_gram(double qx, double qy, double bxy);

struct TranslationLength {
  double value = 0.0;
  bool degenerate = false;
  std::string reason;
};

/// (lambda_1 - lambda_n)/2; tagged degenerate unless both gaps exceed 1e-9.
TranslationLength translation_length_hilbert(const SquareMatrix& g);

inline constexpr double kDefaultGromovT = 12.0;

/// (xi | eta)_base in the ellipsoid model: bracket at Hilbert distance T and
/// 2T along the rays from base, Richardson-extrapolated in e^-T. The points
/// are carried as base + beta xi with exact Gram entries, so large T does not
/// lose precision. Returns +infinity when xi = eta. Throws for T < 5.
double gromov_product(const ConvexDomain& omega, const ProjPoint& base, const BoundaryPoint& xi,
                      const BoundaryPoint& eta, double T = kDefaultGromovT);

/// exp(-(xi | eta)_base).
double gromov_quasi_distance(const ConvexDomain& omega, const ProjPoint& base, const BoundaryPoint& xi,
                             const BoundaryPoint& eta, double T = kDefaultGromovT);

struct ComparisonRow {
  std::size_t p;
  std::size_t q;
  double d;
  double d_star;
  double d_x;
  double ratio;
  int band;  // floor(-log2 d)
};

struct BandMaximum {
  int band;
  std::size_t count;
  double max_ratio;
};

struct ComparisonResult {
  double max_ratio = 0.0;
  std::vector<BandMaximum> bands;  // ascending band index
  std::vector<ComparisonRow> rows;
  std::size_t skipped = 0;
};

/// d_x(p, q) / sqrt(d(p, q) d*(p*, q*)) per pair; coincident pairs
/// (d < 1e-12) are skipped and counted.
ComparisonResult comparison_ratio(const ConvexDomain& omega, const ProjPoint& base,
                                  const std::vector<BoundaryPoint>& points,
                                  const std::vector<std::pair<std::size_t, std::size_t>>& pairs);

/// box_dimension under gromov_quasi_distance, points sorted lexicographically.
DimensionEstimate quasi_metric_dimension(const std::vector<BoundaryPoint>& points, const ConvexDomain& omega,
                                         const ProjPoint& base, int scale_count = kDefaultScales,
                                         std::size_t min_points = kMinBoxPoints);

/// d_H(base, g_w base), evaluated as d_H(u^-1 base, v base) for w = uv split
/// in the middle so that neither point is pushed far towards the boundary.
double orbit_distance(const ConvexDomain& omega, const GeneratorSet& gs, const ProjPoint& base, const Word& w);

/// Exponent of #{gamma in the ball : d_H(base, gamma base) <= R}, same window
/// rules as the Cartan estimates. Generators must preserve the ellipsoid form
/// up to scale. Throws InputError otherwise.
ExponentEstimate hilbert_orbit_exponent(const ConvexDomain& omega, const GeneratorSet& gs, const ProjPoint& base,
                                        int max_len, double bin = kDefaultBin,
                                        std::uint64_t budget = kDefaultBudget);

}  // namespace anosov
