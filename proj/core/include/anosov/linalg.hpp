#pragma once

#include <Eigen/Dense>

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace anosov {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

inline constexpr int kMaxDim = 256;

/// An element of SL(n, R), stored together with its inverse.
///
/// Word products in Schottky-type groups have condition numbers far beyond
/// 1/eps, so the small singular values of a product cannot be read off the
/// product itself. Keeping the inverse (accumulated as the reversed product of
/// inverse generators) lets every consumer take the *large* singular values of
/// both g and g^-1, which are always well conditioned.
class SquareMatrix {
 public:
  /// Validates finiteness and det > 0, then rescales by det^(1/n).
  /// Throws InputError for non-finite entries or det <= 0.
  static SquareMatrix from_matrix(const Mat& m);
  static SquareMatrix from_rows(std::initializer_list<std::initializer_list<double>> rows);
  static SquareMatrix diagonal(std::span<const double> entries);
  static SquareMatrix identity(int n);

  /// Builds from a matrix and its known inverse (e.g. the image of g^-1 under
  /// a homomorphism). Only shapes and finiteness are checked.
  static SquareMatrix from_pair(Mat m, Mat inv);

  int dim() const { return static_cast<int>(m_.rows()); }
  const Mat& matrix() const { return m_; }
  const Mat& inverse_matrix() const { return inv_; }
  double operator()(int i, int j) const { return m_(i, j); }

  SquareMatrix inverse() const { return SquareMatrix(inv_, m_); }
  SquareMatrix operator*(const SquareMatrix& rhs) const;
  SquareMatrix pow(int k) const;

 private:
  SquareMatrix(Mat m, Mat inv) : m_(std::move(m)), inv_(std::move(inv)) {}

  Mat m_;
  Mat inv_;
};

/// Nonincreasing, zero-sum vector in the positive Weyl chamber of sl(n).
class CartanVector {
 public:
  /// Throws InputError if the values are not nonincreasing (1e-12 slack) or
  /// do not sum to zero (1e-8 slack).
  explicit CartanVector(std::vector<double> values);

  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  const std::vector<double>& values() const { return values_; }

 private:
  std::vector<double> values_;
};

/// phi = sum_i c_i eps_i, evaluated on Cartan vectors.
class LinearForm {
 public:
  explicit LinearForm(std::vector<double> coeffs);

  /// alpha_{i,j} = eps_i - eps_j (1-based).
  static LinearForm root(int i, int j, int n);
  static LinearForm epsilon(int i, int n);
  /// w_i = eps_1 + ... + eps_i.
  static LinearForm weight(int i, int n);
  /// Parses "a12", "a1n", "e1", "w2", "aij" or "custom:c1,...,cn".
  static LinearForm parse(const std::string& text, int n);

  std::size_t size() const { return coeffs_.size(); }
  const std::vector<double>& coeffs() const { return coeffs_; }
  LinearForm scaled(double t) const;

  /// Throws InputError on dimension mismatch.
  double operator()(const CartanVector& v) const;

 private:
  std::vector<double> coeffs_;
};

namespace detail {
struct LineTag {};
struct CovectorTag {};
}  // namespace detail

/// A point of P(R^n) (or of P((R^n)*) for the covector tag), stored as a unit
/// vector whose first coordinate above 1e-10 in magnitude is positive.
template <class Tag>
class ProjectiveVector {
 public:
  /// Throws InputError for a zero or non-finite vector.
  explicit ProjectiveVector(const Vec& v);

  int dim() const { return static_cast<int>(unit_.size()); }
  const Vec& unit() const { return unit_; }
  double operator[](int i) const { return unit_[i]; }

 private:
  Vec unit_;
};

using ProjPoint = ProjectiveVector<detail::LineTag>;
using DualProjPoint = ProjectiveVector<detail::CovectorTag>;

extern template class ProjectiveVector<detail::LineTag>;
extern template class ProjectiveVector<detail::CovectorTag>;

/// Angle in [0, pi/2] between two lines (the round metric of S^{n-1} pushed to
/// projective space). Uses atan2 rather than arccos so that nearby points
/// resolve below 1e-8.
double angle_between(const Vec& a, const Vec& b);

template <class Tag>
double proj_distance(const ProjectiveVector<Tag>& p, const ProjectiveVector<Tag>& q);

extern template double proj_distance(const ProjPoint&, const ProjPoint&);
extern template double proj_distance(const DualProjPoint&, const DualProjPoint&);

struct SymPoint {
  ProjPoint line;
  DualProjPoint covector;
};

/// max of the line and covector distances.
double sym_distance(const SymPoint& a, const SymPoint& b);

/// log singular values, sorted nonincreasing. The top half is read from g, the
/// bottom half from g^-1, the middle (odd n) from the zero-sum constraint.
CartanVector cartan_projection(const SquareMatrix& g);

struct CartanDecomposition {
  Mat u;
  CartanVector mu;
  Mat v;
};

/// g = U exp(diag(mu)) V^T via a full SVD of g (accurate only when g is
/// moderately conditioned; use cartan_projection for long words).
CartanDecomposition cartan_decomposition(const SquareMatrix& g);

/// log moduli of the complex eigenvalues, sorted nonincreasing.
/// Throws NumericError if the eigen-solver fails.
CartanVector jordan_projection(const SquareMatrix& g);

/// (v_1..v_n) -> (-v_n..-v_1).
CartanVector opposition_involution(const CartanVector& v);

inline constexpr double kDefaultProximalityEpsilon = 0.1;

struct Proximality {
  bool proximal = false;
  double gap = 0.0;    // lambda_1 - lambda_2
  double angle = 0.0;  // angle(g+, H-(g)) in radians
  std::string reason;

  bool eps_proximal(double eps = kDefaultProximalityEpsilon) const {
    return proximal && angle > eps;
  }
};

/// Spectral gap and angle between the attracting line and the repelling
/// hyperplane. A missing dominant real eigenvalue is reported in the result,
/// not thrown.
Proximality proximality_gaps(const SquareMatrix& g);

/// Attracting line of g and the attracting point of the dual action (the
/// covector killing the sum of the generalized eigenspaces other than the
/// lambda_n one). Empty if g or g^-1 is not proximal.
std::optional<SymPoint> attracting_pair(const SquareMatrix& g);

/// Unit eigenvectors (right and left) for the dominant eigenvalue, if it is
/// real and strictly dominant (log gap > 1e-9).
struct DominantEigen {
  double value;  // signed eigenvalue
  Vec right;
  Vec left;
};
std::optional<DominantEigen> dominant_eigen(const Mat& m);

}  // namespace anosov
