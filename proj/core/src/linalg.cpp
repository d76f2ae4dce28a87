#include "anosov/linalg.hpp"

#include "anosov/errors.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>

namespace anosov {

namespace {

void check_dim(int n) {
  if (n < 2 || n > kMaxDim) {
    throw InputError("matrix dimension " + std::to_string(n) + " outside [2, " +
                     std::to_string(kMaxDim) + "]");
  }
}

bool all_finite(const Mat& m) { return m.allFinite(); }

// Descending singular values; Jacobi for small n (high relative accuracy),
// divide-and-conquer once tensor functors push the size up.
Vec singular_values(const Mat& m) {
  if (m.rows() <= 16) {
    Eigen::JacobiSVD<Mat> svd(m);
    return svd.singularValues();
  }
  Eigen::BDCSVD<Mat> svd(m);
  return svd.singularValues();
}

// Parlett-Reinsch balancing with power-of-two scalings, so the similarity is
// exact in floating point.
Mat balance(Mat a) {
  const int n = static_cast<int>(a.rows());
  constexpr double radix = 2.0;
  constexpr double sqrdx = radix * radix;
  bool done = false;
  while (!done) {
    done = true;
    for (int i = 0; i < n; ++i) {
      double r = 0.0, c = 0.0;
      for (int j = 0; j < n; ++j) {
        if (j != i) {
          c += std::abs(a(j, i));
          r += std::abs(a(i, j));
        }
      }
      if (c == 0.0 || r == 0.0) continue;
      double g = r / radix;
      double f = 1.0;
      const double s = c + r;
      while (c < g) {
        f *= radix;
        c *= sqrdx;
      }
      g = r * radix;
      while (c > g) {
        f /= radix;
        c /= sqrdx;
      }
      if ((c + r) / f < 0.95 * s) {
        done = false;
        g = 1.0 / f;
        a.row(i) *= g;
        a.col(i) *= f;
      }
    }
  }
  return a;
}

std::vector<std::complex<double>> eigenvalues_by_modulus(const Mat& m) {
  Eigen::EigenSolver<Mat> es(balance(m), /*computeEigenvectors=*/false);
  if (es.info() != Eigen::Success) {
    throw NumericError("nonsymmetric eigen-solver did not converge (n = " +
                       std::to_string(m.rows()) + ", max |entry| = " +
                       std::to_string(m.cwiseAbs().maxCoeff()) + ")");
  }
  const auto& ev = es.eigenvalues();
  std::vector<std::complex<double>> out(ev.data(), ev.data() + ev.size());
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return std::abs(a) > std::abs(b);
  });
  return out;
}

// Combines descending log-magnitudes read from g (top half) and from g^-1
// (bottom half) into a zero-sum nonincreasing vector.
std::vector<double> combine_halves(const std::vector<double>& from_g,
                                   const std::vector<double>& from_inv) {
  const std::size_t n = from_g.size();
  const std::size_t half = n / 2;
  std::vector<double> mu(n, 0.0);
  for (std::size_t i = 0; i < half; ++i) {
    mu[i] = from_g[i];
    mu[n - 1 - i] = -from_inv[i];
  }
  if (n % 2 == 1) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (i != half) s += mu[i];
    }
    mu[half] = -s;
  } else {
    const double mean = std::accumulate(mu.begin(), mu.end(), 0.0) / static_cast<double>(n);
    for (auto& x : mu) x -= mean;
  }
  std::stable_sort(mu.begin(), mu.end(), std::greater<>());
  return mu;
}

std::vector<double> log_of(const Vec& v) {
  std::vector<double> out(static_cast<std::size_t>(v.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) out[static_cast<std::size_t>(i)] = std::log(v[i]);
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// SquareMatrix

SquareMatrix SquareMatrix::from_matrix(const Mat& m) {
  if (m.rows() != m.cols()) throw InputError("matrix is not square");
  const int n = static_cast<int>(m.rows());
  check_dim(n);
  if (!all_finite(m)) throw InputError("matrix has non-finite entries");
  Eigen::PartialPivLU<Mat> lu(m);
  const double det = lu.determinant();
  if (!std::isfinite(det) || det <= 0.0) {
    throw InputError("matrix determinant must be positive to renormalize into SL(n), got " +
                     std::to_string(det));
  }
  const double scale = std::pow(det, 1.0 / n);
  Mat inv = lu.inverse();
  return SquareMatrix(m / scale, inv * scale);
}

SquareMatrix SquareMatrix::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
  const auto n = static_cast<Eigen::Index>(rows.size());
  Mat m(n, n);
  Eigen::Index i = 0;
  for (const auto& row : rows) {
    if (static_cast<Eigen::Index>(row.size()) != n) throw InputError("ragged matrix rows");
    Eigen::Index j = 0;
    for (double x : row) m(i, j++) = x;
    ++i;
  }
  return from_matrix(m);
}

SquareMatrix SquareMatrix::diagonal(std::span<const double> entries) {
  const auto n = static_cast<Eigen::Index>(entries.size());
  Mat m = Mat::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) m(i, i) = entries[static_cast<std::size_t>(i)];
  return from_matrix(m);
}

SquareMatrix SquareMatrix::identity(int n) {
  check_dim(n);
  return SquareMatrix(Mat::Identity(n, n), Mat::Identity(n, n));
}

SquareMatrix SquareMatrix::from_pair(Mat m, Mat inv) {
  if (m.rows() != m.cols() || inv.rows() != m.rows() || inv.cols() != m.cols()) {
    throw InputError("matrix/inverse shape mismatch");
  }
  check_dim(static_cast<int>(m.rows()));
  if (!all_finite(m) || !all_finite(inv)) throw InputError("matrix has non-finite entries");
  return SquareMatrix(std::move(m), std::move(inv));
}

SquareMatrix SquareMatrix::operator*(const SquareMatrix& rhs) const {
  if (dim() != rhs.dim()) throw InputError("dimension mismatch in product");
  return SquareMatrix(m_ * rhs.m_, rhs.inv_ * inv_);
}

SquareMatrix SquareMatrix::pow(int k) const {
  if (k < 0) return inverse().pow(-k);
  SquareMatrix result = identity(dim());
  SquareMatrix base = *this;
  while (k > 0) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k > 0) base = base * base;
  }
  return result;
}

// ---------------------------------------------------------------------------
// CartanVector / LinearForm

CartanVector::CartanVector(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) throw InputError("empty Cartan vector");
  double sum = 0.0;
  double scale = 1.0;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) throw InputError("non-finite Cartan vector entry");
    sum += values_[i];
    scale = std::max(scale, std::abs(values_[i]));
    if (i + 1 < values_.size() && values_[i] < values_[i + 1] - 1e-12) {
      throw InputError("Cartan vector is not nonincreasing");
    }
  }
  if (std::abs(sum) > 1e-8 * scale) throw InputError("Cartan vector does not sum to zero");
}

LinearForm::LinearForm(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw InputError("empty linear form");
}

LinearForm LinearForm::root(int i, int j, int n) {
  if (i < 1 || j < 1 || i > n || j > n || i == j) {
    throw InputError("root indices out of range");
  }
  std::vector<double> c(static_cast<std::size_t>(n), 0.0);
  c[static_cast<std::size_t>(i - 1)] = 1.0;
  c[static_cast<std::size_t>(j - 1)] = -1.0;
  return LinearForm(std::move(c));
}

LinearForm LinearForm::epsilon(int i, int n) {
  if (i < 1 || i > n) throw InputError("epsilon index out of range");
  std::vector<double> c(static_cast<std::size_t>(n), 0.0);
  c[static_cast<std::size_t>(i - 1)] = 1.0;
  return LinearForm(std::move(c));
}

LinearForm LinearForm::weight(int i, int n) {
  if (i < 1 || i > n) throw InputError("weight index out of range");
  std::vector<double> c(static_cast<std::size_t>(n), 0.0);
  for (int k = 0; k < i; ++k) c[static_cast<std::size_t>(k)] = 1.0;
  return LinearForm(std::move(c));
}

LinearForm LinearForm::parse(const std::string& text, int n) {
  if (text.rfind("custom:", 0) == 0) {
    std::vector<double> c;
    std::string rest = text.substr(7);
    std::size_t pos = 0;
    while (pos <= rest.size()) {
      const std::size_t comma = rest.find(',', pos);
      const std::string tok = rest.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
      try {
        std::size_t used = 0;
        c.push_back(std::stod(tok, &used));
        if (used != tok.size()) throw std::invalid_argument(tok);
      } catch (const std::exception&) {
        throw InputError("bad coefficient '" + tok + "' in form " + text);
      }
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    if (static_cast<int>(c.size()) != n) {
      throw InputError("custom form has " + std::to_string(c.size()) + " coefficients, expected " +
                       std::to_string(n));
    }
    return LinearForm(std::move(c));
  }
  auto index = [&](char ch) -> int {
    if (ch == 'n') return n;
    if (ch >= '1' && ch <= '9') return ch - '0';
    throw InputError("bad form name: " + text);
  };
  if (text.size() == 3 && text[0] == 'a') return root(index(text[1]), index(text[2]), n);
  if (text.size() == 2 && text[0] == 'e') return epsilon(index(text[1]), n);
  if (text.size() == 2 && text[0] == 'w') return weight(index(text[1]), n);
  throw InputError("unknown form '" + text + "' (expected a12|a1n|e1|w<i>|custom:c1,...,cn)");
}

LinearForm LinearForm::scaled(double t) const {
  std::vector<double> c = coeffs_;
  for (auto& x : c) x *= t;
  return LinearForm(std::move(c));
}

double LinearForm::operator()(const CartanVector& v) const {
  if (v.size() != coeffs_.size()) {
    throw InputError("linear form of size " + std::to_string(coeffs_.size()) +
                     " applied to vector of size " + std::to_string(v.size()));
  }
  double s = 0.0;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) s += coeffs_[i] * v[i];
  return s;
}

// ---------------------------------------------------------------------------
// Projective points

template <class Tag>
ProjectiveVector<Tag>::ProjectiveVector(const Vec& v) {
  if (v.size() < 1 || !v.allFinite()) throw InputError("projective point must be finite");
  const double norm = v.norm();
  if (norm == 0.0) throw InputError("zero vector is not a projective point");
  unit_ = v / norm;
  for (Eigen::Index i = 0; i < unit_.size(); ++i) {
    if (std::abs(unit_[i]) > 1e-10) {
      if (unit_[i] < 0) unit_ = -unit_;
      break;
    }
  }
}

template class ProjectiveVector<detail::LineTag>;
template class ProjectiveVector<detail::CovectorTag>;

double angle_between(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) {
    throw InputError("dimension mismatch: " + std::to_string(a.size()) + " vs " +
                     std::to_string(b.size()));
  }
  const Vec ua = a.normalized();
  const Vec ub = b.normalized();
  const double c = ua.dot(ub);
  const double s = (ua - c * ub).norm();
  return std::atan2(s, std::abs(c));
}

template <class Tag>
double proj_distance(const ProjectiveVector<Tag>& p, const ProjectiveVector<Tag>& q) {
  return angle_between(p.unit(), q.unit());
}

template double proj_distance(const ProjPoint&, const ProjPoint&);
template double proj_distance(const DualProjPoint&, const DualProjPoint&);

double sym_distance(const SymPoint& a, const SymPoint& b) {
  return std::max(proj_distance(a.line, b.line), proj_distance(a.covector, b.covector));
}

// ---------------------------------------------------------------------------
// Projections

CartanVector cartan_projection(const SquareMatrix& g) {
  return CartanVector(combine_halves(log_of(singular_values(g.matrix())),
                                     log_of(singular_values(g.inverse_matrix()))));
}

CartanDecomposition cartan_decomposition(const SquareMatrix& g) {
  Eigen::JacobiSVD<Mat> svd(g.matrix(), Eigen::ComputeFullU | Eigen::ComputeFullV);
  std::vector<double> mu = log_of(svd.singularValues());
  const double mean = std::accumulate(mu.begin(), mu.end(), 0.0) / static_cast<double>(mu.size());
  for (auto& x : mu) x -= mean;
  Mat u = svd.matrixU() * std::exp(mean);
  return {std::move(u), CartanVector(std::move(mu)), svd.matrixV()};
}

CartanVector jordan_projection(const SquareMatrix& g) {
  auto log_moduli = [](const Mat& m) {
    const auto ev = eigenvalues_by_modulus(m);
    std::vector<double> out;
    out.reserve(ev.size());
    for (const auto& z : ev) out.push_back(std::log(std::abs(z)));
    return out;
  };
  return CartanVector(combine_halves(log_moduli(g.matrix()), log_moduli(g.inverse_matrix())));
}

CartanVector opposition_involution(const CartanVector& v) {
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = -v[v.size() - 1 - i];
  return CartanVector(std::move(out));
}

std::optional<DominantEigen> dominant_eigen(const Mat& m) {
  const auto ev = eigenvalues_by_modulus(m);
  if (ev.size() < 2) return std::nullopt;
  const double top = std::abs(ev[0]);
  const double second = std::abs(ev[1]);
  if (top == 0.0 || !(std::log(top) - std::log(second) > 1e-9)) return std::nullopt;
  if (std::abs(ev[0].imag()) > 1e-12 * top) return std::nullopt;
  const double lambda = ev[0].real();
  const Mat shifted = m - lambda * Mat::Identity(m.rows(), m.cols());
  Eigen::JacobiSVD<Mat> svd(shifted, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto last = shifted.cols() - 1;
  return DominantEigen{lambda, svd.matrixV().col(last), svd.matrixU().col(last)};
}

Proximality proximality_gaps(const SquareMatrix& g) {
  Proximality out;
  const auto ev = eigenvalues_by_modulus(g.matrix());
  const double top = std::abs(ev[0]);
  const double second = std::abs(ev[1]);
  out.gap = std::log(top) - std::log(second);
  const auto dom = dominant_eigen(g.matrix());
  if (!dom) {
    out.proximal = false;
    out.reason = "no strictly dominant real eigenvalue";
    return out;
  }
  out.proximal = true;
  out.angle = std::asin(std::min(1.0, std::abs(dom->right.normalized().dot(dom->left.normalized()))));
  return out;
}

std::optional<SymPoint> attracting_pair(const SquareMatrix& g) {
  const auto fwd = dominant_eigen(g.matrix());
  if (!fwd) return std::nullopt;
  const auto dual = dominant_eigen(g.inverse_matrix().transpose());
  if (!dual) return std::nullopt;
  return SymPoint{ProjPoint(fwd->right), DualProjPoint(dual->right)};
}

}  // namespace anosov
