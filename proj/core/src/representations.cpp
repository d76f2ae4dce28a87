#include "anosov/representations.hpp"

#include "anosov/errors.hpp"

#include <cmath>

namespace anosov {

namespace {

std::vector<std::vector<int>> combinations(int n, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> idx(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
  while (true) {
    out.push_back(idx);
    int i = k - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) break;
    ++idx[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  }
  return out;
}

Mat compound_matrix(const Mat& m, int k) {
  const auto subsets = combinations(static_cast<int>(m.rows()), k);
  const auto size = static_cast<Eigen::Index>(subsets.size());
  Mat out(size, size);
  Mat sub(k, k);
  for (Eigen::Index r = 0; r < size; ++r) {
    const auto& rows = subsets[static_cast<std::size_t>(r)];
    for (Eigen::Index c = 0; c < size; ++c) {
      const auto& cols = subsets[static_cast<std::size_t>(c)];
      for (int a = 0; a < k; ++a) {
        for (int b = 0; b < k; ++b) {
          sub(a, b) = m(rows[static_cast<std::size_t>(a)], cols[static_cast<std::size_t>(b)]);
        }
      }
      out(r, c) = sub.determinant();
    }
  }
  return out;
}

Mat sym_square_matrix(const Mat& g) {
  const auto n = g.rows();
  const auto size = n * (n + 1) / 2;
  std::vector<std::pair<Eigen::Index, Eigen::Index>> basis;
  basis.reserve(static_cast<std::size_t>(size));
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i; j < n; ++j) basis.emplace_back(i, j);
  }
  const double r2 = std::sqrt(2.0);
  Mat out(size, size);
  for (Eigen::Index c = 0; c < size; ++c) {
    const auto [i, j] = basis[static_cast<std::size_t>(c)];
    for (Eigen::Index r = 0; r < size; ++r) {
      const auto [k, l] = basis[static_cast<std::size_t>(r)];
      double v;
      if (i == j) {
        v = (k == l) ? g(k, i) * g(k, i) : r2 * g(k, i) * g(l, i);
      } else {
        v = (k == l) ? r2 * g(k, i) * g(k, j) : g(k, i) * g(l, j) + g(k, j) * g(l, i);
      }
      out(r, c) = v;
    }
  }
  return out;
}

std::vector<double> poly_mul(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> out(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Polynomials in (x, y) homogeneous of degree d are indexed by the power of y.
Mat sym_power_matrix(const Mat& g, int d) {
  const std::vector<double> gx{g(0, 0), g(1, 0)};  // image of x
  const std::vector<double> gy{g(0, 1), g(1, 1)};  // image of y
  Mat out = Mat::Zero(d + 1, d + 1);
  for (int m = 0; m <= d; ++m) {
    std::vector<double> p{1.0};
    for (int i = 0; i < d - m; ++i) p = poly_mul(p, gx);
    for (int i = 0; i < m; ++i) p = poly_mul(p, gy);
    for (int r = 0; r <= d; ++r) {
      out(r, m) = p[static_cast<std::size_t>(r)] * std::sqrt(binomial(d, m) / binomial(d, r));
    }
  }
  return out;
}

Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

}  // namespace

SquareMatrix exterior_power(const SquareMatrix& g, int i) {
  const int n = g.dim();
  if (i < 1 || i > n - 1) {
    throw InputError("exterior power index " + std::to_string(i) + " outside [1, " + std::to_string(n - 1) + "]");
  }
  if (i == 1) return g;
  if (binomial(n, i) > kMaxDim) throw InputError("exterior power dimension exceeds " + std::to_string(kMaxDim));
  return SquareMatrix::from_pair(compound_matrix(g.matrix(), i), compound_matrix(g.inverse_matrix(), i));
}

SquareMatrix sym_square(const SquareMatrix& g) {
  const int n = g.dim();
  if (n * (n + 1) / 2 > kMaxDim) throw InputError("symmetric square dimension exceeds " + std::to_string(kMaxDim));
  return SquareMatrix::from_pair(sym_square_matrix(g.matrix()), sym_square_matrix(g.inverse_matrix()));
}

SquareMatrix tensor_product(const SquareMatrix& g, const SquareMatrix& h) {
  if (g.dim() * h.dim() > kMaxDim) throw InputError("tensor product dimension exceeds " + std::to_string(kMaxDim));
  return SquareMatrix::from_pair(kron(g.matrix(), h.matrix()), kron(g.inverse_matrix(), h.inverse_matrix()));
}

SquareMatrix dual_rep(const SquareMatrix& g) {
  return SquareMatrix::from_pair(g.inverse_matrix().transpose(), g.matrix().transpose());
}

SquareMatrix principal_sl2(const SquareMatrix& g, int n) {
  if (n < 2) throw InputError("principal embedding needs n >= 2");
  if (g.dim() != 2) throw InputError("principal embedding takes an SL(2) element");
  if (n > kMaxDim) throw InputError("principal embedding dimension exceeds " + std::to_string(kMaxDim));
  return SquareMatrix::from_pair(sym_power_matrix(g.matrix(), n - 1), sym_power_matrix(g.inverse_matrix(), n - 1));
}

Cocycle::Cocycle(std::vector<Vec> generator_values) : values_(std::move(generator_values)) {
  for (const auto& v : values_) {
    if (v.size() != 2 || !v.allFinite()) throw InputError("cocycle values must be finite vectors of R^2");
  }
}

Cocycle Cocycle::coboundary(const GeneratorSet& gs, const Vec& v) {
  if (gs.dim() != 2 || v.size() != 2) throw InputError("coboundary needs an SL(2) generator set and v in R^2");
  std::vector<Vec> vals;
  for (int i = 0; i < gs.rank(); ++i) vals.push_back(gs.generator(i).matrix() * v - v);
  return Cocycle(std::move(vals));
}

Vec Cocycle::evaluate(const GeneratorSet& gs, const Word& w) const {
  if (gs.dim() != 2 || static_cast<std::size_t>(gs.rank()) != values_.size()) {
    throw InputError("cocycle does not match the generator set");
  }
  Vec u = Vec::Zero(2);
  Mat prefix = Mat::Identity(2, 2);
  for (Letter l : w.letters()) {
    const auto gen = static_cast<std::size_t>(generator_of(l));
    const Vec step = (l & 1u) ? Vec(-(gs.generator(static_cast<int>(gen)).inverse_matrix() * values_[gen]))
                              : values_[gen];
    u += prefix * step;
    prefix = prefix * gs.letter_matrix(l).matrix();
  }
  return u;
}

SquareMatrix affine_block(const SquareMatrix& g, const Vec& u) {
  const int n = g.dim();
  if (u.size() != n) throw InputError("affine block translation has the wrong size");
  Mat m = Mat::Identity(n + 1, n + 1);
  Mat inv = Mat::Identity(n + 1, n + 1);
  m.topLeftCorner(n, n) = g.matrix();
  m.topRightCorner(n, 1) = u;
  inv.topLeftCorner(n, n) = g.inverse_matrix();
  inv.topRightCorner(n, 1) = -g.inverse_matrix() * u;
  return SquareMatrix::from_pair(std::move(m), std::move(inv));
}

SquareMatrix block_embed(const SquareMatrix& g) { return affine_block(g, Vec::Zero(g.dim())); }

}  // namespace anosov
