#include "anosov/hilbert.hpp"

#include "anosov/errors.hpp"
#include "anosov/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>

namespace anosov {

ConvexDomain ConvexDomain::ellipsoid(int n) {
  if (n < 2 || n > kMaxDim) throw InputError("ellipsoid dimension must lie in [2, 256]");
  return ConvexDomain(Model::Ellipsoid, n);
}

ConvexDomain ConvexDomain::psd_cone(int k) {
  if (k < 2 || k * (k + 1) / 2 > kMaxDim) throw InputError("psd cone size out of range");
  return ConvexDomain(Model::PsdCone, k);
}

int ConvexDomain::dim() const { return model_ == Model::Ellipsoid ? size_ : size_ * (size_ + 1) / 2; }

std::string ConvexDomain::name() const {
  return (model_ == Model::Ellipsoid ? "ellipsoid(" : "psd_cone(") + std::to_string(size_) + ")";
}

double ConvexDomain::form(const Vec& x, const Vec& y) const {
  if (model_ != Model::Ellipsoid) throw UnsupportedError("the quadratic form belongs to the ellipsoid model");
  const auto n = x.size();
  return x.head(n - 1).dot(y.head(n - 1)) - x[n - 1] * y[n - 1];
}

Vec psd_vector(const Mat& s) {
  const auto k = s.rows();
  Vec v(k * (k + 1) / 2);
  Eigen::Index idx = 0;
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = i; j < k; ++j) v[idx++] = (i == j) ? s(i, i) : std::sqrt(2.0) * s(i, j);
  }
  return v;
}

Mat psd_matrix(const Vec& v, int k) {
  if (v.size() != k * (k + 1) / 2) throw InputError("psd coordinate vector has the wrong size");
  Mat s(k, k);
  Eigen::Index idx = 0;
  for (int i = 0; i < k; ++i) {
    for (int j = i; j < k; ++j) {
      const double x = v[idx++];
      if (i == j) {
        s(i, i) = x;
      } else {
        s(i, j) = s(j, i) = x / std::sqrt(2.0);
      }
    }
  }
  return s;
}

Vec disk_to_psd(const Vec& x) {
  if (x.size() != 3) throw InputError("disk_to_psd takes a vector of R^3");
  Mat s(2, 2);
  s << x[2] + x[0], x[1], x[1], x[2] - x[0];
  return psd_vector(s);
}

namespace {

void check_size(const ConvexDomain& omega, const Vec& x) {
  if (x.size() != omega.dim()) {
    throw InputError("point of dimension " + std::to_string(x.size()) + " for domain " + omega.name());
  }
  if (!x.allFinite()) throw InputError("non-finite point coordinates");
}

// Unit representative on the sheet x_n > 0.
Vec ellipsoid_rep(const Vec& x) {
  Vec u = x.normalized();
  if (u[u.size() - 1] < 0.0) u = -u;
  return u;
}

// Trace-normalized matrix representative.
Mat psd_rep(const Vec& x, int k) {
  Mat s = psd_matrix(x, k);
  const double tr = s.trace();
  if (tr == 0.0) throw InputError("psd point with zero trace is not in the cone");
  return s / tr;
}

}  // namespace

bool ConvexDomain::interior(const Vec& x) const {
  if (x.size() != dim() || !x.allFinite() || x.norm() == 0.0) return false;
  if (model_ == Model::Ellipsoid) {
    const Vec u = ellipsoid_rep(x);
    return form(u, u) < 0.0;
  }
  const Mat s = psd_matrix(x, size_);
  const double tr = s.trace();
  if (!(tr > 0.0)) return false;
  Eigen::SelfAdjointEigenSolver<Mat> es(s / tr, Eigen::EigenvaluesOnly);
  return es.eigenvalues()[0] > 1e-10;
}

BoundaryPoint boundary_point(const ConvexDomain& omega, const Vec& v) {
  if (omega.model() != ConvexDomain::Model::Ellipsoid) {
    throw UnsupportedError("boundary points are implemented for the ellipsoid model");
  }
  check_size(omega, v);
  const Vec u = ellipsoid_rep(v);
  const double q = omega.form(u, u);
  if (std::abs(q) > 1e-9) {
    std::ostringstream msg;
    msg << "point is not on the boundary of " << omega.name() << " (q = " << q << ")";
    throw InputError(msg.str());
  }
  Vec tangent = u;
  tangent[u.size() - 1] = -u[u.size() - 1];
  return BoundaryPoint{ProjPoint(u), DualProjPoint(tangent)};
}

BoundaryPoint project_to_boundary(const ConvexDomain& omega, const Vec& v) {
  if (omega.model() != ConvexDomain::Model::Ellipsoid) {
    throw UnsupportedError("boundary projection is implemented for the ellipsoid model");
  }
  check_size(omega, v);
  const auto n = v.size();
  const double spatial = v.head(n - 1).norm();
  const double height = std::abs(v[n - 1]);
  if (spatial == 0.0 || height == 0.0) throw InputError("cannot project a point on an axis to the boundary");
  Vec p(n);
  p.head(n - 1) = v.head(n - 1) * (height / spatial);
  p[n - 1] = height;
  return boundary_point(omega, p);
}

double hilbert_distance_gram(double qx, double qy, double bxy) {
  if (!(qx < 0.0 && qy < 0.0)) throw InputError("Gram data of points outside the ellipsoid");
  // Chord x + t (y - x): q(t) = A t^2 + 2 B t + qx. The distance is
  // (log1p(1/(-t_a)) + log1p(1/(t_b - 1)))/2 for the roots t_a < 0 < 1 < t_b;
  // both reciprocals are evaluated without cancellation.
  const double a = std::max(0.0, qx + qy - 2.0 * bxy);
  const double b = bxy - qx;
  const double sd = std::sqrt(b * b - a * qx);
  const double inv_ta = b > 0.0 ? a / (sd + b) : (sd - b) / -qx;
  const double b2 = qy - bxy;
  const double sd2 = std::sqrt(b2 * b2 - a * qy);
  const double inv_tb = b2 < 0.0 ? a / (sd2 - b2) : (b2 + sd2) / -qy;
  return 0.5 * (std::log1p(inv_ta) + std::log1p(inv_tb));
}

namespace {

void require_interior(const ConvexDomain& omega, const Vec& x, const char* which) {
  check_size(omega, x);
  if (!omega.interior(x)) {
    throw InputError(std::string("point ") + which + " is not in the interior of " + omega.name());
  }
}

double ellipsoid_distance(const ConvexDomain& omega, const Vec& x, const Vec& y) {
  const Vec u = ellipsoid_rep(x);
  const Vec w = ellipsoid_rep(y);
  return hilbert_distance_gram(omega.form(u, u), omega.form(w, w), omega.form(u, w));
}

}  // namespace

double hilbert_distance(const ConvexDomain& omega, const Vec& x, const Vec& y) {
  require_interior(omega, x, "x");
  require_interior(omega, y, "y");
  if (omega.model() == ConvexDomain::Model::Ellipsoid) return ellipsoid_distance(omega, x, y);
  const int k = omega.size();
  const Mat sx = psd_rep(x, k);
  const Mat sy = psd_rep(y, k);
  const Mat lx = sx.llt().matrixL();
  const Mat ly = sy.llt().matrixL();
  const Mat m = lx.triangularView<Eigen::Lower>().solve(ly);
  const CartanVector mu = cartan_projection(SquareMatrix::from_matrix(m));
  return mu[0] - mu[mu.size() - 1];
}

double hilbert_distance(const ConvexDomain& omega, const ProjPoint& x, const ProjPoint& y) {
  return hilbert_distance(omega, x.unit(), y.unit());
}

double hilbert_distance_chord(const ConvexDomain& omega, const Vec& x, const Vec& y) {
  require_interior(omega, x, "x");
  require_interior(omega, y, "y");
  if (omega.model() == ConvexDomain::Model::Ellipsoid) return ellipsoid_distance(omega, x, y);
  const int k = omega.size();
  const Mat sx = psd_rep(x, k);
  const Mat sy = psd_rep(y, k);
  // x + t (y - x) is singular at t = 1 / (1 - lambda) for the generalized
  // eigenvalues lambda of (y, x): t_a from lambda_max, t_b from lambda_min.
  // Both extremes come from a largest eigenvalue, which is relatively
  // accurate; lambda_min(y, x) = 1 / lambda_max(x, y).
  Eigen::GeneralizedSelfAdjointEigenSolver<Mat> forward(sy, sx, Eigen::EigenvaluesOnly);
  Eigen::GeneralizedSelfAdjointEigenSolver<Mat> backward(sx, sy, Eigen::EigenvaluesOnly);
  const double lmax = forward.eigenvalues().maxCoeff();
  const double inv_lmin = backward.eigenvalues().maxCoeff();
  if (!(lmax > 0.0 && inv_lmin > 0.0)) throw NumericError("generalized eigenvalue solve left the cone");
  const double inv_ta = lmax - 1.0;      // 1 / (-t_a)
  const double inv_tb = inv_lmin - 1.0;  // 1 / (t_b - 1)
  return 0.5 * (std::log1p(inv_ta) + std::log1p(inv_tb));
}

TranslationLength translation_length_hilbert(const SquareMatrix& g) {
  const CartanVector lambda = jordan_projection(g);
  const std::size_t n = lambda.size();
  TranslationLength out;
  out.value = 0.5 * (lambda[0] - lambda[n - 1]);
  const double top_gap = lambda[0] - lambda[1];
  const double bottom_gap = lambda[n - 2] - lambda[n - 1];
  if (!(top_gap > 1e-9 && bottom_gap > 1e-9)) {
    out.degenerate = true;
    std::ostringstream msg;
    msg << "not biproximal: lambda_1 - lambda_2 = " << top_gap << ", lambda_{n-1} - lambda_n = " << bottom_gap;
    out.reason = msg.str();
  }
  return out;
}

namespace {

void require_ellipsoid(const ConvexDomain& omega, const char* op) {
  if (omega.model() != ConvexDomain::Model::Ellipsoid) {
    throw UnsupportedError(std::string(op) + " is implemented for the ellipsoid model");
  }
}

// Bracket T - d(x_T, y_T)/2 with x_T = o + beta xi, beta = (e^{2T} - 1)/2,
// normalized so that q(o) = -1 and b(o, xi) = b(o, eta) = -1.
double bracket(double c, double T) {
  const double beta = 0.5 * std::expm1(2.0 * T);
  const double q = -1.0 - 2.0 * beta;
  const double bxy = -1.0 - 2.0 * beta + beta * beta * c;
  return T - 0.5 * hilbert_distance_gram(q, q, bxy);
}

}  // namespace

double gromov_product(const ConvexDomain& omega, const ProjPoint& base, const BoundaryPoint& xi,
                      const BoundaryPoint& eta, double T) {
  require_ellipsoid(omega, "the Gromov product");
  if (!(T >= 5.0)) throw InputError("Gromov product needs T >= 5");
  require_interior(omega, base.unit(), "base");
  if (xi.point.dim() != omega.dim() || eta.point.dim() != omega.dim()) {
    throw InputError("boundary point dimension does not match the domain");
  }
  if (proj_distance(xi.point, eta.point) < 1e-12) return std::numeric_limits<double>::infinity();
  const Vec o0 = ellipsoid_rep(base.unit());
  const Vec o = o0 / std::sqrt(-omega.form(o0, o0));
  Vec x = xi.point.unit();
  Vec y = eta.point.unit();
  x /= -omega.form(o, x);
  y /= -omega.form(o, y);
  const double c = std::min(0.0, omega.form(x, y));
  if (c == 0.0) return std::numeric_limits<double>::infinity();
  const double g1 = bracket(c, T);
  const double g2 = bracket(c, 2.0 * T);
  const double r = std::exp(-T);
  return (g2 - r * g1) / (1.0 - r);
}

double gromov_quasi_distance(const ConvexDomain& omega, const ProjPoint& base, const BoundaryPoint& xi,
                             const BoundaryPoint& eta, double T) {
  return std::exp(-gromov_product(omega, base, xi, eta, T));
}

ComparisonResult comparison_ratio(const ConvexDomain& omega, const ProjPoint& base,
                                  const std::vector<BoundaryPoint>& points,
                                  const std::vector<std::pair<std::size_t, std::size_t>>& pairs) {
  require_ellipsoid(omega, "the comparison ratio");
  for (const auto& [p, q] : pairs) {
    if (p >= points.size() || q >= points.size()) throw InputError("pair index out of range");
  }
  struct Slot {
    bool skipped = false;
    ComparisonRow row{};
  };
  const auto slots = parallel_map<Slot>(pairs.size(), [&](std::size_t i) {
    const auto [p, q] = pairs[i];
    Slot s;
    const double d = proj_distance(points[p].point, points[q].point);
    if (d < 1e-12) {
      s.skipped = true;
      return s;
    }
    const double ds = proj_distance(points[p].tangent, points[q].tangent);
    const double dx = gromov_quasi_distance(omega, base, points[p], points[q]);
    s.row = ComparisonRow{p, q, d, ds, dx, dx / std::sqrt(d * ds), static_cast<int>(std::floor(-std::log2(d)))};
    return s;
  });
  ComparisonResult out;
  std::map<int, BandMaximum> bands;
  for (const auto& s : slots) {
    if (s.skipped) {
      ++out.skipped;
      continue;
    }
    out.rows.push_back(s.row);
    out.max_ratio = std::max(out.max_ratio, s.row.ratio);
    auto [it, inserted] = bands.try_emplace(s.row.band, BandMaximum{s.row.band, 0, 0.0});
    it->second.count += 1;
    it->second.max_ratio = std::max(it->second.max_ratio, s.row.ratio);
  }
  for (const auto& [b, m] : bands) out.bands.push_back(m);
  return out;
}

DimensionEstimate quasi_metric_dimension(const std::vector<BoundaryPoint>& points, const ConvexDomain& omega,
                                         const ProjPoint& base, int scale_count, std::size_t min_points) {
  require_ellipsoid(omega, "the quasi-metric dimension");
  std::vector<std::size_t> order(points.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const Vec& u = points[a].point.unit();
    const Vec& v = points[b].point.unit();
    return std::lexicographical_compare(u.begin(), u.end(), v.begin(), v.end());
  });
  return box_dimension(
      points.size(),
      [&](std::size_t i, std::size_t j) {
        return gromov_quasi_distance(omega, base, points[order[i]], points[order[j]]);
      },
      scale_count, min_points);
}

double orbit_distance(const ConvexDomain& omega, const GeneratorSet& gs, const ProjPoint& base, const Word& w) {
  const auto& letters = w.letters();
  const auto half = static_cast<std::ptrdiff_t>(letters.size() / 2);
  const Word u(std::vector<Letter>(letters.begin(), letters.begin() + half));
  const Word v(std::vector<Letter>(letters.begin() + half, letters.end()));
  const Vec x = word_matrix(gs, u).inverse_matrix() * base.unit();
  const Vec y = word_matrix(gs, v).matrix() * base.unit();
  if (omega.model() == ConvexDomain::Model::Ellipsoid) {
    const Vec a = ellipsoid_rep(x);
    const Vec b = ellipsoid_rep(y);
    return hilbert_distance_gram(omega.form(a, a), omega.form(b, b), omega.form(a, b));
  }
  return hilbert_distance(omega, x, y);
}

ExponentEstimate hilbert_orbit_exponent(const ConvexDomain& omega, const GeneratorSet& gs, const ProjPoint& base,
                                        int max_len, double bin, std::uint64_t budget) {
  require_ellipsoid(omega, "the Hilbert orbit exponent");
  if (gs.dim() != omega.dim()) throw InputError("generator dimension does not match the domain");
  require_interior(omega, base.unit(), "base");
  Mat j = Mat::Identity(gs.dim(), gs.dim());
  j(gs.dim() - 1, gs.dim() - 1) = -1.0;
  for (int i = 0; i < gs.rank(); ++i) {
    const Mat& g = gs.generator(i).matrix();
    const Mat pulled = g.transpose() * j * g;
    const double scale = -pulled(gs.dim() - 1, gs.dim() - 1);
    if (!(scale > 0.0) || (pulled / scale - j).cwiseAbs().maxCoeff() > 1e-8) {
      throw InputError("generator " + gs.labels()[static_cast<std::size_t>(i)] + " does not preserve " +
                       omega.name());
    }
  }
  EnumerationOptions opts;
  opts.budget = budget;
  const auto tasks = ball_tasks(gs, max_len);
  const auto parts = parallel_map<LayeredCounter>(tasks.size(), [&](std::size_t t) {
    LayeredCounter c(bin);
    enumerate_ball_task(
        gs, max_len, tasks[t],
        [&](const BallEntry& e) { c.add(e.word.length(), orbit_distance(omega, gs, base, e.word)); }, opts);
    return c;
  });
  LayeredCounter all(bin);
  for (const auto& p : parts) all.merge(p);
  ExponentEstimate est = all.estimate();
  est.method = "hilbert orbit counts, " + est.method;
  return est;
}

}  // namespace anosov
