#include "anosov/errors.hpp"
#include "anosov/hilbert.hpp"
#include "anosov/scenario.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace anosov;

namespace {

Vec klein(double x, double y) {
  Vec v(3);
  v << x, y, 1.0;
  return v;
}

Vec boundary(double theta) { return klein(std::cos(theta), std::sin(theta)); }

// In the Klein model the Hilbert metric is the hyperbolic metric, so the
// distance from the centre to a point at Euclidean radius r is artanh(r), and
// in general cosh d = (1 - x.y) / sqrt((1 - |x|^2)(1 - |y|^2)).
double klein_oracle(double x1, double y1, double x2, double y2) {
  const double num = 1.0 - x1 * x2 - y1 * y2;
  const double den = std::sqrt((1.0 - x1 * x1 - y1 * y1) * (1.0 - x2 * x2 - y2 * y2));
  return std::acosh(num / den);
}

Mat random_spd(std::mt19937_64& rng, int k) {
  const Mat a = oracle::random_sl(rng, k);
  return a * a.transpose();
}

// Cross-ratio distance of the psd cone from the generalized eigenvalues of
// (y, x), evaluated in extended precision.
double psd_oracle(const Mat& x, const Mat& y) {
  using MatL = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
  const MatL xl = x.cast<long double>(), yl = y.cast<long double>();
  const MatL l = xl.llt().matrixL();
  const MatL li = l.inverse();
  const MatL c = li * yl * li.transpose();
  Eigen::SelfAdjointEigenSolver<MatL> es(c, Eigen::EigenvaluesOnly);
  return static_cast<double>(0.5L * std::log(es.eigenvalues().maxCoeff() / es.eigenvalues().minCoeff()));
}

}  // namespace

TEST(Hilbert, DiskDistanceFromCentre) {
  const ConvexDomain disk = ConvexDomain::ellipsoid(3);
  EXPECT_NEAR(hilbert_distance(disk, klein(0, 0), klein(0.5, 0)), 0.5 * std::log(3.0), 1e-12);
  EXPECT_NEAR(hilbert_distance_chord(disk, klein(0, 0), klein(0.5, 0)), 0.5 * std::log(3.0), 1e-12);
  EXPECT_EQ(hilbert_distance(disk, klein(0.2, 0.1), klein(0.2, 0.1)), 0.0);
}

TEST(Hilbert, DiskMatchesHyperbolicOracle) {
  const ConvexDomain disk = ConvexDomain::ellipsoid(3);
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(-0.7, 0.7);
  for (int i = 0; i < 200; ++i) {
    const double x1 = u(rng), y1 = u(rng), x2 = u(rng), y2 = u(rng);
    if (x1 * x1 + y1 * y1 >= 0.98 || x2 * x2 + y2 * y2 >= 0.98) continue;
    const double ref = klein_oracle(x1, y1, x2, y2);
    EXPECT_NEAR(hilbert_distance(disk, klein(x1, y1), klein(x2, y2)), ref, 1e-9 * std::max(1.0, ref));
    EXPECT_NEAR(hilbert_distance_chord(disk, klein(x1, y1), klein(x2, y2)), ref, 1e-9 * std::max(1.0, ref));
  }
}

TEST(Hilbert, NearBoundaryStaysAccurate) {
  const ConvexDomain disk = ConvexDomain::ellipsoid(3);
  const double r = 1.0 - 1e-12;
  EXPECT_NEAR(hilbert_distance(disk, klein(0, 0), klein(r, 0)), std::atanh(r), 1e-3);
}

TEST(Hilbert, GramFormulaAgrees) {
  const ConvexDomain disk = ConvexDomain::ellipsoid(3);
  const Vec x = klein(0.3, -0.2), y = klein(-0.5, 0.6);
  const double d = hilbert_distance_gram(disk.form(x, x), disk.form(y, y), disk.form(x, y));
  EXPECT_NEAR(d, hilbert_distance(disk, x, y), 1e-13);
}

TEST(Hilbert, RejectsExteriorPoints) {
  const ConvexDomain disk = ConvexDomain::ellipsoid(3);
  EXPECT_THROW(hilbert_distance(disk, klein(0, 0), klein(1.5, 0)), InputError);
  EXPECT_THROW(hilbert_distance(disk, klein(0, 0), Vec::Zero(4)), InputError);
  const ConvexDomain cone = ConvexDomain::psd_cone(2);
  Mat indefinite = Mat::Identity(2, 2);
  indefinite(1, 1) = -1.0;
  EXPECT_THROW(hilbert_distance(cone, psd_vector(Mat::Identity(2, 2)), psd_vector(indefinite)), InputError);
}

TEST(Hilbert, PsdClosedFormMatchesCrossRatio) {
  std::mt19937_64 rng(32);
  for (int k : {2, 3, 4}) {
    const ConvexDomain cone = ConvexDomain::psd_cone(k);
    for (int i = 0; i < 100; ++i) {
      const Mat sx = random_spd(rng, k), sy = random_spd(rng, k);
      const Vec x = psd_vector(sx), y = psd_vector(sy);
      const double expected = psd_oracle(sx, sy);
      EXPECT_NEAR(hilbert_distance(cone, x, y), expected, 1e-9 * std::max(1.0, expected)) << k;
      EXPECT_NEAR(hilbert_distance_chord(cone, x, y), expected, 1e-9 * std::max(1.0, expected)) << k;
    }
  }
}

TEST(Hilbert, PsdDiagonalExamples) {
  // Generalized eigenvalues of (diag(e^a, e^-a), I) are e^a and e^-a, so the
  // cross ratio gives (1/2) log(e^(2a)) = a.
  const ConvexDomain cone = ConvexDomain::psd_cone(2);
  const Vec id = psd_vector(Mat::Identity(2, 2));
  for (double a : {2.0, 4.0}) {
    Mat d = Mat::Zero(2, 2);
    d(0, 0) = std::exp(a);
    d(1, 1) = std::exp(-a);
    EXPECT_NEAR(hilbert_distance(cone, id, psd_vector(d)), a, 1e-12);
    EXPECT_NEAR(hilbert_distance_chord(cone, id, psd_vector(d)), a, 1e-12);
  }
}

TEST(Hilbert, DiskToPsdIsAnIsometry) {
  const ConvexDomain disk = ConvexDomain::ellipsoid(3);
  const ConvexDomain cone = ConvexDomain::psd_cone(2);
  const Vec x = klein(0.1, 0.4), y = klein(-0.6, -0.3);
  EXPECT_NEAR(hilbert_distance(cone, disk_to_psd(x), disk_to_psd(y)), hilbert_distance(disk, x, y), 1e-12);
}

TEST(Hilbert, TranslationLengthIsOrbitGrowth) {
  const ConvexDomain disk = ConvexDomain::ellipsoid(3);
  std::mt19937_64 rng(33);
  std::uniform_real_distribution<double> s_dist(0.1, 0.3), angle(0.0, 2.0 * std::numbers::pi),
      r_dist(0.0, 0.5);
  const Vec o = klein(0, 0);
  for (int trial = 0; trial < 20; ++trial) {
    const double s = s_dist(rng);
    const SquareMatrix h = so21_boost(r_dist(rng), angle(rng));
    const SquareMatrix g = h * so21_boost(s, angle(rng)) * h.inverse();
    const TranslationLength ell = translation_length_hilbert(g);
    ASSERT_FALSE(ell.degenerate);
    EXPECT_NEAR(ell.value, s, 1e-10);
    const int k = 50;
    const double inc = hilbert_distance(disk, o, g.pow(k).matrix() * o) -
                       hilbert_distance(disk, o, g.pow(k - 1).matrix() * o);
    EXPECT_NEAR(inc, ell.value, 1e-3);
  }
}

TEST(Hilbert, TranslationLengthDegenerateForElliptic) {
  const Mat r = Eigen::AngleAxisd(0.7, Eigen::Vector3d::UnitZ()).toRotationMatrix();
  const TranslationLength ell = translation_length_hilbert(SquareMatrix::from_matrix(r));
  EXPECT_TRUE(ell.degenerate);
  EXPECT_FALSE(ell.reason.empty());
}

TEST(Hilbert, IsometryInvariance) {
  const ConvexDomain disk = ConvexDomain::ellipsoid(3);
  const SquareMatrix g = so21_boost(1.3, 0.4);
  const Vec x = klein(0.3, 0.1), y = klein(-0.2, 0.5);
  EXPECT_NEAR(hilbert_distance(disk, x, y), hilbert_distance(disk, g.matrix() * x, g.matrix() * y), 1e-10);
}

TEST(Gromov, MatchesHyperbolicOracle) {
  const ConvexDomain disk = ConvexDomain::ellipsoid(3);
  const ProjPoint o(klein(0, 0));
  for (double theta : {1e-3, 1e-2, 0.1, 0.5, 1.0, 2.0, 3.0}) {
    const double g = gromov_product(disk, o, boundary_point(disk, boundary(0.0)), boundary_point(disk, boundary(theta)));
    EXPECT_NEAR(g, -std::log(std::sin(theta / 2.0)), 1e-6) << theta;
  }
  const auto xi = boundary_point(disk, boundary(0.3));
  EXPECT_TRUE(std::isinf(gromov_product(disk, o, xi, xi)));
  EXPECT_THROW(gromov_product(disk, o, xi, xi, 2.0), InputError);
  EXPECT_THROW(boundary_point(disk, klein(0.5, 0)), InputError);
}

TEST(Gromov, QuasiDistanceFromOffCentreBase) {
  // Moving the base by an isometry moves the boundary points with it.
  const ConvexDomain disk = ConvexDomain::ellipsoid(3);
  const SquareMatrix g = so21_boost(0.8, 1.1);
  const ProjPoint o(klein(0, 0));
  const ProjPoint go(g.matrix() * klein(0, 0));
  const auto a = boundary_point(disk, boundary(0.2));
  const auto b = boundary_point(disk, boundary(1.4));
  const auto ga = project_to_boundary(disk, g.matrix() * a.point.unit());
  const auto gb = project_to_boundary(disk, g.matrix() * b.point.unit());
  EXPECT_NEAR(gromov_quasi_distance(disk, o, a, b), gromov_quasi_distance(disk, go, ga, gb), 1e-8);
}

TEST(Comparison, RatioBoundedAcrossDyadicBands) {
  const ConvexDomain disk = ConvexDomain::ellipsoid(3);
  const ProjPoint o(klein(0, 0));
  std::vector<BoundaryPoint> pts;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (int band = 1; band <= 14; ++band) {
    const double sep = std::ldexp(1.5, -band);
    for (int i = 0; i < 20; ++i) {
      const double th = 0.3 * i;
      pts.push_back(boundary_point(disk, boundary(th)));
      pts.push_back(boundary_point(disk, boundary(th + sep)));
      pairs.emplace_back(pts.size() - 2, pts.size() - 1);
    }
  }
  const ComparisonResult r = comparison_ratio(disk, o, pts, pairs);
  ASSERT_GE(r.bands.size(), 10u);
  double lo = r.bands.front().max_ratio, hi = lo;
  for (const auto& b : r.bands) {
    lo = std::min(lo, b.max_ratio);
    hi = std::max(hi, b.max_ratio);
  }
  EXPECT_LE(hi / lo, 2.0);
  EXPECT_EQ(r.skipped, 0u);
  EXPECT_EQ(r.rows.size(), pairs.size());
}

TEST(Comparison, SkipsCoincidentPairs) {
  const ConvexDomain disk = ConvexDomain::ellipsoid(3);
  const std::vector<BoundaryPoint> pts{boundary_point(disk, boundary(0.1)), boundary_point(disk, boundary(0.1))};
  const ComparisonResult r = comparison_ratio(disk, ProjPoint(klein(0, 0)), pts, {{0, 1}});
  EXPECT_EQ(r.skipped, 1u);
  EXPECT_THROW(comparison_ratio(disk, ProjPoint(klein(0, 0)), pts, {{0, 2}}), InputError);
}

TEST(Orbit, SplitDistanceMatchesDirect) {
  const Scenario s = build_scenario("schottky-so21");
  const ConvexDomain disk = ConvexDomain::ellipsoid(3);
  const ProjPoint o(klein(0, 0));
  for (const char* text : {"a", "ab", "aBaa", "abABB"}) {
    const Word w = s.generators.parse(text);
    const double direct = hilbert_distance(disk, o.unit(), word_matrix(s.generators, w).matrix() * o.unit());
    EXPECT_NEAR(orbit_distance(disk, s.generators, o, w), direct, 1e-9) << text;
  }
}

TEST(Orbit, ExponentRequiresInvariantForm) {
  const Scenario s = build_scenario("fuchsian-red-sl3");
  const ConvexDomain disk = ConvexDomain::ellipsoid(3);
  EXPECT_THROW(hilbert_orbit_exponent(disk, s.generators, ProjPoint(klein(0, 0)), 6), InputError);
}

TEST(Domain, ModelsAndInterior) {
  const ConvexDomain disk = ConvexDomain::ellipsoid(3);
  const ConvexDomain cone = ConvexDomain::psd_cone(3);
  EXPECT_EQ(disk.dim(), 3);
  EXPECT_EQ(cone.dim(), 6);
  EXPECT_TRUE(disk.interior(klein(0.5, 0.5)));
  EXPECT_FALSE(disk.interior(klein(0.9, 0.9)));
  EXPECT_TRUE(cone.interior(psd_vector(Mat::Identity(3, 3))));
  const Mat s = (Mat(2, 2) << 1.0, 2.0, 2.0, 3.0).finished();
  EXPECT_TRUE(psd_matrix(psd_vector(s), 2).isApprox(s));
}
