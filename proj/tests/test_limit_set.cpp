#include "anosov/errors.hpp"
#include "anosov/limit_set.hpp"
#include "anosov/scenario.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace anosov;

namespace {

std::vector<Vec> circle(std::size_t count) {
  std::vector<Vec> out;
  for (std::size_t i = 0; i < count; ++i) {
    const double th = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(count);
    Vec v(2);
    v << std::cos(th), std::sin(th);
    out.push_back(v);
  }
  return out;
}

std::vector<Vec> cantor(int level) {
  std::vector<double> pts{0.0};
  double len = 1.0;
  for (int l = 0; l < level; ++l) {
    len /= 3.0;
    std::vector<double> next;
    for (double p : pts) {
      next.push_back(p);
      next.push_back(p + 2.0 * len);
    }
    pts = std::move(next);
  }
  std::vector<Vec> out;
  for (double p : pts) out.push_back(Vec::Constant(1, p));
  return out;
}

double euclid(const Vec& a, const Vec& b) { return (a - b).norm(); }

}  // namespace

TEST(BoxDimension, CircleIsOne) {
  const DimensionEstimate d = box_dimension(circle(4000), euclid);
  EXPECT_NEAR(d.value, 1.0, 0.05);
  EXPECT_FALSE(d.low_confidence);
  EXPECT_FALSE(d.degenerate);
  EXPECT_NEAR(d.diameter, 2.0, 1e-6);
}

TEST(BoxDimension, MiddleThirdsCantor) {
  const DimensionEstimate d = box_dimension(cantor(12), euclid);
  EXPECT_NEAR(d.value, std::log(2.0) / std::log(3.0), 0.03);
}

TEST(BoxDimension, SnowflakeDoublesDimension) {
  const auto pts = circle(3000);
  const DimensionEstimate plain = box_dimension(pts, euclid);
  const DimensionEstimate snow =
      box_dimension(pts, [](const Vec& a, const Vec& b) { return std::sqrt((a - b).norm()); });
  EXPECT_NEAR(snow.value / plain.value, 2.0, 0.2);
}

TEST(BoxDimension, CountsAreMonotoneAndScalesHalve) {
  const DimensionEstimate d = box_dimension(cantor(10), euclid);
  for (std::size_t j = 1; j < d.scales.size(); ++j) {
    EXPECT_GE(d.scales[j].second, d.scales[j - 1].second);
    EXPECT_DOUBLE_EQ(d.scales[j].first * 2.0, d.scales[j - 1].first);
  }
  EXPECT_LE(d.window_lo, d.window_hi);
}

TEST(BoxDimension, DegenerateAndTooFewPoints) {
  std::vector<Vec> same(600, Vec::Zero(2));
  const DimensionEstimate d = box_dimension(same, euclid);
  EXPECT_TRUE(d.degenerate);
  EXPECT_EQ(d.value, 0.0);
  EXPECT_THROW(box_dimension(circle(10), euclid), InputError);
  EXPECT_NO_THROW(box_dimension(circle(10), euclid, 4, 10));
}

TEST(BoxDimension, InputOrderDoesNotMatter) {
  auto pts = cantor(9);
  const DimensionEstimate a = box_dimension(pts, euclid);
  std::reverse(pts.begin(), pts.end());
  const DimensionEstimate b = box_dimension(pts, euclid);
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.scales, b.scales);
}

TEST(LimitSample, DeterministicAndAccounted) {
  const Scenario s = build_scenario("schottky-so21");
  const LimitSample a = sample_limit_set(s.generators, 12, 300, 5);
  const LimitSample b = sample_limit_set(s.generators, 12, 300, 5);
  ASSERT_EQ(a.points.size(), b.points.size());
  for (std::size_t i = 0; i < a.points.size(); ++i) {
    EXPECT_EQ(a.points[i].word, b.points[i].word);
    EXPECT_EQ(a.points[i].line.unit(), b.points[i].line.unit());
  }
  EXPECT_EQ(a.points.size() + a.discarded_low_quality + a.rejected, 300u);
  const LimitSample c = sample_limit_set(s.generators, 12, 300, 6);
  EXPECT_NE(a.points.front().word, c.points.front().word);
}

TEST(LimitSample, SchottkySo21PointsLieOnTheConic) {
  const Scenario s = build_scenario("schottky-so21");
  const LimitSample sample = sample_limit_set(s.generators, 16, 500, 0);
  const Mat& j = *s.invariant_form;
  for (const auto& p : sample.points) {
    const Vec& l = p.line.unit();
    EXPECT_LE(std::abs(l.dot(j * l)), 1e-9);
    // The hyperplane of a boundary point is its tangent line J l.
    EXPECT_LE(proj_distance(p.hyperplane, DualProjPoint(j * l)), 1e-9);
  }
}

TEST(LimitSample, LineApproachesAttractingPointOfThePeriodicWord) {
  const Scenario s = build_scenario("fuchsian-irr-sl3");
  const GeneratorSet& gs = s.generators;
  const Word w = gs.parse("abbaBaabAbba");
  ASSERT_TRUE(w.cyclically_reduced());
  const SymLimitPoint p = limit_point_of(gs, w);
  const auto fixed = attracting_pair(word_matrix(gs, w));
  ASSERT_TRUE(fixed.has_value());
  EXPECT_LE(proj_distance(p.line, fixed->line), 10.0 * std::exp(-p.gap));
}

TEST(LimitSample, BadArguments) {
  const Scenario s = build_scenario("schottky-so21");
  EXPECT_THROW(sample_limit_set(s.generators, 0, 10, 0), InputError);
  EXPECT_THROW(sample_limit_set(s.generators, 4, 0, 0), InputError);
}

TEST(LimitSample, SymMetricDimensionOfSchottkyGroup) {
  const Scenario s = build_scenario("schottky-so21");
  const LimitSample sample = sample_limit_set(s.generators, 16, 2000, 0);
  const DimensionEstimate sym = box_dimension(sample.points, SymMetric::Sym);
  const DimensionEstimate line = box_dimension(sample.points, SymMetric::Line);
  EXPECT_GT(sym.value, 0.6);
  EXPECT_LT(sym.value, 0.9);
  // On a conic the line and its tangent determine each other bi-Lipschitz.
  EXPECT_NEAR(sym.value, line.value, 0.05);
  EXPECT_EQ(parse_sym_metric("dual"), SymMetric::Dual);
  EXPECT_THROW(parse_sym_metric("gromov"), InputError);
}

TEST(Distortion, DiagonalFamilyIsUniformlyBounded) {
  for (int t = 1; t <= 5; ++t) {
    const double d[] = {std::exp(t), 1.0, std::exp(-t)};
    const double ratio = distortion_check(SquareMatrix::diagonal(d), 0.05, 1000);
    EXPECT_GT(ratio, 0.5);
    EXPECT_LE(ratio, 3.0);
  }
}

TEST(Distortion, RequiresAlignedProximalMatrix) {
  const double d[] = {std::exp(1.0), 1.0, std::exp(-1.0)};
  EXPECT_THROW(distortion_check(SquareMatrix::diagonal(d), 0.5, 10), InputError);
  const Mat r = Eigen::AngleAxisd(0.4, Eigen::Vector3d::UnitZ()).toRotationMatrix();
  const SquareMatrix rotated = SquareMatrix::from_matrix(r * SquareMatrix::diagonal(d).matrix() * r.transpose());
  EXPECT_THROW(distortion_check(rotated, 0.05, 10), InputError);
  EXPECT_THROW(distortion_check(SquareMatrix::identity(3), 0.05, 10), InputError);
}
