#include "anosov/errors.hpp"
#include "anosov/exponents.hpp"
#include "anosov/scenario.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace anosov;

namespace {

// Values whose counting function is floor(exp(rate * R)).
std::vector<double> planted(double rate, double r_max) {
  std::vector<double> out;
  const auto m = static_cast<std::size_t>(std::exp(rate * r_max));
  for (std::size_t j = 1; j <= m; ++j) out.push_back(std::log(static_cast<double>(j)) / rate);
  return out;
}

CountSeries series_of(const std::vector<double>& values, double bin) {
  FormHistogram h(bin);
  for (double v : values) h.add(v);
  return h.series();
}

std::vector<BallEntry> ball_of(const std::string& name, int max_len) {
  std::vector<BallEntry> out;
  enumerate_ball(build_scenario(name).generators, max_len, [&](const BallEntry& e) { out.push_back(e); });
  return out;
}

}  // namespace

TEST(EvaluateForm, MatchesDotProduct) {
  const CartanVector v({1.5, 0.25, -1.75});
  EXPECT_DOUBLE_EQ(evaluate_form(LinearForm({2.0, -1.0, 0.5}), v), 3.0 - 0.25 - 0.875);
  EXPECT_THROW(evaluate_form(LinearForm({1.0, -1.0}), v), InputError);
}

TEST(CountSeries, ValidatesMonotonicity) {
  EXPECT_NO_THROW(CountSeries::from_points(0.5, {0, 1, 2}, {1, 3, 3}));
  EXPECT_THROW(CountSeries::from_points(0.5, {0, 2, 1}, {1, 2, 3}), InputError);
  EXPECT_THROW(CountSeries::from_points(0.5, {0, 1, 2}, {1, 3, 2}), InputError);
  const CountSeries cs = CountSeries::from_points(0.5, {0, 1, 2}, {1, 3, 3});
  EXPECT_DOUBLE_EQ(cs.thresholds[2], 1.0);
}

TEST(FormHistogram, CumulativeCountsAtBinCeilings) {
  FormHistogram h(1.0);
  for (double v : {0.0, 0.5, 1.0, 1.2, 3.9}) h.add(v);
  const CountSeries cs = h.series();
  EXPECT_EQ(cs.index, (std::vector<long long>{0, 1, 2, 3, 4}));
  EXPECT_EQ(cs.counts, (std::vector<std::uint64_t>{1, 3, 4, 4, 5}));
  EXPECT_EQ(h.total(), 5u);
  EXPECT_DOUBLE_EQ(h.max_value(), 3.9);
  EXPECT_THROW(FormHistogram(1.0).series(), InputError);
}

TEST(FormHistogram, MergeIsPartitionIndependent) {
  std::mt19937_64 rng(4);
  std::exponential_distribution<double> ex(0.3);
  std::vector<double> values(5000);
  for (auto& v : values) v = ex(rng);
  FormHistogram whole(0.25);
  for (double v : values) whole.add(v);
  FormHistogram a(0.25), b(0.25), c(0.25);
  for (std::size_t i = 0; i < values.size(); ++i) (i % 3 == 0 ? a : i % 3 == 1 ? b : c).add(values[i]);
  FormHistogram merged(0.25);
  merged.merge(c);
  merged.merge(a);
  merged.merge(b);
  EXPECT_EQ(merged.series().counts, whole.series().counts);
  EXPECT_EQ(merged.series().index, whole.series().index);
}

TEST(CriticalExponent, RecoversPlantedGrowth) {
  for (double bin : {0.1, 0.25, 0.5}) {
    const ExponentEstimate e = critical_exponent(series_of(planted(0.7, 18.0), bin));
    EXPECT_NEAR(e.value, 0.7, 0.02) << bin;
    EXPECT_FALSE(e.low_confidence);
    EXPECT_GE(e.std_error, 0.0);
    EXPECT_LE(e.window_lo, e.window_hi);
  }
}

TEST(CriticalExponent, RecoversRandomPlantedGrowth) {
  // Arrival times of a Poisson process with intensity 0.7 e^(0.7 R).
  std::mt19937_64 rng(12);
  std::exponential_distribution<double> ex(1.0);
  std::vector<double> values;
  double t = 0.0;
  while (true) {
    t += ex(rng);
    const double r = std::log(t) / 0.7;
    if (r > 16.0) break;
    values.push_back(std::max(0.0, r));
  }
  const ExponentEstimate e = critical_exponent(series_of(values, 0.25));
  EXPECT_NEAR(e.value, 0.7, 0.02);
}

TEST(CriticalExponent, WindowRulesAreApplied) {
  const CountSeries cs = series_of(planted(0.7, 18.0), 0.25);
  WindowOptions w;
  w.truncation = 2.0;
  w.complete_up_to = 12.0;
  const ExponentEstimate e = critical_exponent(cs, w);
  EXPECT_LE(e.window_hi, 12.0);
  EXPECT_GE(e.count_at_hi, 10u);
  EXPECT_NEAR(e.value, 0.7, 0.02);
  EXPECT_NE(e.method.find("R <= 12"), std::string::npos);
}

TEST(CriticalExponent, DegenerateAndLowConfidence) {
  const ExponentEstimate flat = critical_exponent(CountSeries::from_points(1.0, {0, 1, 2}, {5, 5, 5}));
  EXPECT_TRUE(flat.degenerate);
  EXPECT_EQ(flat.value, 0.0);
  const ExponentEstimate few = critical_exponent(CountSeries::from_points(1.0, {0, 1, 2, 3}, {1, 2, 4, 8}));
  EXPECT_TRUE(few.low_confidence);
  EXPECT_NEAR(few.value, std::log(2.0), 1e-12);
}

TEST(CriticalExponent, LogCorrectionRemovesPrefactor) {
  // N(R) = e^(0.7 R) / R, the shape of a prime geodesic count.
  std::vector<long long> idx;
  std::vector<std::uint64_t> counts;
  for (long long k = 8; k <= 80; ++k) {
    const double r = 0.25 * static_cast<double>(k);
    idx.push_back(k);
    counts.push_back(static_cast<std::uint64_t>(std::exp(0.7 * r) / r));
  }
  const CountSeries cs = CountSeries::from_points(0.25, idx, counts);
  WindowOptions w;
  w.log_correction = true;
  EXPECT_NEAR(critical_exponent(cs, w).value, 0.7, 0.01);
  EXPECT_GT(std::abs(critical_exponent(cs).value - 0.7), 0.03);
}

TEST(CriticalExponent, HomogeneityIsExact) {
  const auto ball = ball_of("schottky-so21", 9);
  const LinearForm phi = LinearForm::root(1, 2, 3);
  const ExponentEstimate base = critical_exponent(ball, phi, 0.25);
  for (double t : {0.5, 2.0, 3.0}) {
    const ExponentEstimate scaled = critical_exponent(ball, phi.scaled(t), 0.25 * t);
    EXPECT_NEAR(scaled.value * t, base.value, 1e-12 * base.value) << t;
    EXPECT_EQ(scaled.count_at_hi, base.count_at_hi) << t;
  }
}

TEST(CriticalExponent, FreeGroupWordLengthGrowth) {
  // With phi = word length every form value is an integer: N(R) = |B(R)|.
  const auto ball = ball_of("schottky-so21", 10);
  FormHistogram h(1.0);
  for (const auto& e : ball) h.add(static_cast<double>(e.word.length()));
  const ExponentEstimate e = critical_exponent(h.series());
  EXPECT_NEAR(e.value, std::log(3.0), 0.03);
}

TEST(LayeredCounter, WindowFromOutermostSpheres) {
  LayeredCounter c(0.5);
  c.add(0, 0.0);
  c.add(1, 2.0);
  c.add(1, 3.0);
  c.add(2, 4.5);
  c.add(2, 5.0);
  c.add(3, 6.0);
  const WindowOptions w = c.window();
  EXPECT_DOUBLE_EQ(w.truncation, 3.0);
  EXPECT_DOUBLE_EQ(w.complete_up_to, 4.5);
  EXPECT_EQ(c.max_length(), 3u);
  LayeredCounter d(0.5);
  d.add(3, 1.0);
  c.merge(d);
  EXPECT_DOUBLE_EQ(c.window().complete_up_to, 1.0);
}

TEST(Entropy, UsesJordanProjection) {
  std::vector<ConjClassEntry> classes;
  enumerate_conjugacy_classes(build_scenario("schottky-so21").generators, 9,
                              [&](const ConjClassEntry& e) { classes.push_back(e); });
  const ExponentEstimate h = entropy(classes, LinearForm::root(1, 2, 3));
  EXPECT_NE(h.method.find("log(N*R)"), std::string::npos);
  EXPECT_GT(h.value, 0.4);
  EXPECT_LT(h.value, 1.0);
}

TEST(PoincareSeries, PartialSum) {
  std::vector<CartanVector> v{CartanVector({1.0, 0.0, -1.0}), CartanVector({2.0, 0.0, -2.0})};
  const LinearForm phi = LinearForm::root(1, 2, 3);
  EXPECT_NEAR(poincare_series(v, phi, 0.5), std::exp(-0.5) + std::exp(-1.0), 1e-15);
}
