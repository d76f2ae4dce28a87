#include "anosov/verify.hpp"

#include "anosov/errors.hpp"
#include "anosov/io.hpp"
#include "anosov/parallel.hpp"

#include <Eigen/Core>

#include <algorithm>
#include <chrono>
#include <limits>
#include <cmath>
#include <sstream>

#ifndef ANOSOV_VERSION
#define ANOSOV_VERSION "unknown"
#endif

namespace anosov {

namespace {

constexpr double kUserRatioTolerance = 1e-6;

std::string canonical_key(std::string key) {
  std::replace(key.begin(), key.end(), '-', '_');
  return key;
}

Params canonical(const Params& p) {
  Params out;
  for (const auto& [k, v] : p.values()) out.set(canonical_key(k), v);
  return out;
}

}  // namespace

VerifyOptions VerifyOptions::from_params(const Params& raw) {
  const Params p = canonical(raw);
  VerifyOptions o;
  o.max_len = static_cast<int>(p.get_int("max_len", o.max_len));
  o.word_len = static_cast<int>(p.get_int("word_len", o.word_len));
  o.count = static_cast<int>(p.get_int("count", o.count));
  o.bin = p.get_double("bin", o.bin);
  o.scales = static_cast<int>(p.get_int("scales", o.scales));
  o.budget = p.get_u64("budget", o.budget);
  if (o.max_len < 1 || o.max_len > 64) throw InputError("max_len must lie in [1, 64]");
  if (o.word_len < 4 || o.word_len > 256) throw InputError("word_len must lie in [4, 256]");
  if (o.count < 1) throw InputError("count must be positive");
  if (!(o.bin > 0.0)) throw InputError("bin must be positive");
  if (o.scales < 2 || o.scales > 60) throw InputError("scales must lie in [2, 60]");
  return o;
}

bool VerificationReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const InequalityCheck& c) { return c.pass; });
}

std::map<std::string, std::string> version_info() {
  std::ostringstream eigen;
  eigen << EIGEN_WORLD_VERSION << '.' << EIGEN_MAJOR_VERSION << '.' << EIGEN_MINOR_VERSION;
  std::ostringstream cxx;
#if defined(__clang__)
  cxx << "clang " << __clang_major__ << '.' << __clang_minor__;
#elif defined(__GNUC__)
  cxx << "gcc " << __GNUC__ << '.' << __GNUC_MINOR__;
#else
  cxx << "unknown";
#endif
  return {{"anosov", ANOSOV_VERSION}, {"eigen", eigen.str()}, {"compiler", cxx.str()}};
}

namespace {

template <class F>
auto stage(const std::string& name, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const ResourceError& e) {
    throw ResourceError(name + ": " + e.what());
  } catch (const NumericError& e) {
    throw NumericError(name + ": " + e.what());
  } catch (const UnsupportedError& e) {
    throw UnsupportedError(name + ": " + e.what());
  } catch (const InputError& e) {
    throw InputError(name + ": " + e.what());
  }
}

struct BallCounters {
  LayeredCounter a12{kDefaultBin};
  LayeredCounter a1n{kDefaultBin};
  LayeredCounter e1{kDefaultBin};
};

struct ClassCounters {
  LayeredCounter a12{kDefaultBin};
  LayeredCounter a1n{kDefaultBin};
};

double combined(double a, double b) { return std::sqrt(a * a + b * b); }

InequalityCheck bound_check(std::string name, double lhs, double lhs_se, double rhs, double rhs_se) {
  InequalityCheck c;
  c.name = std::move(name);
  c.lhs = lhs;
  c.rhs = rhs;
  c.margin = rhs - lhs;
  c.allowance = combined(lhs_se, rhs_se) + 0.05;
  c.pass = c.margin >= -c.allowance;
  return c;
}

}  // namespace

VerificationReport run_verify(const Scenario& scenario, const VerifyOptions& opt) {
  const auto start = std::chrono::steady_clock::now();
  const GeneratorSet& gs = scenario.generators;
  const int n = gs.dim();
  const LinearForm a12 = LinearForm::root(1, 2, n);
  const LinearForm a1n = LinearForm::root(1, n, n);
  const LinearForm e1 = LinearForm::epsilon(1, n);
  // alpha_1n is counted with twice the bin so that, whenever alpha_1n = 2
  // alpha_12 on the group, both histograms coincide key by key.
  const double bin = opt.bin;
  const double wide = 2.0 * opt.bin;

  VerificationReport r;
  r.scenario = scenario.name;
  r.params = scenario.params;
  r.seed = scenario.seed;
  r.ambient_n = scenario.ambient_n;
  r.convex_cocompact = scenario.convex_cocompact;
  r.options = opt;
  r.versions = version_info();

  EnumerationOptions eopts;
  eopts.budget = opt.budget;

  stage("ball enumeration", [&] {
    const auto tasks = ball_tasks(gs, opt.max_len);
    const auto parts = parallel_map<BallCounters>(tasks.size(), [&](std::size_t t) {
      BallCounters c{LayeredCounter(bin), LayeredCounter(wide), LayeredCounter(bin)};
      enumerate_ball_task(
          gs, opt.max_len, tasks[t],
          [&](const BallEntry& e) {
            c.a12.add(e.word.length(), a12(e.mu));
            c.a1n.add(e.word.length(), a1n(e.mu));
            c.e1.add(e.word.length(), e1(e.mu));
          },
          eopts);
      return c;
    });
    BallCounters all{LayeredCounter(bin), LayeredCounter(wide), LayeredCounter(bin)};
    for (const auto& p : parts) {
      all.a12.merge(p.a12);
      all.a1n.merge(p.a1n);
      all.e1.merge(p.e1);
    }
    r.delta12 = all.a12.estimate();
    r.delta1n = all.a1n.estimate();
    r.delta1 = all.e1.estimate();
    r.delta12.form = a12.coeffs();
    r.delta1n.form = a1n.coeffs();
    r.delta1.form = e1.coeffs();
    return 0;
  });

  stage("conjugacy classes", [&] {
    const auto tasks = ball_tasks(gs, opt.max_len);
    const auto parts = parallel_map<ClassCounters>(tasks.size(), [&](std::size_t t) {
      ClassCounters c{LayeredCounter(bin), LayeredCounter(wide)};
      enumerate_classes_task(
          gs, opt.max_len, tasks[t],
          [&](const ConjClassEntry& e) {
            c.a12.add(e.representative.length(), a12(e.lambda));
            c.a1n.add(e.representative.length(), a1n(e.lambda));
          },
          eopts);
      return c;
    });
    ClassCounters all{LayeredCounter(bin), LayeredCounter(wide)};
    for (const auto& p : parts) {
      all.a12.merge(p.a12);
      all.a1n.merge(p.a1n);
    }
    WindowOptions w;
    w.log_correction = true;
    r.h12 = all.a12.estimate(w);
    r.h1n = all.a1n.estimate(w);
    r.h12.form = a12.coeffs();
    r.h1n.form = a1n.coeffs();
    return 0;
  });

  const LimitSample sample =
      stage("limit-set sampling", [&] { return sample_limit_set(gs, opt.word_len, opt.count, scenario.seed); });
  r.limit_points = sample.points.size();
  r.discarded_low_quality = sample.discarded_low_quality;
  r.rejected = sample.rejected;
  r.diagnostics = sample.diagnostics;

  stage("box dimension", [&] {
    const auto min_points = std::min<std::size_t>(kMinBoxPoints, sample.points.size());
    r.boxdim_sym = box_dimension(sample.points, SymMetric::Sym, opt.scales, min_points);
    r.boxdim_line = box_dimension(sample.points, SymMetric::Line, opt.scales, min_points);
    r.boxdim_dual = box_dimension(sample.points, SymMetric::Dual, opt.scales, min_points);
    return 0;
  });

  // Generators of the form [[*, *], [0, 1]] preserve the hyperplane x_n = 0,
  // which then contains every attracting line.
  bool affine = true;
  for (int i = 0; i < gs.rank() && affine; ++i) {
    const Mat& g = gs.generator(i).matrix();
    for (int j = 0; j < n - 1; ++j) affine = affine && g(n - 1, j) == 0.0;
    affine = affine && g(n - 1, n - 1) == 1.0;
  }
  if (affine) {
    double worst = 0.0;
    for (const auto& p : sample.points) worst = std::max(worst, std::abs(p.line[n - 1]));
    r.extras["max_line_last_coordinate"] = worst;
  }

  const double k = scenario.convex_cocompact ? 2.0 : 1.0;
  r.checks.push_back(bound_check(scenario.convex_cocompact ? "lower: 2*delta_1n <= dim_sym" : "lower: delta_1n <= dim_sym",
                                 k * r.delta1n.value, k * r.delta1n.std_error, r.boxdim_sym.value,
                                 r.boxdim_sym.std_error));
  r.checks.push_back(bound_check("upper: dim_sym <= delta_12", r.boxdim_sym.value, r.boxdim_sym.std_error,
                                 r.delta12.value, r.delta12.std_error));
  r.checks.push_back(
      bound_check("entropy: h_12 <= delta_12", r.h12.value, r.h12.std_error, r.delta12.value, r.delta12.std_error));
  r.checks.push_back(
      bound_check("entropy: h_1n <= delta_1n", r.h1n.value, r.h1n.std_error, r.delta1n.value, r.delta1n.std_error));

  for (const auto& rel : scenario.expected) {
    InequalityCheck c;
    c.name = "expected: " + rel.name;
    c.lhs = rel.coefficient * r.delta1n.value;
    c.rhs = r.delta12.value;
    double value;
    if (rel.kind == ExpectedRelation::Kind::Ratio) {
      value = r.delta12.value > 0.0 ? c.lhs / c.rhs : std::numeric_limits<double>::infinity();
    } else {
      value = c.lhs - c.rhs;
    }
    c.margin = rel.tolerance - std::abs(value - rel.target);
    c.allowance = 0.0;
    c.pass = c.margin >= 0.0;
    r.checks.push_back(c);
  }

  r.runtime_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

VerificationReport run_verify(const std::string& scenario_name, const Params& overrides) {
  const Params p = canonical(overrides);
  const VerifyOptions opt = VerifyOptions::from_params(p);
  Scenario s = stage("scenario", [&] { return build_scenario(scenario_name, p); });
  if (p.has("expect_ratio")) {
    const double target = p.get_double("expect_ratio", 0.0);
    const double tol = p.get_double("expect_tolerance", kUserRatioTolerance);
    if (!(target > 0.0) || !(tol >= 0.0)) throw InputError("expect_ratio must be positive and its tolerance >= 0");
    s.expected.push_back({"delta_1n / delta_12 == " + format_number(target), ExpectedRelation::Kind::Ratio, 1.0,
                          target, tol});
  }
  return run_verify(s, opt);
}

}  // namespace anosov
