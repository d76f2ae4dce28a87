#include "cli.hpp"

#include "anosov/errors.hpp"
#include "anosov/exponents.hpp"
#include "anosov/hilbert.hpp"
#include "anosov/io.hpp"
#include "anosov/limit_set.hpp"
#include "anosov/parallel.hpp"
#include "anosov/scenario.hpp"
#include "anosov/verify.hpp"
#include "anosov/words.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <sstream>

namespace anosov::cli {

namespace {

// Flag name (without dashes) -> configuration key.
const std::map<std::string, std::string> kFlagKeys{
    {"scenario", "name"}, {"seed", "seed"},     {"max-len", "max_len"}, {"word-len", "word_len"},
    {"count", "count"},   {"bin", "bin"},       {"form", "form"},       {"metric", "metric"},
    {"scales", "scales"}, {"out", "out"},       {"report", "report"},   {"budget", "budget"},
    {"expect-ratio", "expect_ratio"},
};

const std::map<std::string, std::string> kFlagHelp{
    {"scenario", "catalog name (see list-scenarios)"},
    {"seed", "seed for randomized parameters and sampling offsets"},
    {"max-len", "maximal word length of the enumeration"},
    {"word-len", "length of the words used for limit points"},
    {"count", "number of limit points to sample"},
    {"bin", "histogram bin width for the counting function"},
    {"form", "a12 | a1n | e1 | custom:c1,...,cn"},
    {"metric", "sym | line | dual | gromov"},
    {"scales", "number of dyadic scales"},
    {"out", "CSV output path (default stdout)"},
    {"report", "JSON output path (default stdout)"},
    {"budget", "maximal number of enumerated elements"},
    {"expect-ratio", "extra check: delta_1n / delta_12 equals this value"},
};

struct Invocation {
  std::string config;
  std::map<std::string, std::string> flags;
};

void add_flags(CLI::App* sub, Invocation& inv, const std::vector<const char*>& names) {
  sub->add_option("--config", inv.config, "key=value file mirroring the flags");
  for (const char* name : names) {
    auto it = kFlagKeys.find(name);
    sub->add_option(std::string("--") + name, inv.flags[it->second], kFlagHelp.at(name));
  }
}

std::string canonical_key(std::string key) {
  std::replace(key.begin(), key.end(), '-', '_');
  return key == "scenario" ? "name" : key;
}

// Config file first, then every flag given on the command line.
Params resolve(const Invocation& inv, const CLI::App* sub) {
  Params p;
  if (!inv.config.empty()) {
    const Params file = Params::load(inv.config);
    for (const auto& [k, v] : file.values()) p.set(canonical_key(k), v);
  }
  for (const auto& [flag, key] : kFlagKeys) {
    const CLI::Option* opt = sub->get_option_no_throw("--" + flag);
    if (opt && opt->count() > 0) p.set(key, inv.flags.at(key));
  }
  return p;
}

Scenario scenario_from(const Params& p) {
  if (!p.has("name")) throw InputError("no scenario given (use --scenario or name= in the config file)");
  return build_scenario(p.get("name", ""), p);
}

EnumerationOptions enumeration_from(const Params& p) {
  EnumerationOptions o;
  o.budget = p.get_u64("budget", kDefaultBudget);
  return o;
}

int max_len_from(const Params& p, int fallback) {
  const long long m = p.get_int("max_len", fallback);
  if (m < 0 || m > 64) throw InputError("max-len must lie in [0, 64]");
  return static_cast<int>(m);
}

double bin_from(const Params& p) {
  const double b = p.get_double("bin", kDefaultBin);
  if (!(b > 0.0)) throw InputError("bin must be positive");
  return b;
}

int positive_int(const Params& p, const std::string& key, int fallback) {
  const long long v = p.get_int(key, fallback);
  if (v < 1 || v > 100'000'000) throw InputError(key + " must be a positive integer");
  return static_cast<int>(v);
}

/// Writes to the named file, or to `fallback` when no name is given.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) {
    if (path.empty()) {
      stream_ = &fallback;
    } else {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw InputError("cannot open " + path + " for writing");
      stream_ = file_.get();
    }
  }
  std::ostream& operator*() { return *stream_; }

  void close() {
    if (file_) {
      file_->close();
      if (!*file_) throw ResourceError("write failed");
    }
  }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_ = nullptr;
};

int cmd_ball(const Params& p, std::ostream& out) {
  const Scenario s = scenario_from(p);
  const int max_len = max_len_from(p, 6);
  Sink sink(p.get("out", ""), out);
  write_ball_header(*sink, s.generators.dim());
  enumerate_ball(
      s.generators, max_len, [&](const BallEntry& e) { write_ball_row(*sink, s.generators, e); },
      enumeration_from(p));
  sink.close();
  return kOk;
}

int cmd_conjugacy(const Params& p, std::ostream& out) {
  const Scenario s = scenario_from(p);
  const int max_len = max_len_from(p, 6);
  Sink sink(p.get("out", ""), out);
  write_conjugacy_header(*sink, s.generators.dim());
  enumerate_conjugacy_classes(
      s.generators, max_len, [&](const ConjClassEntry& e) { write_conjugacy_row(*sink, s.generators, e); },
      enumeration_from(p));
  sink.close();
  return kOk;
}

// Shared by exponent and entropy: parallel subtree enumeration into layered
// histograms, merged in task order.
template <class Entry, class Enumerate, class Project>
LayeredCounter layered(const GeneratorSet& gs, int max_len, double bin, const LinearForm& phi,
                       const EnumerationOptions& eopts, Enumerate enumerate, Project project) {
  const auto tasks = ball_tasks(gs, max_len);
  const auto parts = parallel_map<LayeredCounter>(tasks.size(), [&](std::size_t t) {
    LayeredCounter c(bin);
    enumerate(gs, max_len, tasks[t],
              std::function<void(const Entry&)>([&](const Entry& e) { project(c, phi, e); }), eopts);
    return c;
  });
  LayeredCounter all(bin);
  for (const auto& part : parts) all.merge(part);
  return all;
}

int cmd_exponent(const Params& p, std::ostream& out) {
  const Scenario s = scenario_from(p);
  const GeneratorSet& gs = s.generators;
  const LinearForm phi = LinearForm::parse(p.get("form", "a12"), gs.dim());
  const LayeredCounter all = layered<BallEntry>(
      gs, max_len_from(p, 10), bin_from(p), phi, enumeration_from(p),
      [](const GeneratorSet& g, int m, const BallTask& t, const BallVisitor& v, const EnumerationOptions& o) {
        enumerate_ball_task(g, m, t, v, o);
      },
      [](LayeredCounter& c, const LinearForm& f, const BallEntry& e) { c.add(e.word.length(), f(e.mu)); });
  ExponentEstimate e = all.estimate();
  e.form = phi.coeffs();
  Sink sink(p.get("out", ""), out);
  *sink << estimate_json(e);
  sink.close();
  return kOk;
}

int cmd_entropy(const Params& p, std::ostream& out) {
  const Scenario s = scenario_from(p);
  const GeneratorSet& gs = s.generators;
  const LinearForm phi = LinearForm::parse(p.get("form", "a12"), gs.dim());
  const LayeredCounter all = layered<ConjClassEntry>(
      gs, max_len_from(p, 10), bin_from(p), phi, enumeration_from(p),
      [](const GeneratorSet& g, int m, const BallTask& t, const ClassVisitor& v, const EnumerationOptions& o) {
        enumerate_classes_task(g, m, t, v, o);
      },
      [](LayeredCounter& c, const LinearForm& f, const ConjClassEntry& e) {
        c.add(e.representative.length(), f(e.lambda));
      });
  WindowOptions w;
  w.log_correction = true;
  ExponentEstimate e = all.estimate(w);
  e.form = phi.coeffs();
  Sink sink(p.get("out", ""), out);
  *sink << estimate_json(e);
  sink.close();
  return kOk;
}

LimitSample sample_from(const Scenario& s, const Params& p) {
  const int word_len = positive_int(p, "word_len", VerifyOptions{}.word_len);
  const int count = positive_int(p, "count", VerifyOptions{}.count);
  return sample_limit_set(s.generators, word_len, count, s.seed);
}

void report_sample(const LimitSample& sample, std::ostream& err) {
  for (const auto& d : sample.diagnostics) err << "warning: " << d << '\n';
}

int cmd_limit_set(const Params& p, std::ostream& out, std::ostream& err) {
  const Scenario s = scenario_from(p);
  const LimitSample sample = sample_from(s, p);
  report_sample(sample, err);
  Sink sink(p.get("out", ""), out);
  write_points_header(*sink, s.generators.dim());
  for (const auto& pt : sample.points) write_points_row(*sink, s.generators, pt);
  sink.close();
  return kOk;
}

// The scenario's generators conjugated into the standard ellipsoid model,
// x_1^2 + ... + x_{n-1}^2 - x_n^2, when they preserve a Lorentzian form.
GeneratorSet to_ellipsoid_model(const Scenario& s) {
  if (!s.invariant_form) {
    throw InputError("scenario " + s.name + " preserves no quadratic form; Hilbert geometry needs one");
  }
  Mat f = *s.invariant_form;
  const int n = static_cast<int>(f.rows());
  // A form of signature (1, n-1) is negated first.
  {
    Eigen::SelfAdjointEigenSolver<Mat> probe(f, Eigen::EigenvaluesOnly);
    if (probe.eigenvalues()(n - 2) < 0.0) f = -f;
  }
  Eigen::SelfAdjointEigenSolver<Mat> es(f);
  const Vec& ev = es.eigenvalues();  // ascending: the negative one first
  if (!(ev(0) < 0.0) || (n > 1 && !(ev(1) > 0.0))) {
    throw InputError("invariant form of " + s.name + " is not of signature (n-1, 1)");
  }
  Mat basis(n, n);
  for (int j = 1; j < n; ++j) basis.col(j - 1) = es.eigenvectors().col(j) / std::sqrt(ev(j));
  basis.col(n - 1) = es.eigenvectors().col(0) / std::sqrt(-ev(0));
  const Mat basis_inv = basis.inverse();
  return s.generators.mapped([&](const SquareMatrix& g) {
    return SquareMatrix::from_pair(basis_inv * g.matrix() * basis, basis_inv * g.inverse_matrix() * basis);
  });
}

ProjPoint ellipsoid_centre(int n) {
  Vec o = Vec::Zero(n);
  o(n - 1) = 1.0;
  return ProjPoint(o);
}

int cmd_boxdim(const Params& p, std::ostream& out, std::ostream& err) {
  const Scenario s = scenario_from(p);
  const std::string metric = p.get("metric", "sym");
  const int scales = positive_int(p, "scales", kDefaultScales);
  DimensionEstimate d;
  if (metric == "gromov") {
    const GeneratorSet gs = to_ellipsoid_model(s);
    const int word_len = positive_int(p, "word_len", VerifyOptions{}.word_len);
    const int count = positive_int(p, "count", VerifyOptions{}.count);
    const LimitSample sample = sample_limit_set(gs, word_len, count, s.seed);
    report_sample(sample, err);
    const ConvexDomain omega = ConvexDomain::ellipsoid(gs.dim());
    std::vector<BoundaryPoint> bp;
    bp.reserve(sample.points.size());
    for (const auto& pt : sample.points) bp.push_back(project_to_boundary(omega, pt.line.unit()));
    d = quasi_metric_dimension(bp, omega, ellipsoid_centre(gs.dim()), scales,
                               std::min(kMinBoxPoints, bp.size()));
  } else {
    const SymMetric m = parse_sym_metric(metric);
    const LimitSample sample = sample_from(s, p);
    report_sample(sample, err);
    d = box_dimension(sample.points, m, scales, std::min(kMinBoxPoints, sample.points.size()));
  }
  Sink sink(p.get("out", ""), out);
  *sink << dimension_json(d);
  sink.close();
  return kOk;
}

int cmd_hilbert(const Params& p, std::ostream& out, std::ostream& err) {
  const Scenario s = scenario_from(p);
  const GeneratorSet gs = to_ellipsoid_model(s);
  const int n = gs.dim();
  const ConvexDomain omega = ConvexDomain::ellipsoid(n);
  const ProjPoint base = ellipsoid_centre(n);
  const int word_len = positive_int(p, "word_len", VerifyOptions{}.word_len);
  const int count = positive_int(p, "count", VerifyOptions{}.count);
  const int scales = positive_int(p, "scales", kDefaultScales);

  const LimitSample sample = sample_limit_set(gs, word_len, count, s.seed);
  report_sample(sample, err);
  std::vector<BoundaryPoint> bp;
  bp.reserve(sample.points.size());
  for (const auto& pt : sample.points) bp.push_back(project_to_boundary(omega, pt.line.unit()));

  // Neighbours in word order (close pairs) plus as many seeded random pairs.
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i + 1 < bp.size(); ++i) pairs.emplace_back(i, i + 1);
  std::uint64_t state = s.seed ^ 0x9e3779b97f4a7c15ULL;
  for (std::size_t k = 0; k + 1 < bp.size(); ++k) {
    const auto i = static_cast<std::size_t>(unit_random(state) * static_cast<double>(bp.size()));
    const auto j = static_cast<std::size_t>(unit_random(state) * static_cast<double>(bp.size()));
    if (i != j) pairs.emplace_back(std::min(i, j), std::max(i, j));
  }
  const ComparisonResult cmp = comparison_ratio(omega, base, bp, pairs);
  const DimensionEstimate qdim =
      quasi_metric_dimension(bp, omega, base, scales, std::min(kMinBoxPoints, bp.size()));
  const ExponentEstimate orbit =
      hilbert_orbit_exponent(omega, gs, base, max_len_from(p, 10), bin_from(p), enumeration_from(p).budget);

  if (p.has("out")) {
    Sink csv(p.get("out", ""), out);
    write_pairs_header(*csv);
    for (const auto& row : cmp.rows) write_pairs_row(*csv, row);
    csv.close();
  }
  Sink sink(p.get("report", ""), out);
  *sink << comparison_json(cmp, &qdim, &orbit);
  sink.close();
  return kOk;
}

int cmd_verify(const Params& p, std::ostream& out, std::ostream& err) {
  const std::string name = p.get("name", "");
  if (name.empty()) throw InputError("no scenario given (use --scenario or name= in the config file)");
  const VerificationReport r = run_verify(name, p);
  Sink sink(p.get("report", ""), out);
  *sink << report_json(r);
  sink.close();
  for (const auto& c : r.checks) {
    err << (c.pass ? "PASS " : "FAIL ") << c.name << "  lhs=" << format_number(c.lhs)
        << " rhs=" << format_number(c.rhs) << " margin=" << format_number(c.margin) << '\n';
  }
  return r.passed() ? kOk : kCheckFailed;
}

int cmd_list(std::ostream& out) {
  for (const auto& e : scenario_catalog()) out << e.name << '\t' << e.ambient_n << '\t' << e.description << '\n';
  return kOk;
}

}  // namespace

int run_subcommand(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Critical exponents and symmetric limit sets of Anosov subgroups", "anosov"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "anosov " + version_info().at("anosov"));

  Invocation inv;
  struct Entry {
    const char* name;
    const char* help;
    std::vector<const char*> flags;
  };
  const Entry entries[] = {
      {"ball", "enumerate the word ball (CSV: word, length, mu_i)", {"scenario", "seed", "max-len", "budget", "out"}},
      {"conjugacy", "enumerate cyclic conjugacy classes (CSV: word, length, lambda_i)",
       {"scenario", "seed", "max-len", "budget", "out"}},
      {"exponent", "critical exponent of a linear form (JSON)",
       {"scenario", "seed", "max-len", "bin", "form", "budget", "out"}},
      {"entropy", "entropy of a linear form over conjugacy classes (JSON)",
       {"scenario", "seed", "max-len", "bin", "form", "budget", "out"}},
      {"limit-set", "sample the symmetric limit set (CSV)", {"scenario", "seed", "word-len", "count", "out"}},
      {"boxdim", "box-counting dimension of the sampled limit set (JSON)",
       {"scenario", "seed", "word-len", "count", "metric", "scales", "out"}},
      {"hilbert", "Hilbert-geometry comparison: pairs CSV (--out), JSON summary (--report)",
       {"scenario", "seed", "word-len", "count", "scales", "max-len", "bin", "budget", "out", "report"}},
      {"verify", "run the full pipeline and the inequality checks (JSON report)",
       {"scenario", "seed", "max-len", "word-len", "count", "bin", "scales", "budget", "report", "expect-ratio"}},
  };
  std::map<std::string, CLI::App*> subs;
  for (const auto& e : entries) {
    CLI::App* sub = app.add_subcommand(e.name, e.help);
    add_flags(sub, inv, e.flags);
    subs[e.name] = sub;
  }
  subs["list-scenarios"] = app.add_subcommand("list-scenarios", "print the scenario catalog");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n";
    const CLI::App* failing = &app;
    for (const auto& [name, sub] : subs) {
      if (sub->parsed()) failing = sub;
    }
    err << failing->help();
    return kInputError;
  }

  try {
    for (const auto& [name, sub] : subs) {
      if (!sub->parsed()) continue;
      if (name == "list-scenarios") return cmd_list(out);
      const Params p = resolve(inv, sub);
      if (name == "ball") return cmd_ball(p, out);
      if (name == "conjugacy") return cmd_conjugacy(p, out);
      if (name == "exponent") return cmd_exponent(p, out);
      if (name == "entropy") return cmd_entropy(p, out);
      if (name == "limit-set") return cmd_limit_set(p, out, err);
      if (name == "boxdim") return cmd_boxdim(p, out, err);
      if (name == "hilbert") return cmd_hilbert(p, out, err);
      if (name == "verify") return cmd_verify(p, out, err);
    }
  } catch (const InputError& e) {
    err << "input error: " << e.what() << '\n';
    return kInputError;
  } catch (const NumericError& e) {
    err << "numeric error: " << e.what() << '\n';
    return kNumericError;
  } catch (const ResourceError& e) {
    err << "resource error: " << e.what() << '\n';
    return kNumericError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kNumericError;
  }
  err << app.help();
  return kInputError;
}

}  // namespace anosov::cli
