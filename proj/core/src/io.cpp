#include "anosov/io.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>

namespace anosov {

using nlohmann::json;

double round12(double x) {
  if (x == 0.0) return 0.0;  // drops the sign of -0
  if (!std::isfinite(x)) return x;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return std::strtod(buf, nullptr);
}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (x == 0.0) return "0";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

namespace {

void header(std::ostream& out, const char* lead, const char* stem, int n) {
  out << lead;
  for (int i = 1; i <= n; ++i) out << ',' << stem << i;
  out << '\n';
}

void values(std::ostream& out, const CartanVector& v) {
  for (double x : v.values()) out << ',' << format_number(x);
}

json number(double x) {
  if (!std::isfinite(x)) return nullptr;
  return round12(x);
}

json numbers(const std::vector<double>& xs) {
  json a = json::array();
  for (double x : xs) a.push_back(number(x));
  return a;
}

json estimate_object(const ExponentEstimate& e) {
  return json{{"form", numbers(e.form)},
              {"value", number(e.value)},
              {"stderr", number(e.std_error)},
              {"window", json::array({number(e.window_lo), number(e.window_hi)})},
              {"count_at_hi", e.count_at_hi},
              {"method", e.method},
              {"diagnostics",
               {{"max_local_slope_deviation", number(e.diagnostics)},
                {"thresholds_used", e.points},
                {"low_confidence", e.low_confidence},
                {"degenerate", e.degenerate}}}};
}

json dimension_object(const DimensionEstimate& d) {
  json scales = json::array();
  for (const auto& [eps, count] : d.scales) scales.push_back(json::array({number(eps), count}));
  return json{{"value", number(d.value)},
              {"stderr", number(d.std_error)},
              {"scales", scales},
              {"window", json::array({d.window_lo, d.window_hi})},
              {"diagnostics",
               {{"points", d.points},
                {"diameter", number(d.diameter)},
                {"low_confidence", d.low_confidence},
                {"degenerate", d.degenerate}}}};
}

}  // namespace

void write_ball_header(std::ostream& out, int n) { header(out, "word,length", "mu_", n); }

void write_ball_row(std::ostream& out, const GeneratorSet& gs, const BallEntry& e) {
  out << gs.format(e.word) << ',' << e.word.length();
  values(out, e.mu);
  out << '\n';
}

void write_conjugacy_header(std::ostream& out, int n) { header(out, "word,length", "lambda_", n); }

void write_conjugacy_row(std::ostream& out, const GeneratorSet& gs, const ConjClassEntry& e) {
  out << gs.format(e.representative) << ',' << e.representative.length();
  values(out, e.lambda);
  out << '\n';
}

void write_points_header(std::ostream& out, int n) {
  out << "word,gap";
  for (int i = 1; i <= n; ++i) out << ",line_" << i;
  for (int i = 1; i <= n; ++i) out << ",hyp_" << i;
  out << '\n';
}

void write_points_row(std::ostream& out, const GeneratorSet& gs, const SymLimitPoint& p) {
  out << gs.format(p.word) << ',' << format_number(p.gap);
  for (int i = 0; i < p.line.dim(); ++i) out << ',' << format_number(p.line[i]);
  for (int i = 0; i < p.hyperplane.dim(); ++i) out << ',' << format_number(p.hyperplane[i]);
  out << '\n';
}

void write_pairs_header(std::ostream& out) { out << "p,q,d,d_star,d_x,ratio,band\n"; }

void write_pairs_row(std::ostream& out, const ComparisonRow& row) {
  out << row.p << ',' << row.q << ',' << format_number(row.d) << ',' << format_number(row.d_star) << ','
      << format_number(row.d_x) << ',' << format_number(row.ratio) << ',' << row.band << '\n';
}

std::string estimate_json(const ExponentEstimate& e) { return estimate_object(e).dump(2) + "\n"; }

std::string dimension_json(const DimensionEstimate& d) { return dimension_object(d).dump(2) + "\n"; }

std::string comparison_json(const ComparisonResult& c, const DimensionEstimate* quasi_dim,
                            const ExponentEstimate* orbit_exponent) {
  json bands = json::array();
  for (const auto& b : c.bands) {
    bands.push_back({{"band", b.band}, {"count", b.count}, {"max_ratio", number(b.max_ratio)}});
  }
  json doc{{"max_ratio", number(c.max_ratio)}, {"bands", bands}, {"pairs", c.rows.size()}, {"skipped", c.skipped}};
  if (quasi_dim) doc["quasi_metric_dimension"] = dimension_object(*quasi_dim);
  if (orbit_exponent) doc["hilbert_orbit_exponent"] = estimate_object(*orbit_exponent);
  return doc.dump(2) + "\n";
}

std::string report_json(const VerificationReport& r, bool include_runtime) {
  json checks = json::array();
  for (const auto& c : r.checks) {
    checks.push_back({{"name", c.name},
                      {"lhs", number(c.lhs)},
                      {"rhs", number(c.rhs)},
                      {"margin", number(c.margin)},
                      {"allowance", number(c.allowance)},
                      {"pass", c.pass}});
  }
  json extras = json::object();
  for (const auto& [k, v] : r.extras) extras[k] = number(v);
  json doc{
      {"scenario", {{"name", r.scenario}, {"params", r.params}, {"seed", r.seed}, {"ambient_n", r.ambient_n},
                    {"convex_cocompact", r.convex_cocompact}}},
      {"options", {{"max_len", r.options.max_len}, {"word_len", r.options.word_len}, {"count", r.options.count},
                   {"bin", number(r.options.bin)}, {"scales", r.options.scales}, {"budget", r.options.budget}}},
      {"delta12", estimate_object(r.delta12)},
      {"delta1n", estimate_object(r.delta1n)},
      {"delta1", estimate_object(r.delta1)},
      {"h12", estimate_object(r.h12)},
      {"h1n", estimate_object(r.h1n)},
      {"boxdim_sym", dimension_object(r.boxdim_sym)},
      {"boxdim_line", dimension_object(r.boxdim_line)},
      {"boxdim_dual", dimension_object(r.boxdim_dual)},
      {"limit_sample", {{"points", r.limit_points}, {"discarded_low_quality", r.discarded_low_quality},
                        {"rejected", r.rejected}, {"diagnostics", r.diagnostics}}},
      {"extras", extras},
      {"inequality_checks", checks},
      {"pass", r.passed()},
      {"versions", r.versions}};
  if (include_runtime) doc["runtime_s"] = number(r.runtime_s);
  return doc.dump(2) + "\n";
}

}  // namespace anosov
