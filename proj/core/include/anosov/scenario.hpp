#pragma once

#include "anosov/representations.hpp"
#include "anosov/words.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace anosov {

/// key=value settings, from a config file and/or command-line overrides.
/// Later assignments win. Lines starting with '#' are comments.
class Params {
 public:
  Params() = default;
  static Params parse(const std::string& text);
  static Params load(const std::string& path);

  void set(const std::string& key, const std::string& value) { values_[key] = value; }
  void merge(const Params& other);
  bool has(const std::string& key) const { return values_.count(key) != 0; }

  std::string get(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key, double fallback) const;
  long long get_int(const std::string& key, long long fallback) const;
  std::uint64_t get_u64(const std::string& key, std::uint64_t fallback) const;

  const std::map<std::string, std::string>& values() const { return values_; }

 private:
  std::map<std::string, std::string> values_;
};

/// A relation between the Hilbert and simple-root exponents that a scenario
/// satisfies exactly.
struct ExpectedRelation {
  enum class Kind { Difference, Ratio };
  std::string name;
  Kind kind;
  double coefficient;  // c in c*delta_1n
  double target;       // Ratio: c*delta_1n/delta_12 == target; Difference: c*delta_1n - delta_12 == target
  double tolerance;
};

struct Scenario {
  std::string name;
  GeneratorSet generators;
  int ambient_n;
  std::uint64_t seed;
  /// Which lower bound applies: 2*delta_1n (convex cocompact) or delta_1n.
  bool convex_cocompact;
  /// Quadratic form preserved by the group (ellipsoid model), if any.
  std::optional<Mat> invariant_form;
  std::vector<ExpectedRelation> expected;
  /// Resolved parameters, including defaults, for reporting.
  std::map<std::string, std::string> params;
  std::string notes;
};

struct CatalogEntry {
  std::string name;
  int ambient_n;
  std::string description;
};

const std::vector<CatalogEntry>& scenario_catalog();

/// Throws InputError for an unknown name or parameters failing the ping-pong
/// separation checks.
Scenario build_scenario(const std::string& name, const Params& params = {});

inline constexpr double kDefaultTranslation = 2.0;
inline constexpr double kSeparationAngle = 0.3;

/// Two-generator Schottky group in SL(2,R): a = diag(e^(t/2), e^(-t/2)) and
/// b = its conjugate by the rotation of angle psi/2 (axes psi apart on the
/// boundary circle).
GeneratorSet schottky_sl2(double t, double psi);

/// Boost of translation length t along the axis at boundary angle phi,
/// preserving x1^2 + x2^2 - x3^2.
SquareMatrix so21_boost(double t, double phi);

/// Smallest angle between the attracting line of s and the repelling
/// hyperplane of s', over generators and inverses with s' != s^-1.
double min_separation_angle(const GeneratorSet& gs);

/// Deterministic uniform double in [0, 1) from a 64-bit state (splitmix64).
double unit_random(std::uint64_t& state);

}  // namespace anosov
