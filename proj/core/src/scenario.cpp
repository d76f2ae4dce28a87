#include "anosov/scenario.hpp"

#include "anosov/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

namespace anosov {

// ---------------------------------------------------------------------------
// Params

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

Params Params::parse(const std::string& text) {
  Params p;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw InputError("config line " + std::to_string(lineno) + ": expected key=value, got '" + t + "'");
    }
    const std::string key = trim(t.substr(0, eq));
    if (key.empty()) throw InputError("config line " + std::to_string(lineno) + ": empty key");
    p.values_[key] = trim(t.substr(eq + 1));
  }
  return p;
}

Params Params::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open config file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

void Params::merge(const Params& other) {
  for (const auto& [k, v] : other.values_) values_[k] = v;
}

std::string Params::get(const std::string& key, const std::string& fallback) const {
  auto it = values_.find(key);
  return it == values_.end() ? fallback : it->second;
}

double Params::get_double(const std::string& key, double fallback) const {
  auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  try {
    std::size_t used = 0;
    const double v = std::stod(it->second, &used);
    if (used != it->second.size() || !std::isfinite(v)) throw std::invalid_argument(key);
    return v;
  } catch (const std::exception&) {
    throw InputError("parameter " + key + " is not a number: '" + it->second + "'");
  }
}

long long Params::get_int(const std::string& key, long long fallback) const {
  auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  try {
    std::size_t used = 0;
    const long long v = std::stoll(it->second, &used);
    if (used != it->second.size()) throw std::invalid_argument(key);
    return v;
  } catch (const std::exception&) {
    throw InputError("parameter " + key + " is not an integer: '" + it->second + "'");
  }
}

std::uint64_t Params::get_u64(const std::string& key, std::uint64_t fallback) const {
  auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  try {
    std::size_t used = 0;
    if (!it->second.empty() && it->second[0] == '-') throw std::invalid_argument(key);
    const unsigned long long v = std::stoull(it->second, &used);
    if (used != it->second.size()) throw std::invalid_argument(key);
    return v;
  } catch (const std::exception&) {
    throw InputError("parameter " + key + " is not an unsigned integer: '" + it->second + "'");
  }
}

// ---------------------------------------------------------------------------
// Builders

double unit_random(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  z ^= z >> 31;
  return static_cast<double>(z >> 11) * 0x1.0p-53;
}

GeneratorSet schottky_sl2(double t, double psi) {
  const double h = t / 2.0;
  const SquareMatrix a = SquareMatrix::from_rows({{std::exp(h), 0.0}, {0.0, std::exp(-h)}});
  const double c = std::cos(psi / 2.0);
  const double s = std::sin(psi / 2.0);
  const SquareMatrix r = SquareMatrix::from_rows({{c, -s}, {s, c}});
  return GeneratorSet({a, r * a * r.inverse()});
}

SquareMatrix so21_boost(double t, double phi) {
  const SquareMatrix boost = SquareMatrix::from_rows(
      {{std::cosh(t), 0.0, std::sinh(t)}, {0.0, 1.0, 0.0}, {std::sinh(t), 0.0, std::cosh(t)}});
  const double c = std::cos(phi);
  const double s = std::sin(phi);
  const SquareMatrix r = SquareMatrix::from_rows({{c, -s, 0.0}, {s, c, 0.0}, {0.0, 0.0, 1.0}});
  return r * boost * r.inverse();
}

double min_separation_angle(const GeneratorSet& gs) {
  struct Ends {
    Vec attracting;
    Vec repelling_normal;  // normal of the repelling hyperplane
  };
  std::vector<Ends> ends;
  for (int c = 0; c < 2 * gs.rank(); ++c) {
    const auto dom = dominant_eigen(gs.letter_matrix(static_cast<Letter>(c)).matrix());
    if (!dom) return 0.0;
    ends.push_back({dom->right.normalized(), dom->left.normalized()});
  }
  double best = std::numbers::pi / 2;
  for (int s = 0; s < 2 * gs.rank(); ++s) {
    for (int s2 = 0; s2 < 2 * gs.rank(); ++s2) {
      if (s2 == inverse_letter(static_cast<Letter>(s))) continue;
      const double sine = std::abs(ends[static_cast<std::size_t>(s)].attracting.dot(
          ends[static_cast<std::size_t>(s2)].repelling_normal));
      best = std::min(best, std::asin(std::min(1.0, sine)));
    }
  }
  return best;
}

namespace {

constexpr double kPi = std::numbers::pi;

// Exact ping-pong check for two hyperbolic isometries of H^2 with translation
// t whose axes pass through the centre at boundary angles 0 and psi: the
// attracting/repelling half-planes have angular half-width acos(tanh(t/2)).
void check_pingpong(const std::string& scenario, double t, double psi) {
  if (!(t > 0.0)) throw InputError(scenario + ": translation length t must be positive");
  if (!(psi > 0.0 && psi < kPi)) throw InputError(scenario + ": axis angle psi must lie in (0, pi)");
  const double half_width = std::acos(std::tanh(t / 2.0));
  const double gap = std::min(psi, kPi - psi);
  if (!(2.0 * half_width < gap)) {
    std::ostringstream msg;
    msg << scenario << ": ping-pong half-planes overlap (t = " << t << ", psi = " << psi
        << "): half-width acos(tanh(t/2)) = " << half_width << " must be below min(psi, pi - psi)/2 = "
        << gap / 2.0 << "; increase t or move psi towards pi/2";
    throw InputError(msg.str());
  }
}

void check_separation(const std::string& scenario, const GeneratorSet& gs) {
  const double angle = min_separation_angle(gs);
  if (angle < kSeparationAngle) {
    std::ostringstream msg;
    msg << scenario << ": generators fail the separation heuristic (min angle between an attracting line "
        << "and a repelling hyperplane is " << angle << " rad, need >= " << kSeparationAngle << ")";
    throw InputError(msg.str());
  }
}

// Shortest text that parses back to the same double.
std::string fmt(double x) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

Scenario schottky_so21(const Params& p) {
  const double t = p.get_double("t", kDefaultTranslation);
  const double psi = p.get_double("psi", kPi / 2);
  check_pingpong("schottky-so21", t, psi);
  GeneratorSet gs({so21_boost(t, 0.0), so21_boost(t, psi)});
  check_separation("schottky-so21", gs);
  Mat form = Mat::Identity(3, 3);
  form(2, 2) = -1.0;
  return Scenario{"schottky-so21",
                  gs,
                  3,
                  p.get_u64("seed", 0),
                  true,
                  form,
                  {{"2*delta_1n == delta_12", ExpectedRelation::Kind::Difference, 2.0, 0.0, 0.05}},
                  {{"t", fmt(t)}, {"psi", fmt(psi)}},
                  "Schottky subgroup of SO(2,1); equality case 2 delta_1n = dim = delta_12."};
}

Scenario fuchsian_irr(const Params& p) {
  const double t = p.get_double("t", kDefaultTranslation);
  const double psi = p.get_double("psi", kPi / 2);
  check_pingpong("fuchsian-irr-sl3", t, psi);
  const GeneratorSet base = schottky_sl2(t, psi);
  check_separation("fuchsian-irr-sl3", base);
  GeneratorSet gs = base.mapped([](const SquareMatrix& g) { return principal_sl2(g, 3); });
  // Sym^2 of SL(2) preserves the discriminant form; in the orthonormal
  // monomial basis it is x_1^2/2 ... written here as the Gram matrix of
  // B(p, q) = p_0 q_2 + p_2 q_0 - p_1 q_1 (up to scale).
  Mat form = Mat::Zero(3, 3);
  form(0, 2) = form(2, 0) = 1.0;
  form(1, 1) = -1.0;
  return Scenario{"fuchsian-irr-sl3",
                  gs,
                  3,
                  p.get_u64("seed", 0),
                  true,
                  form,
                  {{"2*delta_1n / delta_12 == 1", ExpectedRelation::Kind::Ratio, 2.0, 1.0, 1e-6}},
                  {{"t", fmt(t)}, {"psi", fmt(psi)}},
                  "Schottky group of SL(2,R) through the irreducible representation into SL(3,R)."};
}

Scenario fuchsian_red(const Params& p) {
  const double t = p.get_double("t", kDefaultTranslation);
  const double psi = p.get_double("psi", kPi / 2);
  check_pingpong("fuchsian-red-sl3", t, psi);
  const GeneratorSet base = schottky_sl2(t, psi);
  check_separation("fuchsian-red-sl3", base);
  return Scenario{"fuchsian-red-sl3",
                  base.mapped(block_embed),
                  3,
                  p.get_u64("seed", 0),
                  false,
                  std::nullopt,
                  {{"delta_1n / delta_12 == 1/2", ExpectedRelation::Kind::Ratio, 1.0, 0.5, 1e-6}},
                  {{"t", fmt(t)}, {"psi", fmt(psi)}},
                  "Schottky group of SL(2,R) embedded block-diagonally as diag(g, 1)."};
}

Scenario cocycle_sl3(const Params& p) {
  const double t = p.get_double("t", kDefaultTranslation);
  const double psi = p.get_double("psi", kPi / 2);
  check_pingpong("cocycle-sl3", t, psi);
  const GeneratorSet base = schottky_sl2(t, psi);
  check_separation("cocycle-sl3", base);
  const std::uint64_t seed = p.get_u64("seed", 0);
  const std::string mode = p.get("cocycle", "random");
  std::uint64_t state = seed;
  auto draw = [&] { return 2.0 * unit_random(state) - 1.0; };
  std::optional<Cocycle> u;
  std::string vtext;
  if (mode == "random") {
    std::vector<Vec> vals;
    for (int i = 0; i < base.rank(); ++i) {
      Vec v(2);
      v << draw(), draw();
      vals.push_back(v);
    }
    u.emplace(std::move(vals));
  } else if (mode == "coboundary") {
    Vec v(2);
    v << draw(), draw();
    vtext = fmt(v[0]) + "," + fmt(v[1]);
    u.emplace(Cocycle::coboundary(base, v));
  } else if (mode == "zero") {
    u.emplace(std::vector<Vec>(static_cast<std::size_t>(base.rank()), Vec::Zero(2)));
  } else {
    throw InputError("cocycle-sl3: cocycle mode must be random|coboundary|zero, got '" + mode + "'");
  }
  std::vector<SquareMatrix> gens;
  std::map<std::string, std::string> params{{"t", fmt(t)}, {"psi", fmt(psi)}, {"cocycle", mode}};
  for (int i = 0; i < base.rank(); ++i) {
    const Vec& ui = u->generator_values()[static_cast<std::size_t>(i)];
    gens.push_back(affine_block(base.generator(i), ui));
    params["u_" + base.labels()[static_cast<std::size_t>(i)]] = fmt(ui[0]) + "," + fmt(ui[1]);
  }
  if (!vtext.empty()) params["v"] = vtext;
  return Scenario{"cocycle-sl3",
                  GeneratorSet(std::move(gens)),
                  3,
                  seed,
                  false,
                  std::nullopt,
                  {},
                  std::move(params),
                  "Affine deformation [[g, u(g)], [0, 1]] of a Schottky group of SL(2,R)."};
}

Scenario product_sl4(const Params& p) {
  const double t1 = p.get_double("t", kDefaultTranslation);
  const double psi1 = p.get_double("psi", kPi / 2);
  const double t2 = p.get_double("t2", 2.5);
  const double psi2 = p.get_double("psi2", 1.3);
  check_pingpong("product-sl4 (j1)", t1, psi1);
  check_pingpong("product-sl4 (j2)", t2, psi2);
  const GeneratorSet j1 = schottky_sl2(t1, psi1);
  const GeneratorSet j2 = schottky_sl2(t2, psi2);
  check_separation("product-sl4 (j1)", j1);
  check_separation("product-sl4 (j2)", j2);
  std::vector<SquareMatrix> gens;
  for (int i = 0; i < j1.rank(); ++i) gens.push_back(tensor_product(j1.generator(i), j2.generator(i)));
  return Scenario{"product-sl4",
                  GeneratorSet(std::move(gens)),
                  4,
                  p.get_u64("seed", 0),
                  false,
                  std::nullopt,
                  {},
                  {{"t", fmt(t1)}, {"psi", fmt(psi1)}, {"t2", fmt(t2)}, {"psi2", fmt(psi2)}},
                  "j1 (x) j2 for two Schottky representations of F_2 into SL(2,R), inside SL(4,R)."};
}

Scenario dgk_embed(const Params& p) {
  const std::string base_name = p.get("base", "schottky-so21");
  if (base_name == "dgk-embed") throw InputError("dgk-embed cannot embed itself");
  Scenario base = build_scenario(base_name, p);
  GeneratorSet gs = base.generators.mapped(sym_square);
  auto params = base.params;
  params["base"] = base_name;
  return Scenario{"dgk-embed",
                  std::move(gs),
                  base.ambient_n * (base.ambient_n + 1) / 2,
                  base.seed,
                  true,
                  std::nullopt,
                  {},
                  std::move(params),
                  "Base scenario composed with the symmetric square (action on quadratic forms)."};
}

}  // namespace

const std::vector<CatalogEntry>& scenario_catalog() {
  static const std::vector<CatalogEntry> catalog{
      {"schottky-so21", 3, "Schottky subgroup of SO(2,1) (params: t, psi)"},
      {"fuchsian-irr-sl3", 3, "SL(2) Schottky group via the irreducible representation (params: t, psi)"},
      {"fuchsian-red-sl3", 3, "SL(2) Schottky group embedded as diag(g, 1) (params: t, psi)"},
      {"cocycle-sl3", 3, "affine deformation by a cocycle (params: t, psi, seed, cocycle=random|coboundary|zero)"},
      {"product-sl4", 4, "tensor product of two SL(2) Schottky groups (params: t, psi, t2, psi2)"},
      {"dgk-embed", 6, "base scenario composed with Sym^2 (params: base + base params)"},
  };
  return catalog;
}

Scenario build_scenario(const std::string& name, const Params& params) {
  Scenario s = [&]() -> Scenario {
    if (name == "schottky-so21") return schottky_so21(params);
    if (name == "fuchsian-irr-sl3") return fuchsian_irr(params);
    if (name == "fuchsian-red-sl3") return fuchsian_red(params);
    if (name == "cocycle-sl3") return cocycle_sl3(params);
    if (name == "product-sl4") return product_sl4(params);
    if (name == "dgk-embed") return dgk_embed(params);
    std::string names;
    for (const auto& e : scenario_catalog()) names += (names.empty() ? "" : ", ") + e.name;
    throw InputError("unknown scenario '" + name + "' (catalog: " + names + ")");
  }();
  if (params.has("n") && params.get_int("n", 0) != s.ambient_n) {
    throw InputError("scenario " + name + " lives in dimension " + std::to_string(s.ambient_n) +
                     ", config requests n = " + params.get("n", ""));
  }
  s.params["seed"] = std::to_string(s.seed);
  return s;
}

}  // namespace anosov
