#include "anosov/limit_set.hpp"

#include "anosov/errors.hpp"
#include "anosov/parallel.hpp"

#include <algorithm>
#include <numbers>
#include <numeric>
#include <sstream>

namespace anosov {

namespace {

Vec top_left_singular_vector(const Mat& m) {
  if (m.rows() <= 16) {
    Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeThinU);
    return svd.matrixU().col(0);
  }
  Eigen::BDCSVD<Mat> svd(m, Eigen::ComputeThinU);
  return svd.matrixU().col(0);
}

}  // namespace

SymLimitPoint limit_point_of(const GeneratorSet& gs, const Word& w) {
  const SquareMatrix g = word_matrix(gs, w);
  const CartanVector mu = cartan_projection(g);
  const std::size_t n = mu.size();
  return SymLimitPoint{ProjPoint(top_left_singular_vector(g.matrix())),
                       DualProjPoint(top_left_singular_vector(g.inverse_matrix().transpose())), w,
                       mu[0] - mu[1], mu[n - 2] - mu[n - 1]};
}

LimitSample sample_limit_set(const GeneratorSet& gs, int word_len, int count, std::uint64_t seed, double min_gap) {
  if (word_len < 4) throw InputError("limit-set sampling needs word_len >= 4");
  if (count <= 0) throw InputError("limit-set sample count must be positive");
  if (!gs.free()) throw UnsupportedError("limit-set sampling walks reduced words of a free generator set");
  const std::uint64_t total = reduced_word_count(gs.rank(), word_len);
  const auto want = static_cast<std::uint64_t>(count);
  if (want > total) {
    throw InputError("requested " + std::to_string(count) + " distinct words but only " + std::to_string(total) +
                     " reduced words have length " + std::to_string(word_len));
  }
  const std::uint64_t stride = total / want;
  const std::uint64_t offset = seed % stride;

  struct Outcome {
    std::optional<SymLimitPoint> point;
    int status = 0;  // 0 kept, 1 low quality, 2 rejected
    std::string note;
  };
  const auto outcomes = parallel_map<Outcome>(want, [&](std::size_t i) {
    const Word w = reduced_word_at(gs.rank(), word_len, offset + static_cast<std::uint64_t>(i) * stride);
    SymLimitPoint p = limit_point_of(gs, w);
    const double certificate = std::min(p.gap, p.dual_gap);
    Outcome o;
    if (!(certificate >= kMinimalGap)) {
      o.status = 2;
      std::ostringstream msg;
      msg << "word " << gs.format(w) << ": singular gap " << certificate
          << " below 1e-6, the representation is likely not Anosov";
      o.note = msg.str();
    } else if (certificate < min_gap) {
      o.status = 1;
    } else {
      o.point = std::move(p);
    }
    return o;
  });

  LimitSample out;
  for (const auto& o : outcomes) {
    if (o.point) {
      out.points.push_back(*o.point);
    } else if (o.status == 1) {
      ++out.discarded_low_quality;
    } else {
      ++out.rejected;
      if (out.diagnostics.size() < 10) out.diagnostics.push_back(o.note);
    }
  }
  if (out.points.empty()) {
    std::ostringstream msg;
    msg << "no limit-set sample passed the quality filter (" << out.rejected << " rejected, "
        << out.discarded_low_quality << " below gap " << min_gap << ")";
    if (!out.diagnostics.empty()) msg << "; first: " << out.diagnostics.front();
    throw NumericError(msg.str());
  }
  return out;
}

namespace {

constexpr std::size_t kCacheLimit = 4096;

}  // namespace

DimensionEstimate box_dimension(std::size_t count, const IndexMetric& metric, int scale_count,
                                std::size_t min_points) {
  if (count < min_points) {
    throw InputError("box dimension needs at least " + std::to_string(min_points) + " points, got " +
                     std::to_string(count));
  }
  if (scale_count < 2) throw InputError("box dimension needs at least 2 scales");

  // Pairwise distances are cached for moderate sizes: the diameter pass
  // touches every pair anyway and expensive metrics dominate the net passes.
  std::vector<double> cache;
  const bool cached = count <= kCacheLimit;
  if (cached) {
    cache.assign(count * count, 0.0);
    parallel_for(count, [&](std::size_t i) {
      for (std::size_t j = i + 1; j < count; ++j) cache[i * count + j] = metric(i, j);
    });
    for (std::size_t i = 0; i < count; ++i) {
      for (std::size_t j = i + 1; j < count; ++j) cache[j * count + i] = cache[i * count + j];
    }
  }
  auto dist = [&](std::size_t i, std::size_t j) { return cached ? cache[i * count + j] : metric(i, j); };

  const auto row_max = parallel_map<double>(count, [&](std::size_t i) {
    double m = 0.0;
    for (std::size_t j = i + 1; j < count; ++j) m = std::max(m, dist(i, j));
    return m;
  });
  const double diam = *std::max_element(row_max.begin(), row_max.end());

  DimensionEstimate est;
  est.points = count;
  est.diameter = diam;
  if (!(diam > 0.0)) {
    est.degenerate = true;
    est.low_confidence = true;
    for (int j = 2; j <= scale_count + 1; ++j) est.scales.emplace_back(0.0, 1);
    return est;
  }

  std::vector<std::size_t> centres;
  for (int j = 2; j <= scale_count + 1; ++j) {
    const double eps = diam / std::ldexp(1.0, j);
    centres.clear();
    for (std::size_t p = 0; p < count; ++p) {
      bool covered = false;
      for (std::size_t c : centres) {
        if (dist(p, c) <= eps) {
          covered = true;
          break;
        }
      }
      if (!covered) centres.push_back(p);
    }
    est.scales.emplace_back(eps, centres.size());
    // Finer scales cannot enter the density window; their nets cost O(n^2).
    if (centres.size() > count / 2) break;
  }

  const auto guard = static_cast<std::uint64_t>(count / 10);
  std::vector<std::size_t> window;
  for (std::size_t s = 0; s < est.scales.size(); ++s) {
    if (est.scales[s].second <= guard) window.push_back(s);
  }
  if (window.size() < 3) est.low_confidence = true;
  // Too few guarded scales for a slope: widen to the unsaturated ones, then
  // to everything.
  if (window.size() < 2) {
    window.clear();
    for (std::size_t s = 0; s < est.scales.size(); ++s) {
      if (est.scales[s].second <= count / 2) window.push_back(s);
    }
  }
  if (window.size() < 2) {
    window.resize(est.scales.size());
    std::iota(window.begin(), window.end(), std::size_t{0});
  }
  if (window.size() < 2) return est;
  est.window_lo = static_cast<int>(window.front());
  est.window_hi = static_cast<int>(window.back());

  const auto m = static_cast<double>(window.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t s : window) {
    mx += -std::log(est.scales[s].first);
    my += std::log(static_cast<double>(est.scales[s].second));
  }
  mx /= m;
  my /= m;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t s : window) {
    const double x = -std::log(est.scales[s].first) - mx;
    sxx += x * x;
    sxy += x * (std::log(static_cast<double>(est.scales[s].second)) - my);
  }
  const double slope = sxy / sxx;
  double ssr = 0.0;
  for (std::size_t s : window) {
    const double x = -std::log(est.scales[s].first) - mx;
    const double r = std::log(static_cast<double>(est.scales[s].second)) - my - slope * x;
    ssr += r * r;
  }
  est.value = std::max(0.0, slope);
  est.std_error = window.size() > 2 ? std::sqrt(ssr / (m - 2.0) / sxx) : 0.0;
  return est;
}

DimensionEstimate box_dimension(const std::vector<Vec>& coords,
                                const std::function<double(const Vec&, const Vec&)>& metric, int scale_count,
                                std::size_t min_points) {
  std::vector<std::size_t> order(coords.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::lexicographical_compare(coords[a].begin(), coords[a].end(), coords[b].begin(), coords[b].end());
  });
  return box_dimension(
      coords.size(), [&](std::size_t i, std::size_t j) { return metric(coords[order[i]], coords[order[j]]); },
      scale_count, min_points);
}

SymMetric parse_sym_metric(const std::string& name) {
  if (name == "sym") return SymMetric::Sym;
  if (name == "line") return SymMetric::Line;
  if (name == "dual") return SymMetric::Dual;
  throw InputError("unknown metric '" + name + "' (expected sym|line|dual)");
}

DimensionEstimate box_dimension(const std::vector<SymLimitPoint>& points, SymMetric metric, int scale_count,
                                std::size_t min_points) {
  std::vector<Vec> coords;
  coords.reserve(points.size());
  for (const auto& p : points) {
    Vec c(p.line.dim() + p.hyperplane.dim());
    c << p.line.unit(), p.hyperplane.unit();
    coords.push_back(std::move(c));
  }
  std::vector<std::size_t> order(coords.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::lexicographical_compare(coords[a].begin(), coords[a].end(), coords[b].begin(), coords[b].end());
  });
  auto d = [&](std::size_t i, std::size_t j) {
    const SymLimitPoint& a = points[order[i]];
    const SymLimitPoint& b = points[order[j]];
    switch (metric) {
      case SymMetric::Line:
        return proj_distance(a.line, b.line);
      case SymMetric::Dual:
        return proj_distance(a.hyperplane, b.hyperplane);
      case SymMetric::Sym:
        break;
    }
    return sym_distance(SymPoint{a.line, a.hyperplane}, SymPoint{b.line, b.hyperplane});
  };
  return box_dimension(points.size(), d, scale_count, min_points);
}

double distortion_check(const SquareMatrix& g, double r, int sample) {
  if (!(r > 0.0 && r <= 0.1)) throw InputError("distortion radius must lie in (0, 0.1]");
  if (sample <= 0) throw InputError("distortion sample size must be positive");
  const int n = g.dim();
  const auto dom = dominant_eigen(g.matrix());
  if (!dom) throw InputError("distortion check needs a proximal matrix");
  const Vec e1 = Vec::Unit(n, 0);
  const double line_angle = angle_between(dom->right, e1);
  const double hyper_angle = angle_between(dom->left, e1);
  if (line_angle > 1e-6 || hyper_angle > 1e-6) {
    std::ostringstream msg;
    msg << "distortion check needs the attracting line along e1 and the repelling hyperplane span(e2..en); "
        << "off by " << line_angle << " and " << hyper_angle << " rad (conjugate g first)";
    throw InputError(msg.str());
  }
  const CartanVector mu = cartan_projection(g);
  const double scale = r * std::exp(mu[1] - mu[0]);
  std::uint64_t state = 0x5eed;
  auto uniform = [&state] {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    z ^= z >> 31;
    return static_cast<double>(z >> 11) * 0x1.0p-53;
  };
  double worst = 0.0;
  for (int s = 0; s < sample; ++s) {
    Vec u = Vec::Zero(n);
    if (n == 2) {
      u[1] = (s % 2 == 0) ? 1.0 : -1.0;
    } else if (n == 3) {
      const double theta = 2.0 * std::numbers::pi * s / sample;
      u[1] = std::cos(theta);
      u[2] = std::sin(theta);
    } else {
      for (int i = 1; i < n; ++i) u[i] = 2.0 * uniform() - 1.0;
      if (u.norm() == 0.0) u[1] = 1.0;
      u.normalize();
    }
    const Vec p = std::cos(r) * e1 + std::sin(r) * u;
    worst = std::max(worst, angle_between(g.matrix() * p, e1) / scale);
  }
  return worst;
}

}  // namespace anosov
