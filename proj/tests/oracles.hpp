#pragma once

// Reference computations for the tests. Each one takes a route that shares no
// code with the library: singular values from the symmetric eigenproblem of
// g^T g, minors by cofactor expansion, words by brute force over all letter
// strings.

#include "anosov/linalg.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <set>
#include <vector>

namespace oracle {

using anosov::Mat;
using anosov::Vec;

/// Gaussian matrix with positive determinant, rescaled to determinant 1.
inline Mat random_sl(std::mt19937_64& rng, int n, double scale = 1.0) {
  std::normal_distribution<double> normal(0.0, scale);
  Mat m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = normal(rng);
  double det = m.determinant();
  if (det < 0) {
    m.row(0) *= -1.0;
    det = -det;
  }
  return m / std::pow(det, 1.0 / n);
}

/// log singular values, nonincreasing, from the eigenvalues of m^T m.
inline std::vector<double> log_singular_values(const Mat& m) {
  Eigen::SelfAdjointEigenSolver<Mat> es(m.transpose() * m, Eigen::EigenvaluesOnly);
  std::vector<double> out;
  for (int i = 0; i < es.eigenvalues().size(); ++i) out.push_back(0.5 * std::log(es.eigenvalues()(i)));
  std::sort(out.rbegin(), out.rend());
  return out;
}

/// Determinant by Laplace expansion along the first row.
inline double laplace_det(const Mat& m) {
  const int n = static_cast<int>(m.rows());
  if (n == 1) return m(0, 0);
  double sum = 0.0;
  for (int j = 0; j < n; ++j) {
    Mat minor(n - 1, n - 1);
    for (int r = 1; r < n; ++r)
      for (int c = 0, cc = 0; c < n; ++c)
        if (c != j) minor(r - 1, cc++) = m(r, c);
    sum += ((j % 2) ? -1.0 : 1.0) * m(0, j) * laplace_det(minor);
  }
  return sum;
}

inline void subsets(int n, int k, int start, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == k) {
    out.push_back(cur);
    return;
  }
  for (int i = start; i < n; ++i) {
    cur.push_back(i);
    subsets(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

/// Matrix of k x k minors, rows and columns in lexicographic subset order.
inline Mat compound_matrix(const Mat& m, int k) {
  std::vector<std::vector<int>> idx;
  std::vector<int> cur;
  subsets(static_cast<int>(m.rows()), k, 0, cur, idx);
  const int d = static_cast<int>(idx.size());
  Mat out(d, d);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) {
      Mat sub(k, k);
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) sub(i, j) = m(idx[a][i], idx[b][j]);
      out(a, b) = laplace_det(sub);
    }
  return out;
}

/// Letters 0..2k-1 with inverse l ^ 1, as in the library encoding.
inline bool freely_reduced(const std::vector<int>& w) {
  for (std::size_t i = 0; i + 1 < w.size(); ++i)
    if ((w[i] ^ 1) == w[i + 1]) return false;
  return true;
}

inline bool cyclically_reduced(const std::vector<int>& w) {
  return freely_reduced(w) && (w.size() < 2 || (w.front() ^ 1) != w.back());
}

/// Number of conjugacy classes of nontrivial elements whose cyclically reduced
/// length is exactly `len`, by listing all letter strings and collecting
/// their rotation classes.
inline std::uint64_t brute_force_classes(int rank, int len) {
  const int letters = 2 * rank;
  std::set<std::vector<int>> classes;
  std::vector<int> w(static_cast<std::size_t>(len), 0);
  std::uint64_t total = 1;
  for (int i = 0; i < len; ++i) total *= static_cast<std::uint64_t>(letters);
  for (std::uint64_t code = 0; code < total; ++code) {
    std::uint64_t c = code;
    for (int i = 0; i < len; ++i) {
      w[static_cast<std::size_t>(i)] = static_cast<int>(c % static_cast<std::uint64_t>(letters));
      c /= static_cast<std::uint64_t>(letters);
    }
    if (!cyclically_reduced(w)) continue;
    std::vector<int> best = w;
    std::vector<int> rot = w;
    for (int r = 1; r < len; ++r) {
      std::rotate(rot.begin(), rot.begin() + 1, rot.end());
      best = std::min(best, rot);
    }
    classes.insert(best);
  }
  return classes.size();
}

}  // namespace oracle
