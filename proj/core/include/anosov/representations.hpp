#pragma once

#include "anosov/linalg.hpp"
#include "anosov/words.hpp"

#include <map>
#include <string>
#include <vector>

namespace anosov {

// Every functor maps the stored inverse as well, so products of images keep
// an accurate inverse.

/// Lambda^i g on the C(n,i)-dimensional space, basis e_{j1}^...^e_{ji} with
/// j1 < ... < ji in lexicographic order; entries are i x i minors.
SquareMatrix exterior_power(const SquareMatrix& g, int i);

/// Action S -> g S g^T on symmetric tensors, in the orthonormal basis
/// e_i e_i (i), sqrt(2) e_i e_j (i < j) ordered lexicographically by (i, j).
/// In this basis rotations act orthogonally, so mu(Sym^2 g)_{ij} = mu_i + mu_j.
SquareMatrix sym_square(const SquareMatrix& g);

/// Kronecker product, basis e_i (x) f_j lexicographic.
SquareMatrix tensor_product(const SquareMatrix& g, const SquareMatrix& h);

/// (g^-1)^T.
SquareMatrix dual_rep(const SquareMatrix& g);

/// Irreducible SL(2) -> SL(n) as Sym^(n-1) of the standard representation,
/// basis sqrt(C(n-1,m)) x^(n-1-m) y^m, m = 0..n-1. For n = 3 this coincides
/// with sym_square.
SquareMatrix principal_sl2(const SquareMatrix& g, int n);

/// A function u: Gamma -> R^2 with u(gh) = u(g) + g u(h), given freely by its
/// values on generators.
class Cocycle {
 public:
  Cocycle(std::vector<Vec> generator_values);

  /// u(g) = g v - v.
  static Cocycle coboundary(const GeneratorSet& gs, const Vec& v);

  const std::vector<Vec>& generator_values() const { return values_; }

  /// Evaluates by the cocycle rule letter by letter (u(a^-1) = -a^-1 u(a)).
  Vec evaluate(const GeneratorSet& gs, const Word& w) const;

 private:
  std::vector<Vec> values_;
};

/// [[g, u],[0, 1]] in SL(n+1).
SquareMatrix affine_block(const SquareMatrix& g, const Vec& u);

/// diag(g, 1).
SquareMatrix block_embed(const SquareMatrix& g);

}  // namespace anosov
