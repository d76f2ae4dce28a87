#pragma once

#include "anosov/linalg.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace anosov {

/// Letters are encoded as 2*i for generator i and 2*i+1 for its inverse, which
/// also fixes the lexicographic order a < A < b < B < ...
using Letter = std::uint8_t;

constexpr Letter inverse_letter(Letter l) { return static_cast<Letter>(l ^ 1u); }
constexpr int generator_of(Letter l) { return l >> 1; }

/// A freely reduced word. Construction rejects adjacent letter/inverse pairs.
class Word {
 public:
  Word() = default;
  explicit Word(std::vector<Letter> letters);

  std::size_t length() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  const std::vector<Letter>& letters() const { return letters_; }
  Letter operator[](std::size_t i) const { return letters_[i]; }

  bool cyclically_reduced() const;
  Word inverse() const;

  friend bool operator==(const Word&, const Word&) = default;
  friend auto operator<=>(const Word& a, const Word& b) { return a.letters_ <=> b.letters_; }

 private:
  std::vector<Letter> letters_;
};

/// Lexicographically least rotation of a cyclic word.
Word minimal_rotation(const Word& w);

class GeneratorSet {
 public:
  /// Labels default to a, b, c, ...; inverses print in upper case. Throws
  /// InputError for mismatched dimensions, duplicate labels or generators with
  /// condition number >= 1e10.
  GeneratorSet(std::vector<SquareMatrix> gens, std::vector<std::string> labels = {},
               bool free = true);

  int rank() const { return static_cast<int>(gens_.size()); }
  int dim() const { return dim_; }
  bool free() const { return free_; }
  const std::vector<std::string>& labels() const { return labels_; }
  const SquareMatrix& generator(int i) const { return gens_[static_cast<std::size_t>(i)]; }
  const SquareMatrix& letter_matrix(Letter l) const { return letters_[l]; }

  /// Applies a homomorphism generator-wise (e.g. an exterior power).
  GeneratorSet mapped(const std::function<SquareMatrix(const SquareMatrix&)>& rho) const;
  GeneratorSet with_free(bool free) const;

  std::string format(const Word& w) const;
  /// Parses e.g. "aBb" (rejected: not reduced) or "ab". Throws InputError on
  /// unknown labels.
  Word parse(std::string_view text) const;

 private:
  std::vector<SquareMatrix> gens_;
  std::vector<SquareMatrix> letters_;
  std::vector<std::string> labels_;
  int dim_;
  bool free_;
};

/// Ordered product of the letter matrices; identity for the empty word.
SquareMatrix word_matrix(const GeneratorSet& gs, const Word& w);

struct BallEntry {
  Word word;
  SquareMatrix matrix;
  CartanVector mu;
};

struct ConjClassEntry {
  Word representative;
  SquareMatrix matrix;
  CartanVector lambda;
};

inline constexpr std::uint64_t kDefaultBudget = 10'000'000;
inline constexpr double kDedupTolerance = 1e-6;

struct EnumerationOptions {
  std::uint64_t budget = kDefaultBudget;
  double dedup_tolerance = kDedupTolerance;
};

/// Number of reduced words of length exactly `len` in the free group of rank k.
std::uint64_t reduced_word_count(int k, int len);
/// 1 + sum_{l=1}^{max_len} 2k(2k-1)^(l-1), saturating at UINT64_MAX.
std::uint64_t ball_size(int k, int max_len);

using BallVisitor = std::function<void(const BallEntry&)>;
using ClassVisitor = std::function<void(const ConjClassEntry&)>;

/// Streams one entry per reduced word of length <= max_len in depth-first
/// lexicographic order (prefix before extension). With free() off, entries
/// whose sign-normalized matrices agree on the dedup grid are merged and the
/// shortest word is kept (breadth-first order in that mode).
/// Throws ResourceError if the ball exceeds the budget.
void enumerate_ball(const GeneratorSet& gs, int max_len, const BallVisitor& visit,
                    const EnumerationOptions& opts = {});

/// One entry per nontrivial cyclic class of cyclically reduced words of length
/// <= max_len, represented by its least rotation. [g] and [g^-1] are distinct.
/// Throws UnsupportedError unless the generator set is free.
void enumerate_conjugacy_classes(const GeneratorSet& gs, int max_len, const ClassVisitor& visit,
                                 const EnumerationOptions& opts = {});

/// Independent subtrees of the reduced-word tree. Each task visits the reduced
/// words whose first min(depth, len) letters equal `prefix`, where single-word
/// tasks (shorter than `depth`) cover exactly their prefix.
struct BallTask {
  Word prefix;
  bool subtree;  // false: only the prefix itself
};

std::vector<BallTask> ball_tasks(const GeneratorSet& gs, int max_len, int depth = 2);
void enumerate_ball_task(const GeneratorSet& gs, int max_len, const BallTask& task,
                         const BallVisitor& visit, const EnumerationOptions& opts = {});
void enumerate_classes_task(const GeneratorSet& gs, int max_len, const BallTask& task,
                            const ClassVisitor& visit, const EnumerationOptions& opts = {});

/// Word at position `index` in the lexicographic order of reduced words of
/// length exactly `len`.
Word reduced_word_at(int k, int len, std::uint64_t index);

}  // namespace anosov
