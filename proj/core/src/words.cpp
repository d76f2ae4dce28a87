#include "anosov/words.hpp"

#include "anosov/errors.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstring>
#include <deque>
#include <limits>
#include <unordered_set>

namespace anosov {

// ---------------------------------------------------------------------------
// Word

Word::Word(std::vector<Letter> letters) : letters_(std::move(letters)) {
  for (std::size_t i = 0; i + 1 < letters_.size(); ++i) {
    if (letters_[i + 1] == inverse_letter(letters_[i])) {
      throw InputError("word is not reduced at position " + std::to_string(i));
    }
  }
}

bool Word::cyclically_reduced() const {
  return letters_.size() <= 1 || letters_.front() != inverse_letter(letters_.back());
}

Word Word::inverse() const {
  std::vector<Letter> out(letters_.rbegin(), letters_.rend());
  for (auto& l : out) l = inverse_letter(l);
  return Word(std::move(out));
}

namespace {

// True iff no rotation of w[0..len) is lexicographically smaller.
bool is_minimal_rotation(const Letter* w, std::size_t len) {
  for (std::size_t r = 1; r < len; ++r) {
    for (std::size_t i = 0; i < len; ++i) {
      const Letter a = w[(r + i) % len];
      const Letter b = w[i];
      if (a < b) return false;
      if (a > b) break;
    }
  }
  return true;
}

}  // namespace

Word minimal_rotation(const Word& w) {
  const auto& l = w.letters();
  if (l.empty()) return w;
  std::vector<Letter> best = l;
  std::vector<Letter> rot(l.size());
  for (std::size_t r = 1; r < l.size(); ++r) {
    for (std::size_t i = 0; i < l.size(); ++i) rot[i] = l[(r + i) % l.size()];
    if (rot < best) best = rot;
  }
  return Word(std::move(best));
}

// ---------------------------------------------------------------------------
// GeneratorSet

GeneratorSet::GeneratorSet(std::vector<SquareMatrix> gens, std::vector<std::string> labels, bool free)
    : gens_(std::move(gens)), labels_(std::move(labels)), dim_(0), free_(free) {
  if (gens_.empty()) throw InputError("generator set is empty");
  if (gens_.size() > 26) throw InputError("at most 26 generators are supported");
  dim_ = gens_.front().dim();
  if (labels_.empty()) {
    for (std::size_t i = 0; i < gens_.size(); ++i) labels_.push_back(std::string(1, static_cast<char>('a' + i)));
  }
  if (labels_.size() != gens_.size()) throw InputError("label count does not match generator count");
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    const auto& lab = labels_[i];
    if (lab.size() != 1 || !std::islower(static_cast<unsigned char>(lab[0]))) {
      throw InputError("generator labels must be single lower-case letters, got '" + lab + "'");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (labels_[j] == lab) throw InputError("duplicate generator label '" + lab + "'");
    }
  }
  for (const auto& g : gens_) {
    if (g.dim() != dim_) throw InputError("generators have different dimensions");
    Eigen::JacobiSVD<Mat> a(g.matrix());
    Eigen::JacobiSVD<Mat> b(g.inverse_matrix());
    const double cond = a.singularValues()[0] * b.singularValues()[0];
    if (!(cond < 1e10)) throw InputError("generator condition number " + std::to_string(cond) + " >= 1e10");
    letters_.push_back(g);
    letters_.push_back(g.inverse());
  }
}

GeneratorSet GeneratorSet::mapped(const std::function<SquareMatrix(const SquareMatrix&)>& rho) const {
  std::vector<SquareMatrix> out;
  out.reserve(gens_.size());
  for (const auto& g : gens_) out.push_back(rho(g));
  return GeneratorSet(std::move(out), labels_, free_);
}

GeneratorSet GeneratorSet::with_free(bool free) const {
  GeneratorSet out = *this;
  out.free_ = free;
  return out;
}

std::string GeneratorSet::format(const Word& w) const {
  std::string out;
  out.reserve(w.length());
  for (Letter l : w.letters()) {
    const char c = labels_[static_cast<std::size_t>(generator_of(l))][0];
    out.push_back((l & 1u) ? static_cast<char>(std::toupper(static_cast<unsigned char>(c))) : c);
  }
  return out;
}

Word GeneratorSet::parse(std::string_view text) const {
  std::vector<Letter> letters;
  for (char c : text) {
    const bool inv = std::isupper(static_cast<unsigned char>(c)) != 0;
    const char lower = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    auto it = std::find(labels_.begin(), labels_.end(), std::string(1, lower));
    if (it == labels_.end()) throw InputError(std::string("unknown generator label '") + c + "'");
    const auto gen = static_cast<Letter>(it - labels_.begin());
    letters.push_back(static_cast<Letter>(2 * gen + (inv ? 1 : 0)));
  }
  return Word(std::move(letters));
}

SquareMatrix word_matrix(const GeneratorSet& gs, const Word& w) {
  SquareMatrix out = SquareMatrix::identity(gs.dim());
  for (Letter l : w.letters()) {
    if (generator_of(l) >= gs.rank()) throw InputError("letter outside generator set");
    out = out * gs.letter_matrix(l);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Counting

std::uint64_t reduced_word_count(int k, int len) {
  if (len < 0) return 0;
  if (len == 0) return 1;
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t c = 2ull * static_cast<std::uint64_t>(k);
  const std::uint64_t branch = 2ull * static_cast<std::uint64_t>(k) - 1;
  for (int i = 1; i < len; ++i) {
    if (branch != 0 && c > kMax / branch) return kMax;
    c *= branch;
  }
  return c;
}

std::uint64_t ball_size(int k, int max_len) {
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t total = 0;
  for (int l = 0; l <= max_len; ++l) {
    const std::uint64_t c = reduced_word_count(k, l);
    if (c == kMax || total > kMax - c) return kMax;
    total += c;
  }
  return total;
}

Word reduced_word_at(int k, int len, std::uint64_t index) {
  if (len <= 0) return Word();
  if (index >= reduced_word_count(k, len)) throw InputError("reduced word index out of range");
  std::vector<Letter> letters;
  letters.reserve(static_cast<std::size_t>(len));
  std::uint64_t block = reduced_word_count(k, len) / (2ull * static_cast<std::uint64_t>(k));
  letters.push_back(static_cast<Letter>(index / block));
  index %= block;
  for (int pos = 1; pos < len; ++pos) {
    block /= static_cast<std::uint64_t>(2 * k - 1);
    auto choice = static_cast<Letter>(index / block);
    index %= block;
    // skip the inverse of the previous letter
    if (choice >= inverse_letter(letters.back())) ++choice;
    letters.push_back(choice);
  }
  return Word(std::move(letters));
}

namespace {

void check_budget(const GeneratorSet& gs, int max_len, const EnumerationOptions& opts) {
  if (max_len < 0) throw InputError("max_len must be >= 0");
  const std::uint64_t size = ball_size(gs.rank(), max_len);
  if (size > opts.budget) {
    throw ResourceError("ball of rank " + std::to_string(gs.rank()) + " up to length " +
                        std::to_string(max_len) + " has " + std::to_string(size) +
                        " reduced words, above the budget of " + std::to_string(opts.budget));
  }
}

class BallWalker {
 public:
  BallWalker(const GeneratorSet& gs, int max_len, const BallVisitor& visit)
      : gs_(gs), max_len_(max_len), visit_(visit) {}

  void run(std::vector<Letter>& prefix, const SquareMatrix& prod, bool descend) {
    visit_(BallEntry{Word(prefix), prod, cartan_projection(prod)});
    if (!descend || static_cast<int>(prefix.size()) >= max_len_) return;
    const int letters = 2 * gs_.rank();
    for (int c = 0; c < letters; ++c) {
      const auto l = static_cast<Letter>(c);
      if (!prefix.empty() && l == inverse_letter(prefix.back())) continue;
      prefix.push_back(l);
      run(prefix, prod * gs_.letter_matrix(l), true);
      prefix.pop_back();
    }
  }

 private:
  const GeneratorSet& gs_;
  int max_len_;
  const BallVisitor& visit_;
};

class ClassWalker {
 public:
  ClassWalker(const GeneratorSet& gs, int max_len, const ClassVisitor& visit)
      : gs_(gs), max_len_(max_len), visit_(visit) {}

  void run(std::vector<Letter>& prefix, const SquareMatrix& prod, bool descend) {
    const std::size_t len = prefix.size();
    if (len >= 1 && prefix.front() != inverse_letter(prefix.back()) &&
        is_minimal_rotation(prefix.data(), len)) {
      visit_(ConjClassEntry{Word(prefix), prod, jordan_projection(prod)});
    }
    if (!descend || static_cast<int>(len) >= max_len_) return;
    const int letters = 2 * gs_.rank();
    // A least rotation starts with its smallest letter.
    const int lowest = prefix.empty() ? 0 : prefix.front();
    for (int c = lowest; c < letters; ++c) {
      const auto l = static_cast<Letter>(c);
      if (!prefix.empty() && l == inverse_letter(prefix.back())) continue;
      prefix.push_back(l);
      run(prefix, prod * gs_.letter_matrix(l), true);
      prefix.pop_back();
    }
  }

 private:
  const GeneratorSet& gs_;
  int max_len_;
  const ClassVisitor& visit_;
};

// Sign-normalized matrix quantized on a grid of tol * 2^ceil(log2(max|entry|)).
std::string dedup_key(const Mat& m, double tol) {
  double sign = 1.0;
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    if (std::abs(m(0, j)) > tol) {
      sign = m(0, j) < 0 ? -1.0 : 1.0;
      break;
    }
  }
  const double maxabs = std::max(1.0, m.cwiseAbs().maxCoeff());
  const double grid = tol * std::exp2(std::ceil(std::log2(maxabs)));
  std::string key(static_cast<std::size_t>(m.size()) * sizeof(long long), '\0');
  std::size_t off = 0;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      const long long q = std::llround(sign * m(i, j) / grid);
      std::memcpy(key.data() + off, &q, sizeof q);
      off += sizeof q;
    }
  }
  return key;
}

void enumerate_dedup(const GeneratorSet& gs, int max_len, const BallVisitor& visit,
                     const EnumerationOptions& opts) {
  struct Node {
    std::vector<Letter> word;
    SquareMatrix prod;
  };
  std::unordered_set<std::string> seen;
  std::vector<Node> frontier;
  frontier.push_back({{}, SquareMatrix::identity(gs.dim())});
  seen.insert(dedup_key(frontier.front().prod.matrix(), opts.dedup_tolerance));
  visit(BallEntry{Word(), frontier.front().prod, cartan_projection(frontier.front().prod)});
  for (int len = 1; len <= max_len; ++len) {
    std::vector<Node> next;
    for (const auto& node : frontier) {
      for (int c = 0; c < 2 * gs.rank(); ++c) {
        const auto l = static_cast<Letter>(c);
        if (!node.word.empty() && l == inverse_letter(node.word.back())) continue;
        Node child{node.word, node.prod * gs.letter_matrix(l)};
        child.word.push_back(l);
        // Extensions of a duplicate duplicate extensions of the earlier word.
        if (!seen.insert(dedup_key(child.prod.matrix(), opts.dedup_tolerance)).second) continue;
        visit(BallEntry{Word(child.word), child.prod, cartan_projection(child.prod)});
        next.push_back(std::move(child));
      }
    }
    frontier = std::move(next);
  }
}

}  // namespace

void enumerate_ball(const GeneratorSet& gs, int max_len, const BallVisitor& visit,
                    const EnumerationOptions& opts) {
  check_budget(gs, max_len, opts);
  if (!gs.free()) {
    enumerate_dedup(gs, max_len, visit, opts);
    return;
  }
  std::vector<Letter> prefix;
  prefix.reserve(static_cast<std::size_t>(max_len));
  BallWalker(gs, max_len, visit).run(prefix, SquareMatrix::identity(gs.dim()), true);
}

void enumerate_conjugacy_classes(const GeneratorSet& gs, int max_len, const ClassVisitor& visit,
                                 const EnumerationOptions& opts) {
  if (!gs.free()) {
    throw UnsupportedError("conjugacy classes are only enumerated for free generator sets");
  }
  check_budget(gs, max_len, opts);
  std::vector<Letter> prefix;
  prefix.reserve(static_cast<std::size_t>(max_len));
  ClassWalker(gs, max_len, visit).run(prefix, SquareMatrix::identity(gs.dim()), true);
}

std::vector<BallTask> ball_tasks(const GeneratorSet& gs, int max_len, int depth) {
  const int split = std::max(0, std::min(depth, max_len));
  std::vector<BallTask> tasks;
  for (int len = 0; len <= split; ++len) {
    const std::uint64_t count = reduced_word_count(gs.rank(), len);
    for (std::uint64_t i = 0; i < count; ++i) {
      tasks.push_back({reduced_word_at(gs.rank(), len, i), len == split});
    }
  }
  return tasks;
}

void enumerate_ball_task(const GeneratorSet& gs, int max_len, const BallTask& task,
                         const BallVisitor& visit, const EnumerationOptions& opts) {
  if (!gs.free()) throw UnsupportedError("task-partitioned enumeration requires a free generator set");
  check_budget(gs, max_len, opts);
  std::vector<Letter> prefix = task.prefix.letters();
  BallWalker(gs, max_len, visit).run(prefix, word_matrix(gs, task.prefix), task.subtree);
}

void enumerate_classes_task(const GeneratorSet& gs, int max_len, const BallTask& task,
                            const ClassVisitor& visit, const EnumerationOptions& opts) {
  if (!gs.free()) {
    throw UnsupportedError("conjugacy classes are only enumerated for free generator sets");
  }
  check_budget(gs, max_len, opts);
  const auto& p = task.prefix.letters();
  // Least rotations never have a later letter below the first one.
  for (std::size_t i = 1; i < p.size(); ++i) {
    if (p[i] < p[0]) return;
  }
  std::vector<Letter> prefix = p;
  ClassWalker(gs, max_len, visit).run(prefix, word_matrix(gs, task.prefix), task.subtree);
}

}  // namespace anosov
