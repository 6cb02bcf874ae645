#ifndef BWM_MODEL_HPP
#define BWM_MODEL_HPP

#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bwm/error.hpp"
#include "bwm/rational.hpp"

namespace bwm {

// Unvalidated best-worst input, 0-based indices. Entries for j == worst in
// best_to_others (and j == best in others_to_worst) are accepted as
// alternative spellings of the shared cell a_BW.
struct BwmInput {
  std::size_t n = 0;
  std::size_t best = 0;
  std::size_t worst = 0;
  std::map<std::size_t, Rational> best_to_others;
  std::optional<Rational> best_to_worst;
  std::map<std::size_t, Rational> others_to_worst;
};

// Validated incomplete best-worst matrix. Immutable: only validate_bwm and
// BwmInstance::from_free_entries build one.
class BwmInstance {
 public:
  std::size_t n() const { return best_row_.size(); }
  std::size_t best() const { return best_; }
  std::size_t worst() const { return worst_; }

  // a_Bj for any j (a_BB = 1, a_BW is the shared cell).
  const ComparisonValue& a_best(std::size_t j) const {
    if (j == worst_) return best_to_worst_;
    return best_row_[j];
  }
  // a_jW for any j (a_WW = 1, a_BW is the shared cell).
  const ComparisonValue& a_worst(std::size_t j) const {
    if (j == best_) return best_to_worst_;
    return worst_col_[j];
  }
  const ComparisonValue& best_to_worst() const { return best_to_worst_; }

  // Alternatives other than best and worst, ascending.
  std::vector<std::size_t> middles() const {
    std::vector<std::size_t> out;
    out.reserve(n() - 2);
    for (std::size_t j = 0; j < n(); ++j)
      if (j != best_ && j != worst_) out.push_back(j);
    return out;
  }

  // The 2n-3 free judgments in canonical order: a_Bj for each middle j,
  // then a_BW, then a_jW for each middle j.
  std::vector<Rational> free_entries() const {
    std::vector<Rational> out;
    out.reserve(2 * n() - 3);
    const auto mids = middles();
    for (auto j : mids) out.push_back(a_best(j).value());
    out.push_back(best_to_worst_.value());
    for (auto j : mids) out.push_back(a_worst(j).value());
    return out;
  }

  // Inverse of free_entries(); validates.
  static BwmInstance from_free_entries(std::size_t n, std::size_t best, std::size_t worst,
                                       std::span<const Rational> entries);

  // Exchanges a_Bj and a_jW for every middle j: the instance seen with the
  // roles of best and worst swapped and all judgments inverted.
  BwmInstance mirrored() const {
    BwmInstance out = *this;
    for (auto j : middles()) std::swap(out.best_row_[j], out.worst_col_[j]);
    return out;
  }

  friend bool operator==(const BwmInstance&, const BwmInstance&) = default;

 private:
  friend BwmInstance validate_bwm(const BwmInput& raw);
  BwmInstance(std::size_t best, std::size_t worst, std::vector<ComparisonValue> best_row,
              std::vector<ComparisonValue> worst_col, ComparisonValue bw)
      : best_(best),
        worst_(worst),
        best_row_(std::move(best_row)),
        worst_col_(std::move(worst_col)),
        best_to_worst_(bw) {}

  std::size_t best_;
  std::size_t worst_;
  // best_row_[B], best_row_[W], worst_col_[B], worst_col_[W] hold 1 and are
  // never read; the shared cell lives in best_to_worst_.
  std::vector<ComparisonValue> best_row_;
  std::vector<ComparisonValue> worst_col_;
  ComparisonValue best_to_worst_;
};

inline BwmInstance validate_bwm(const BwmInput& raw) {
  const std::size_t n = raw.n;
  if (n < 3) throw Error(Errc::TooSmall, "need at least 3 alternatives, got " + std::to_string(n));
  if (raw.best >= n || raw.worst >= n || raw.best == raw.worst)
    throw Error(Errc::BadIndices, "best and worst must be distinct indices below n");
  const std::size_t b = raw.best;
  const std::size_t w = raw.worst;

  std::optional<Rational> bw = raw.best_to_worst;
  const auto merge_bw = [&](const Rational& v) {
    if (bw && *bw != v)
      throw Error(Errc::Inconsistent, "a_BW given as both " + bw->str() + " and " + v.str());
    bw = v;
  };

  std::vector<std::optional<Rational>> row(n), col(n);
  for (const auto& [j, v] : raw.best_to_others) {
    if (j >= n || j == b) throw Error(Errc::BadIndices, "best_to_others key out of range");
    if (j == w)
      merge_bw(v);
    else
      row[j] = v;
  }
  for (const auto& [j, v] : raw.others_to_worst) {
    if (j >= n || j == w) throw Error(Errc::BadIndices, "others_to_worst key out of range");
    if (j == b)
      merge_bw(v);
    else
      col[j] = v;
  }
  if (!bw) throw Error(Errc::Incomplete, "missing best-to-worst comparison");

  const auto check = [](const Rational& v, const std::string& what) {
    const auto cv = ComparisonValue::make(v);
    if (v <= Rational(1)) throw Error(Errc::NotDominant, what + " = " + v.str() + " must exceed 1");
    return cv;
  };

  const ComparisonValue one = ComparisonValue::make(Rational(1));
  std::vector<ComparisonValue> best_row(n, one), worst_col(n, one);
  for (std::size_t j = 0; j < n; ++j) {
    if (j == b || j == w) continue;
    if (!row[j] || !col[j])
      throw Error(Errc::Incomplete, "missing comparison for alternative " + std::to_string(j + 1));
    best_row[j] = check(*row[j], "a_B" + std::to_string(j + 1));
    worst_col[j] = check(*col[j], "a_" + std::to_string(j + 1) + "W");
  }
  const auto cbw = check(*bw, "a_BW");
  return BwmInstance(b, w, std::move(best_row), std::move(worst_col), cbw);
}

inline BwmInstance BwmInstance::from_free_entries(std::size_t n, std::size_t best, std::size_t worst,
                                                  std::span<const Rational> entries) {
  if (n < 3) throw Error(Errc::TooSmall, "need at least 3 alternatives");
  if (entries.size() != 2 * n - 3) throw Error(Errc::LengthMismatch, "expected 2n-3 entries");
  BwmInput raw{n, best, worst, {}, entries[n - 2], {}};
  std::size_t k = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (j == best || j == worst) continue;
    raw.best_to_others[j] = entries[k];
    raw.others_to_worst[j] = entries[n - 1 + k];
    ++k;
  }
  return validate_bwm(raw);
}

// Undirected graph of known off-diagonal comparisons.
class ComparisonGraph {
 public:
  explicit ComparisonGraph(std::size_t n) : n_(n) {}

  void add_edge(std::size_t i, std::size_t j) { edges_.emplace_back(std::min(i, j), std::max(i, j)); }

  std::size_t node_count() const { return n_; }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<std::pair<std::size_t, std::size_t>>& edges() const { return edges_; }

  bool connected() const {
    if (n_ <= 1) return true;
    std::vector<std::size_t> parent(n_);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    const auto find = [&](std::size_t x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    std::size_t components = n_;
    for (const auto& [a, b] : edges_) {
      const auto ra = find(a);
      const auto rb = find(b);
      if (ra != rb) {
        parent[ra] = rb;
        --components;
      }
    }
    return components == 1;
  }

 private:
  std::size_t n_;
  std::vector<std::pair<std::size_t, std::size_t>> edges_;
};

// Sparse reciprocal pairwise comparison matrix. Setting a_ij always sets
// a_ji = 1/a_ij, so reciprocity and the symmetric pattern hold by
// construction; the diagonal is implicitly 1.
class IncompletePcm {
 public:
  explicit IncompletePcm(std::size_t n) : n_(n), cells_(n * n) {
    const auto one = ComparisonValue::make(Rational(1));
    for (std::size_t i = 0; i < n; ++i) cells_[i * n + i] = one;
  }

  struct Entry {
    std::size_t row;
    std::size_t col;
    Rational value;
  };

  // Builds from explicit entries; a pair given in both directions must be
  // exactly reciprocal and diagonal entries must equal 1.
  static IncompletePcm from_entries(std::size_t n, std::span<const Entry> entries) {
    IncompletePcm pcm(n);
    for (const auto& e : entries) {
      if (e.row >= n || e.col >= n) throw Error(Errc::BadIndices, "entry index out of range");
      if (e.row == e.col) {
        if (e.value != Rational(1)) throw Error(Errc::NotReciprocal, "diagonal entry must be 1");
        continue;
      }
      const auto v = ComparisonValue::make(e.value);
      if (const auto& prev = pcm.at(e.row, e.col); prev && *prev != v)
        throw Error(Errc::NotReciprocal, "entry (" + std::to_string(e.row + 1) + "," +
                                             std::to_string(e.col + 1) + ") not reciprocal");
      pcm.set(e.row, e.col, v);
    }
    return pcm;
  }

  std::size_t size() const { return n_; }

  void set(std::size_t i, std::size_t j, const ComparisonValue& v) {
    if (i >= n_ || j >= n_) throw Error(Errc::BadIndices, "index out of range");
    if (i == j) {
      if (v.value() != Rational(1)) throw Error(Errc::NotReciprocal, "diagonal entry must be 1");
      return;
    }
    cells_[i * n_ + j] = v;
    cells_[j * n_ + i] = v.reciprocal();
  }

  void erase(std::size_t i, std::size_t j) {
    if (i == j) return;
    cells_[i * n_ + j].reset();
    cells_[j * n_ + i].reset();
  }

  const std::optional<ComparisonValue>& at(std::size_t i, std::size_t j) const { return cells_[i * n_ + j]; }
  bool known(std::size_t i, std::size_t j) const { return cells_[i * n_ + j].has_value(); }

  ComparisonGraph graph() const {
    ComparisonGraph g(n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = i + 1; j < n_; ++j)
        if (known(i, j)) g.add_edge(i, j);
    return g;
  }

  // a'_ij = 1/a_ij, i.e. the transpose of a reciprocal matrix.
  IncompletePcm reciprocal_transposed() const {
    IncompletePcm out(n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = i + 1; j < n_; ++j)
        if (const auto& v = at(i, j)) out.set(i, j, v->reciprocal());
    return out;
  }

  // Alternative i of this matrix becomes alternative perm[i] of the result.
  IncompletePcm permuted(std::span<const std::size_t> perm) const {
    if (perm.size() != n_) throw Error(Errc::LengthMismatch, "permutation length");
    IncompletePcm out(n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = i + 1; j < n_; ++j)
        if (const auto& v = at(i, j)) out.set(perm[i], perm[j], *v);
    return out;
  }

  friend bool operator==(const IncompletePcm&, const IncompletePcm&) = default;

 private:
  std::size_t n_;
  std::vector<std::optional<ComparisonValue>> cells_;
};

inline bool is_connected(const IncompletePcm& pcm) { return pcm.graph().connected(); }

inline IncompletePcm to_incomplete_pcm(const BwmInstance& inst) {
  IncompletePcm pcm(inst.n());
  const auto b = inst.best();
  const auto w = inst.worst();
  for (std::size_t j = 0; j < inst.n(); ++j) {
    if (j != b) pcm.set(b, j, inst.a_best(j));
    if (j != w && j != b) pcm.set(j, w, inst.a_worst(j));
  }
  return pcm;
}

// Reads the best row and worst column back out of a matrix.
inline BwmInstance bwm_from_pcm(const IncompletePcm& pcm, std::size_t best, std::size_t worst) {
  BwmInput raw;
  raw.n = pcm.size();
  raw.best = best;
  raw.worst = worst;
  for (std::size_t j = 0; j < pcm.size(); ++j) {
    if (j != best)
      if (const auto& v = pcm.at(best, j)) raw.best_to_others[j] = v->value();
    if (j != worst)
      if (const auto& v = pcm.at(j, worst)) raw.others_to_worst[j] = v->value();
  }
  return validate_bwm(raw);
}

}  // namespace bwm

#endif  // BWM_MODEL_HPP
