#pragma once

#include <optional>

#include "stratcomm/model.hpp"

namespace stratcomm {

/// Single-letter utility U(i, j): i = reconstructed symbol, j = true symbol.
/// Zero diagonal is an invariant; build from arbitrary raw payoffs via
/// normalized(), which subtracts the truth-column diagonal and preserves all
/// best-response sets.
class UtilityMatrix {
  public:
    explicit UtilityMatrix(std::vector<std::vector<Rational>> entries);
    static UtilityMatrix normalized(const std::vector<std::vector<Rational>>& raw);
    static UtilityMatrix binary(const Rational& u01, const Rational& u10);

    int q() const { return static_cast<int>(entries_.size()); }
    const Rational& operator()(int i, int j) const { return entries_[i][j]; }
    const std::vector<std::vector<Rational>>& entries() const { return entries_; }

    Rational umax() const;  // max over all entries
    Rational umin() const;  // min over all entries

    // Binary shorthands of the lossless theorems: a = min, b = max of the
    // off-diagonal magnitudes.
    Rational binary_a() const;
    Rational binary_b() const;
    Rational binary_sum() const;  // U(0,1) + U(1,0)

  private:
    std::vector<std::vector<Rational>> entries_;
};

/// Mean per-letter utility of a joint type: (1/n) sum W(i,j) U(i,j).
Rational block_utility(const JointType& w, const UtilityMatrix& u);
/// Same through the sequence pair (y = reconstructed, x = true).
Rational block_utility(const Sequence& y, const Sequence& x, const UtilityMatrix& u);

struct GammaResult {
    Rational value;
    std::vector<int> witness;                     // optimal non-identity permutation
    std::vector<std::vector<int>> witness_cycles; // its nontrivial cycles
};

/// Optimum of the permutation program: max over permutations pi != id of
/// sum_j U(pi(j), j). Exact enumeration; witness ties broken toward the
/// lexicographically smallest permutation. Requires q <= 9.
GammaResult gamma(const UtilityMatrix& u);

enum class GammaSignKind { negative, zero, positive };

struct GammaSignResult {
    GammaSignKind kind = GammaSignKind::negative;
    std::optional<std::vector<int>> witness_cycle;  // cycle with sum >= 0 when not negative
    Rational witness_sum;
};

/// Sign of gamma for any q, via a maximum-mean-cycle computation over the
/// complete digraph with arc weight U(head, tail). Agrees with
/// sign(gamma(u).value) wherever gamma is computable.
GammaSignResult gamma_sign(const UtilityMatrix& u);

struct Prop1Result {
    bool holds = false;
    bool acyclic = false;          // clause (i): nonnegative-arc digraph has no cycle
    bool margin = false;           // clause (ii): min |negative| > (q-1) max nonnegative
    std::optional<std::vector<int>> cycle_witness;  // violating cycle when !acyclic
};

/// Sufficient condition for gamma < 0: every cyclic arrangement of distinct
/// symbols hits a strictly negative entry, and the negative magnitudes
/// dominate the nonnegative ones with the (q-1) margin.
Prop1Result prop1_holds(const UtilityMatrix& u);

}  // namespace stratcomm
