#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "stratcomm/numeric.hpp"

namespace stratcomm {

/// Source/reconstruction alphabet {0, 1, ..., q-1}.
struct Alphabet {
    int q;
    explicit Alphabet(int size) : q(size) {
        if (q < 2) throw std::invalid_argument("Alphabet: q must be >= 2");
    }
};

/// Exact probability vector over the alphabet.
class Distribution {
  public:
    explicit Distribution(std::vector<Rational> probs);
    static Distribution binary(const Rational& p0) { return Distribution({p0, 1 - p0}); }

    int q() const { return static_cast<int>(probs_.size()); }
    const Rational& operator[](int i) const { return probs_.at(i); }
    const std::vector<Rational>& probs() const { return probs_; }

    bool operator==(const Distribution& o) const { return probs_ == o.probs_; }

  private:
    std::vector<Rational> probs_;
};

/// A block of n symbols over a q-ary alphabet. Ordering is lexicographic.
struct Sequence {
    std::vector<int> symbols;
    int q = 2;

    Sequence() = default;
    Sequence(std::vector<int> syms, int alphabet_size);

    int n() const { return static_cast<int>(symbols.size()); }
    auto operator<=>(const Sequence& o) const { return symbols <=> o.symbols; }
    bool operator==(const Sequence& o) const { return symbols == o.symbols; }
};

/// Empirical symbol counts of one sequence (n times its type).
struct TypeVector {
    std::vector<long long> counts;

    TypeVector() = default;
    explicit TypeVector(std::vector<long long> c);

    int q() const { return static_cast<int>(counts.size()); }
    long long n() const;
    auto operator<=>(const TypeVector& o) const = default;
};

/// Empirical pair counts W(i, j): i = reconstructed symbol, j = true symbol.
struct JointType {
    std::vector<std::vector<long long>> counts;

    JointType() = default;
    JointType(int q, long long init = 0)
        : counts(q, std::vector<long long>(q, init)) {}

    int q() const { return static_cast<int>(counts.size()); }
    long long n() const;
    long long& operator()(int i, int j) { return counts[i][j]; }
    long long operator()(int i, int j) const { return counts[i][j]; }
    TypeVector row_marginal() const;  // type of the reconstructed sequence
    TypeVector col_marginal() const;  // type of the true sequence
    bool operator==(const JointType& o) const { return counts == o.counts; }
};

TypeVector empirical_type(const Sequence& x);
JointType joint_type(const Sequence& y, const Sequence& x);

/// Mean Hamming distance, exact in [0,1].
Rational hamming(const Sequence& y, const Sequence& x);

/// All types of block length n over q symbols, lexicographic. Throws if the
/// count C(n+q-1, q-1) exceeds `cap`.
std::vector<TypeVector> enumerate_types(long long n, int q, long long cap = 10'000'000);

/// |U_T^n| = n! / prod counts[i]!.
BigInt type_class_size(const TypeVector& t);

/// log2 P^n(U_T) for an i.i.d. source P; -infinity when T uses a symbol of
/// probability zero.
double log_type_class_prob(const TypeVector& t, const Distribution& p);

/// Exact P^n(U_T).
Rational type_class_prob(const TypeVector& t, const Distribution& p);

/// Exact P^n(x) of a single sequence.
Rational sequence_prob(const Sequence& x, const Distribution& p);

/// Types T with P(i) - eps < T_i/n < P(i) + eps for every symbol i.
/// Inequalities are strict; boundary types are excluded.
std::vector<TypeVector> typical_types(const Distribution& p, const Rational& eps,
                                      long long n, long long cap = 10'000'000);

/// All members of the type class, lexicographic.
std::vector<Sequence> type_class_members(const TypeVector& t);

/// Lexicographically smallest member (symbols in nondecreasing order).
Sequence lex_min_of_class(const TypeVector& t);

/// Minimum mean Hamming distance between a sequence of type `a` and any
/// sequence of type `b`: total variation distance of the types.
Rational min_distance_between_classes(const TypeVector& a, const TypeVector& b);

/// Visits every q x q nonnegative integer matrix with the given column and
/// row sums. Returns false if the visitor aborted the walk.
bool enumerate_joint_types(const TypeVector& col_marginal, const TypeVector& row_marginal,
                           const std::function<bool(const JointType&)>& visit);

}  // namespace stratcomm
