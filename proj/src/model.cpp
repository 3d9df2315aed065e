#include "stratcomm/model.hpp"

#include <algorithm>
#include <numeric>

namespace stratcomm {

Distribution::Distribution(std::vector<Rational> probs) : probs_(std::move(probs)) {
    if (probs_.size() < 2) throw std::invalid_argument("Distribution: need q >= 2");
    Rational sum = 0;
    for (const auto& p : probs_) {
        if (p < 0 || p > 1) throw std::invalid_argument("Distribution: entry outside [0,1]");
        sum += p;
    }
    if (sum != 1) throw std::invalid_argument("Distribution: entries must sum to 1 exactly");
}

Sequence::Sequence(std::vector<int> syms, int alphabet_size)
    : symbols(std::move(syms)), q(alphabet_size) {
    if (q < 2) throw std::invalid_argument("Sequence: q must be >= 2");
    if (symbols.empty()) throw std::invalid_argument("Sequence: n must be >= 1");
    for (int s : symbols)
        if (s < 0 || s >= q) throw std::invalid_argument("Sequence: symbol out of range");
}

TypeVector::TypeVector(std::vector<long long> c) : counts(std::move(c)) {
    if (counts.size() < 2) throw std::invalid_argument("TypeVector: need q >= 2");
    for (long long v : counts)
        if (v < 0) throw std::invalid_argument("TypeVector: negative count");
}

long long TypeVector::n() const {
    return std::accumulate(counts.begin(), counts.end(), 0LL);
}

long long JointType::n() const {
    long long s = 0;
    for (const auto& row : counts)
        for (long long v : row) s += v;
    return s;
}

TypeVector JointType::row_marginal() const {
    std::vector<long long> m(q(), 0);
    for (int i = 0; i < q(); ++i)
        for (int j = 0; j < q(); ++j) m[i] += counts[i][j];
    return TypeVector(std::move(m));
}

TypeVector JointType::col_marginal() const {
    std::vector<long long> m(q(), 0);
    for (int i = 0; i < q(); ++i)
        for (int j = 0; j < q(); ++j) m[j] += counts[i][j];
    return TypeVector(std::move(m));
}

TypeVector empirical_type(const Sequence& x) {
    std::vector<long long> c(x.q, 0);
    for (int s : x.symbols) ++c[s];
    return TypeVector(std::move(c));
}

JointType joint_type(const Sequence& y, const Sequence& x) {
    if (y.n() != x.n() || y.q != x.q)
        throw std::invalid_argument("joint_type: length or alphabet mismatch");
    JointType w(x.q);
    for (int k = 0; k < x.n(); ++k) ++w(y.symbols[k], x.symbols[k]);
    return w;
}

Rational hamming(const Sequence& y, const Sequence& x) {
    if (y.n() != x.n()) throw std::invalid_argument("hamming: length mismatch");
    long long mism = 0;
    for (int k = 0; k < x.n(); ++k) mism += y.symbols[k] != x.symbols[k];
    return Rational(mism, x.n());
}

std::vector<TypeVector> enumerate_types(long long n, int q, long long cap) {
    if (n < 1 || q < 2) throw std::invalid_argument("enumerate_types: need n >= 1, q >= 2");
    const BigInt total = binomial(static_cast<unsigned>(n + q - 1), static_cast<unsigned>(q - 1));
    if (total > cap)
        throw std::overflow_error("enumerate_types: " + total.str() +
                                  " types exceeds cap " + std::to_string(cap));
    std::vector<TypeVector> out;
    out.reserve(total.convert_to<std::size_t>());
    std::vector<long long> cur(q, 0);
    // Compositions of n into q parts, lexicographic in the count vector.
    auto rec = [&](auto&& self, int pos, long long left) -> void {
        if (pos == q - 1) {
            cur[pos] = left;
            out.emplace_back(cur);
            return;
        }
        for (long long v = 0; v <= left; ++v) {
            cur[pos] = v;
            self(self, pos + 1, left - v);
        }
    };
    rec(rec, 0, n);
    return out;
}

BigInt type_class_size(const TypeVector& t) {
    BigInt r = factorial(static_cast<unsigned>(t.n()));
    for (long long c : t.counts) r /= factorial(static_cast<unsigned>(c));
    return r;
}

double log_type_class_prob(const TypeVector& t, const Distribution& p) {
    if (t.q() != p.q()) throw std::invalid_argument("log_type_class_prob: q mismatch");
    double lg = log2_bigint(type_class_size(t));
    for (int i = 0; i < t.q(); ++i) {
        if (t.counts[i] == 0) continue;
        if (p[i] == 0) return -std::numeric_limits<double>::infinity();
        lg += static_cast<double>(t.counts[i]) * std::log2(to_double(p[i]));
    }
    return lg;
}

Rational type_class_prob(const TypeVector& t, const Distribution& p) {
    if (t.q() != p.q()) throw std::invalid_argument("type_class_prob: q mismatch");
    Rational prob = Rational(type_class_size(t));
    for (int i = 0; i < t.q(); ++i)
        for (long long k = 0; k < t.counts[i]; ++k) prob *= p[i];
    return prob;
}

Rational sequence_prob(const Sequence& x, const Distribution& p) {
    Rational prob = 1;
    for (int s : x.symbols) prob *= p[s];
    return prob;
}

std::vector<TypeVector> typical_types(const Distribution& p, const Rational& eps,
                                      long long n, long long cap) {
    if (eps <= 0) throw std::invalid_argument("typical_types: eps must be > 0");
    std::vector<TypeVector> out;
    for (const auto& t : enumerate_types(n, p.q(), cap)) {
        bool ok = true;
        for (int i = 0; i < p.q() && ok; ++i) {
            const Rational frac(t.counts[i], n);
            ok = frac > p[i] - eps && frac < p[i] + eps;
        }
        if (ok) out.push_back(t);
    }
    return out;
}

std::vector<Sequence> type_class_members(const TypeVector& t) {
    Sequence first = lex_min_of_class(t);
    std::vector<Sequence> out;
    std::vector<int> cur = first.symbols;
    do {
        out.emplace_back(cur, t.q());
    } while (std::next_permutation(cur.begin(), cur.end()));
    return out;
}

Sequence lex_min_of_class(const TypeVector& t) {
    std::vector<int> syms;
    syms.reserve(t.n());
    for (int i = 0; i < t.q(); ++i) syms.insert(syms.end(), t.counts[i], i);
    if (syms.empty()) throw std::invalid_argument("lex_min_of_class: empty type");
    return Sequence(std::move(syms), t.q());
}

Rational min_distance_between_classes(const TypeVector& a, const TypeVector& b) {
    if (a.q() != b.q() || a.n() != b.n())
        throw std::invalid_argument("min_distance_between_classes: shape mismatch");
    long long matched = 0;
    for (int i = 0; i < a.q(); ++i) matched += std::min(a.counts[i], b.counts[i]);
    return Rational(a.n() - matched, a.n());
}

bool enumerate_joint_types(const TypeVector& col_marginal, const TypeVector& row_marginal,
                           const std::function<bool(const JointType&)>& visit) {
    const int q = col_marginal.q();
    if (row_marginal.q() != q || col_marginal.n() != row_marginal.n())
        throw std::invalid_argument("enumerate_joint_types: marginal mismatch");
    JointType w(q);
    std::vector<long long> row_left = row_marginal.counts;

    // Fill column by column; within a column, row by row. Each column j is a
    // composition of col_marginal[j] bounded by the remaining row capacity.
    auto rec = [&](auto&& self, int j, int i, long long col_left) -> bool {
        if (j == q) return visit(w);
        if (i == q - 1) {
            if (col_left > row_left[i]) return true;  // infeasible branch, keep going
            w(i, j) = col_left;
            row_left[i] -= col_left;
            const bool keep = self(self, j + 1, 0, j + 1 < q ? col_marginal.counts[j + 1] : 0);
            row_left[i] += col_left;
            w(i, j) = 0;
            return keep;
        }
        // Feasibility prune: the rows below must be able to absorb the rest.
        long long below = 0;
        for (int r = i + 1; r < q; ++r) below += row_left[r];
        const long long vmin = std::max(0LL, col_left - below);
        const long long vmax = std::min(col_left, row_left[i]);
        for (long long v = vmin; v <= vmax; ++v) {
            w(i, j) = v;
            row_left[i] -= v;
            const bool keep = self(self, j, i + 1, col_left - v);
            row_left[i] += v;
            w(i, j) = 0;
            if (!keep) return false;
        }
        return true;
    };
    return rec(rec, 0, 0, col_marginal.counts[0]);
}

}  // namespace stratcomm
