#include "stratcomm/sender_graph.hpp"

#include <numeric>

namespace stratcomm {

namespace {

// Utilities scaled to a common integer denominator so the per-joint-type
// predicate is a couple of 128-bit integer comparisons.
struct ScaledUtility {
    std::vector<std::vector<long long>> num;
    BigInt denom;
    long long max_num = 0;

    explicit ScaledUtility(const UtilityMatrix& u) {
        const int q = u.q();
        BigInt l = 1;
        for (int i = 0; i < q; ++i)
            for (int j = 0; j < q; ++j)
                l = boost::multiprecision::lcm(l, BigInt(denominator(u(i, j))));
        denom = l;
        num.assign(q, std::vector<long long>(q));
        bool first = true;
        for (int i = 0; i < q; ++i) {
            for (int j = 0; j < q; ++j) {
                const BigInt v = numerator(u(i, j)) * (l / denominator(u(i, j)));
                if (v > std::numeric_limits<long long>::max() / 4 ||
                    v < std::numeric_limits<long long>::min() / 4)
                    throw std::overflow_error("degree_counts: utility entries too large");
                num[i][j] = v.convert_to<long long>();
                if (first || num[i][j] > max_num) max_num = num[i][j];
                first = false;
            }
        }
    }

    __int128 block_num(const JointType& w, bool transpose) const {
        __int128 s = 0;
        const int q = w.q();
        for (int i = 0; i < q; ++i)
            for (int j = 0; j < q; ++j)
                if (w(i, j) != 0)
                    s += static_cast<__int128>(w(i, j)) * (transpose ? num[j][i] : num[i][j]);
        return s;
    }
};

bool edge_predicate(const JointType& w, const ScaledUtility& su, const GraphSpec& spec) {
    if (spec.variant == GraphSpec::Variant::undirected) {
        bool diagonal = true;
        for (int i = 0; i < w.q() && diagonal; ++i)
            for (int j = 0; j < w.q() && diagonal; ++j)
                if (i != j && w(i, j) != 0) diagonal = false;
        if (diagonal) return false;  // no self loops
        return su.block_num(w, false) >= 0 || su.block_num(w, true) >= 0;
    }
    // Directed: U_n(y, x) > delta * U^max, cleared of denominators:
    //   (sum W * unum) * den(delta) > n * num(delta) * umax_num.
    const long long dn = numerator(spec.delta).convert_to<long long>();
    const long long dd = denominator(spec.delta).convert_to<long long>();
    const __int128 lhs = su.block_num(w, false) * dd;
    const __int128 rhs = static_cast<__int128>(w.n()) * dn * su.max_num;
    return lhs > rhs;
}

BigInt column_weight(const JointType& w, const TypeVector& p1) {
    BigInt weight = 1;
    for (int j = 0; j < w.q(); ++j) {
        BigInt f = factorial(static_cast<unsigned>(p1.counts[j]));
        for (int i = 0; i < w.q(); ++i) f /= factorial(static_cast<unsigned>(w(i, j)));
        weight *= f;
    }
    return weight;
}

BigInt row_weight(const JointType& w, const TypeVector& p2) {
    BigInt weight = 1;
    for (int i = 0; i < w.q(); ++i) {
        BigInt f = factorial(static_cast<unsigned>(p2.counts[i]));
        for (int j = 0; j < w.q(); ++j) f /= factorial(static_cast<unsigned>(w(i, j)));
        weight *= f;
    }
    return weight;
}

}  // namespace

bool adjacent(const Sequence& x, const Sequence& y, const UtilityMatrix& u) {
    if (x == y) throw std::invalid_argument("adjacent: the sender graph has no self loops");
    return block_utility(y, x, u) >= 0 || block_utility(x, y, u) >= 0;
}

bool directed_edge(const Sequence& x, const Sequence& y, const UtilityMatrix& u,
                   const Rational& delta) {
    return block_utility(y, x, u) > delta * u.umax();
}

DegreeReport degree_counts(const TypeVector& p1, const TypeVector& p2, const GraphSpec& spec,
                           long long joint_cap) {
    if (p1.n() != p2.n()) throw std::invalid_argument("degree_counts: types differ in n");
    if (p1.q() != spec.u.q() || p2.q() != spec.u.q())
        throw std::invalid_argument("degree_counts: alphabet mismatch");
    const ScaledUtility su(spec.u);
    DegreeReport report{0, 0};
    long long visited = 0;
    // Column marginal = type of x (true), row marginal = type of y.
    enumerate_joint_types(p1, p2, [&](const JointType& w) {
        if (++visited > joint_cap)
            throw std::overflow_error("degree_counts: joint-type enumeration cap exceeded");
        if (!edge_predicate(w, su, spec)) return true;
        report.delta_out += column_weight(w, p1);
        report.delta_in += row_weight(w, p2);
        return true;
    });
    return report;
}

bool is_independent_set(std::span<const Sequence> s, const UtilityMatrix& u) {
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = i + 1; j < s.size(); ++j)
            if (s[i] == s[j] || adjacent(s[i], s[j], u)) return false;
    return true;
}

}  // namespace stratcomm
