#include "stratcomm/utility.hpp"

#include <algorithm>
#include <numeric>

namespace stratcomm {

UtilityMatrix::UtilityMatrix(std::vector<std::vector<Rational>> entries)
    : entries_(std::move(entries)) {
    const int n = static_cast<int>(entries_.size());
    if (n < 2) throw std::invalid_argument("UtilityMatrix: q must be >= 2");
    for (const auto& row : entries_)
        if (static_cast<int>(row.size()) != n)
            throw std::invalid_argument("UtilityMatrix: matrix must be square");
    for (int i = 0; i < n; ++i)
        if (entries_[i][i] != 0)
            throw std::invalid_argument("UtilityMatrix: diagonal must be zero; use normalized()");
}

UtilityMatrix UtilityMatrix::normalized(const std::vector<std::vector<Rational>>& raw) {
    const int n = static_cast<int>(raw.size());
    std::vector<std::vector<Rational>> e(n, std::vector<Rational>(n));
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(raw[i].size()) != n)
            throw std::invalid_argument("UtilityMatrix: matrix must be square");
        for (int j = 0; j < n; ++j) e[i][j] = raw[i][j] - raw[j][j];
    }
    return UtilityMatrix(std::move(e));
}

UtilityMatrix UtilityMatrix::binary(const Rational& u01, const Rational& u10) {
    return UtilityMatrix({{0, u01}, {u10, 0}});
}

Rational UtilityMatrix::umax() const {
    Rational m = entries_[0][0];
    for (const auto& row : entries_)
        for (const auto& v : row) m = std::max(m, v);
    return m;
}

Rational UtilityMatrix::umin() const {
    Rational m = entries_[0][0];
    for (const auto& row : entries_)
        for (const auto& v : row) m = std::min(m, v);
    return m;
}

Rational UtilityMatrix::binary_a() const {
    if (q() != 2) throw std::logic_error("binary_a: q must be 2");
    return std::min(Rational(abs(entries_[0][1])), Rational(abs(entries_[1][0])));
}

Rational UtilityMatrix::binary_b() const {
    if (q() != 2) throw std::logic_error("binary_b: q must be 2");
    return std::max(Rational(abs(entries_[0][1])), Rational(abs(entries_[1][0])));
}

Rational UtilityMatrix::binary_sum() const {
    if (q() != 2) throw std::logic_error("binary_sum: q must be 2");
    return entries_[0][1] + entries_[1][0];
}

Rational block_utility(const JointType& w, const UtilityMatrix& u) {
    if (w.q() != u.q()) throw std::invalid_argument("block_utility: dimension mismatch");
    Rational s = 0;
    for (int i = 0; i < w.q(); ++i)
        for (int j = 0; j < w.q(); ++j)
            if (w(i, j) != 0) s += Rational(w(i, j)) * u(i, j);
    return s / w.n();
}

Rational block_utility(const Sequence& y, const Sequence& x, const UtilityMatrix& u) {
    if (y.n() != x.n() || y.q != x.q || x.q != u.q())
        throw std::invalid_argument("block_utility: dimension mismatch");
    Rational s = 0;
    for (int k = 0; k < x.n(); ++k) s += u(y.symbols[k], x.symbols[k]);
    return s / x.n();
}

namespace {

std::vector<std::vector<int>> cycles_of(const std::vector<int>& perm) {
    std::vector<std::vector<int>> cycles;
    std::vector<bool> seen(perm.size(), false);
    for (int s = 0; s < static_cast<int>(perm.size()); ++s) {
        if (seen[s] || perm[s] == s) continue;
        std::vector<int> cyc;
        int v = s;
        while (!seen[v]) {
            seen[v] = true;
            cyc.push_back(v);
            v = perm[v];
        }
        cycles.push_back(std::move(cyc));
    }
    return cycles;
}

}  // namespace

GammaResult gamma(const UtilityMatrix& u) {
    const int q = u.q();
    if (q > 9)
        throw std::invalid_argument(
            "gamma: permutation enumeration limited to q <= 9; use gamma_sign");
    std::vector<int> perm(q);
    std::iota(perm.begin(), perm.end(), 0);
    GammaResult best;
    bool have = false;
    // next_permutation walks lexicographically, so keeping strict improvements
    // leaves the lexicographically smallest witness.
    do {
        bool identity = true;
        for (int j = 0; j < q && identity; ++j) identity = perm[j] == j;
        if (identity) continue;
        Rational v = 0;
        for (int j = 0; j < q; ++j) v += u(perm[j], j);
        if (!have || v > best.value) {
            best.value = v;
            best.witness = perm;
            have = true;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    best.witness_cycles = cycles_of(best.witness);
    return best;
}

GammaSignResult gamma_sign(const UtilityMatrix& u) {
    const int q = u.q();
    // Karp's maximum mean cycle on the complete digraph; arc x -> y carries
    // U(y, x), matching the orientation of the permutation program.
    // d[k][v] = max weight of a k-edge walk ending at v (from any start).
    std::vector<std::vector<Rational>> d(q + 1, std::vector<Rational>(q, 0));
    std::vector<std::vector<bool>> ok(q + 1, std::vector<bool>(q, false));
    std::vector<std::vector<int>> parent(q + 1, std::vector<int>(q, -1));
    for (int v = 0; v < q; ++v) ok[0][v] = true;
    for (int k = 1; k <= q; ++k) {
        for (int v = 0; v < q; ++v) {
            for (int w = 0; w < q; ++w) {
                if (w == v || !ok[k - 1][w]) continue;
                const Rational cand = d[k - 1][w] + u(v, w);
                if (!ok[k][v] || cand > d[k][v]) {
                    d[k][v] = cand;
                    ok[k][v] = true;
                    parent[k][v] = w;
                }
            }
        }
    }
    // mu* = max_v min_k (d[q][v] - d[k][v]) / (q - k)
    bool have = false;
    Rational mu;
    int best_v = -1;
    for (int v = 0; v < q; ++v) {
        if (!ok[q][v]) continue;
        bool vhave = false;
        Rational vmin;
        for (int k = 0; k < q; ++k) {
            if (!ok[k][v]) continue;
            const Rational val = (d[q][v] - d[k][v]) / (q - k);
            if (!vhave || val < vmin) {
                vmin = val;
                vhave = true;
            }
        }
        if (vhave && (!have || vmin > mu)) {
            mu = vmin;
            best_v = v;
            have = true;
        }
    }
    GammaSignResult r;
    if (!have || mu < 0) {
        r.kind = GammaSignKind::negative;
        return r;
    }
    // Extract a cycle from the maximum q-edge walk ending at best_v; every
    // cycle on that walk has mean exactly mu >= 0, hence sum >= 0.
    std::vector<int> walk(q + 1);
    walk[q] = best_v;
    for (int k = q; k > 0; --k) walk[k - 1] = parent[k][walk[k]];
    std::vector<int> pos(q, -1);
    std::vector<int> cyc;
    for (int k = q; k >= 0; --k) {
        if (pos[walk[k]] >= 0) {
            // walk[k] -> walk[k+1] -> ... -> walk[pos] closes the cycle.
            for (int m = k; m < pos[walk[k]]; ++m) cyc.push_back(walk[m]);
            break;
        }
        pos[walk[k]] = k;
    }
    Rational sum = 0;
    for (std::size_t i = 0; i < cyc.size(); ++i)
        sum += u(cyc[(i + 1) % cyc.size()], cyc[i]);
    if (cyc.empty() || sum < 0)
        throw std::logic_error("gamma_sign: witness extraction failed");
    r.kind = sum == 0 ? GammaSignKind::zero : GammaSignKind::positive;
    r.witness_cycle = cyc;
    r.witness_sum = sum;
    return r;
}

Prop1Result prop1_holds(const UtilityMatrix& u) {
    const int q = u.q();
    Prop1Result r;

    // Clause (i): the digraph with an arc i -> j whenever U(i,j) >= 0 must be
    // acyclic. DFS three-colour cycle detection.
    std::vector<int> colour(q, 0);
    std::vector<int> stack;
    std::optional<std::vector<int>> cyc;
    auto dfs = [&](auto&& self, int v) -> bool {
        colour[v] = 1;
        stack.push_back(v);
        for (int w = 0; w < q; ++w) {
            if (w == v || u(v, w) < 0) continue;
            if (colour[w] == 1) {
                std::vector<int> c;
                for (auto it = std::find(stack.begin(), stack.end(), w); it != stack.end(); ++it)
                    c.push_back(*it);
                cyc = c;
                return false;
            }
            if (colour[w] == 0 && !self(self, w)) return false;
        }
        stack.pop_back();
        colour[v] = 2;
        return true;
    };
    r.acyclic = true;
    for (int v = 0; v < q && r.acyclic; ++v)
        if (colour[v] == 0 && !dfs(dfs, v)) r.acyclic = false;
    r.cycle_witness = cyc;

    // Clause (ii): min |strictly negative| > (q-1) * max nonnegative
    // off-diagonal; vacuous when there are no nonnegative off-diagonals.
    bool any_nonneg = false, any_neg = false;
    Rational max_nonneg = 0, min_neg_mag = 0;
    for (int i = 0; i < q; ++i) {
        for (int j = 0; j < q; ++j) {
            if (i == j) continue;
            if (u(i, j) >= 0) {
                if (!any_nonneg || u(i, j) > max_nonneg) max_nonneg = u(i, j);
                any_nonneg = true;
            } else {
                const Rational mag = -u(i, j);
                if (!any_neg || mag < min_neg_mag) min_neg_mag = mag;
                any_neg = true;
            }
        }
    }
    r.margin = !any_nonneg || (any_neg && min_neg_mag > Rational(q - 1) * max_nonneg);
    r.holds = r.acyclic && r.margin;
    return r;
}

}  // namespace stratcomm
