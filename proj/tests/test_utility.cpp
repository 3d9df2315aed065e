#include "doctest.h"

#include <numeric>
#include <random>

#include "stratcomm/model.hpp"
#include "stratcomm/utility.hpp"

using namespace stratcomm;

namespace {

const UtilityMatrix kTernaryIncentive({{0, 1, 1}, {-4, 0, 1}, {-4, -4, 0}});
const UtilityMatrix kQuaternaryRateGap({{0, -2, -13, -18},
                               {1, 0, -13, -18},
                               {12, 1, 0, -18},
                               {5, 5, 5, 0}});

UtilityMatrix random_utility(std::mt19937& rng, int q) {
    std::uniform_int_distribution<int> num(-6, 6);
    std::uniform_int_distribution<int> den(1, 4);
    std::vector<std::vector<Rational>> e(q, std::vector<Rational>(q, Rational(0)));
    for (int i = 0; i < q; ++i)
        for (int j = 0; j < q; ++j)
            if (i != j) e[i][j] = Rational(num(rng), den(rng));
    return UtilityMatrix(std::move(e));
}

// Independent oracle: recursive permutation enumeration, no std::next_permutation.
Rational gamma_oracle(const UtilityMatrix& u) {
    const int q = u.q();
    std::vector<int> perm(q, -1);
    std::vector<bool> used(q, false);
    Rational best;
    bool have = false;
    auto rec = [&](auto&& self, int pos) -> void {
        if (pos == q) {
            bool identity = true;
            Rational v = 0;
            for (int j = 0; j < q; ++j) {
                if (perm[j] != j) identity = false;
                v += u(perm[j], j);
            }
            if (identity) return;
            if (!have || v > best) {
                best = v;
                have = true;
            }
            return;
        }
        for (int s = 0; s < q; ++s) {
            if (used[s]) continue;
            used[s] = true;
            perm[pos] = s;
            self(self, pos + 1);
            used[s] = false;
        }
    };
    rec(rec, 0);
    return best;
}

}  // namespace

TEST_CASE("normalize subtracts the truth-column diagonal") {
    const auto zero = UtilityMatrix::normalized({{0, 0}, {0, 0}});
    CHECK(zero(0, 1) == 0);
    CHECK(zero(1, 0) == 0);

    const auto shifted = UtilityMatrix::normalized({{5, 1}, {0, 5}});
    CHECK(shifted(0, 0) == 0);
    CHECK(shifted(0, 1) == -4);
    CHECK(shifted(1, 0) == -5);
    CHECK(shifted(1, 1) == 0);

    // Idempotent on already-normalized input.
    const auto again = UtilityMatrix::normalized(shifted.entries());
    CHECK(again.entries() == shifted.entries());

    CHECK_THROWS_AS(UtilityMatrix({{1, 0}, {0, 0}}), std::invalid_argument);
}

TEST_CASE("normalization preserves best-response sets") {
    std::mt19937 rng(5);
    std::uniform_int_distribution<int> num(-5, 5);
    for (int trial = 0; trial < 40; ++trial) {
        const int q = 2 + static_cast<int>(rng() % 3);
        std::vector<std::vector<Rational>> raw(q, std::vector<Rational>(q));
        for (auto& row : raw)
            for (auto& v : row) v = num(rng);
        const UtilityMatrix norm = UtilityMatrix::normalized(raw);

        const int n = 3;
        std::vector<Sequence> pool;
        for (int k = 0; k < 6; ++k) {
            std::vector<int> syms(n);
            for (auto& s : syms) s = static_cast<int>(rng() % q);
            pool.emplace_back(syms, q);
        }
        std::vector<int> xsyms(n);
        for (auto& s : xsyms) s = static_cast<int>(rng() % q);
        const Sequence x(xsyms, q);

        auto raw_value = [&](const Sequence& y) {
            Rational v = 0;
            for (int k = 0; k < n; ++k) v += raw[y.symbols[k]][x.symbols[k]];
            return v;
        };
        Rational best_raw = raw_value(pool[0]);
        Rational best_norm = block_utility(pool[0], x, norm);
        for (const auto& y : pool) {
            best_raw = std::max(best_raw, Rational(raw_value(y)));
            best_norm = std::max(best_norm, Rational(block_utility(y, x, norm)));
        }
        for (const auto& y : pool) {
            const bool argmax_raw = raw_value(y) == best_raw;
            const bool argmax_norm = block_utility(y, x, norm) == best_norm;
            CHECK(argmax_raw == argmax_norm);
        }
    }
}

TEST_CASE("block utility") {
    const UtilityMatrix u = UtilityMatrix::binary(1, -2);
    const Sequence x({0, 1, 1, 1, 1}, 2);
    CHECK(block_utility(x, x, u) == 0);
    CHECK(block_utility(Sequence({0, 0, 1, 1, 1}, 2), x, u) == Rational(1, 5));
    // Same type class: off-diagonal counts match, so the sum factors.
    const Sequence a({0, 1, 0, 1, 1}, 2);
    const Sequence b({1, 0, 0, 1, 1}, 2);
    const JointType w = joint_type(a, b);
    CHECK(w(0, 1) == w(1, 0));
    CHECK(block_utility(a, b, u) == Rational(w(0, 1), 5) * (u(0, 1) + u(1, 0)));
}

TEST_CASE("gamma on the worked matrices") {
    const GammaResult g1 = gamma(kTernaryIncentive);
    CHECK(g1.value == -2);
    CHECK(g1.value == gamma_oracle(kTernaryIncentive));
    // Witness is the 3-cycle 0 -> 2 -> 1 -> 0 (pi = [2, 0, 1]).
    CHECK(g1.witness == std::vector<int>{2, 0, 1});
    REQUIRE(g1.witness_cycles.size() == 1);
    CHECK(g1.witness_cycles[0] == std::vector<int>{0, 2, 1});

    const GammaResult g3 = gamma(kQuaternaryRateGap);
    CHECK(g3.value == -1);
    CHECK(g3.value == gamma_oracle(kQuaternaryRateGap));
    CHECK(g3.value < 0);

    const GammaResult bin = gamma(UtilityMatrix::binary(1, -2));
    CHECK(bin.value == -1);
}

TEST_CASE("binary gamma reduces to the entry sum") {
    std::mt19937 rng(17);
    std::uniform_int_distribution<int> num(-9, 9);
    std::uniform_int_distribution<int> den(1, 7);
    for (int trial = 0; trial < 500; ++trial) {
        const Rational a(num(rng), den(rng));
        const Rational b(num(rng), den(rng));
        const UtilityMatrix u = UtilityMatrix::binary(a, b);
        CHECK(gamma(u).value == a + b);
    }
}

TEST_CASE("gamma_sign classifies and witnesses") {
    const auto neg = gamma_sign(UtilityMatrix::binary(-1, -2));
    CHECK(neg.kind == GammaSignKind::negative);
    CHECK(!neg.witness_cycle.has_value());

    const auto zero = gamma_sign(UtilityMatrix::binary(1, -1));
    CHECK(zero.kind == GammaSignKind::zero);
    REQUIRE(zero.witness_cycle.has_value());
    CHECK(zero.witness_cycle->size() == 2);
    CHECK(zero.witness_sum == 0);

    CHECK(gamma_sign(kTernaryIncentive).kind == GammaSignKind::negative);
    CHECK(gamma_sign(kQuaternaryRateGap).kind == GammaSignKind::negative);

    const auto pos = gamma_sign(UtilityMatrix::binary(3, -1));
    CHECK(pos.kind == GammaSignKind::positive);
    CHECK(pos.witness_sum == 2);
}

TEST_CASE("gamma_sign agrees with gamma on random matrices") {
    std::mt19937 rng(23);
    for (int trial = 0; trial < 300; ++trial) {
        const int q = 2 + static_cast<int>(rng() % 5);  // up to 6
        const UtilityMatrix u = random_utility(rng, q);
        const Rational g = gamma(u).value;
        const auto sign = gamma_sign(u);
        if (g < 0) CHECK(sign.kind == GammaSignKind::negative);
        if (g == 0) CHECK(sign.kind == GammaSignKind::zero);
        if (g > 0) CHECK(sign.kind == GammaSignKind::positive);
        if (sign.witness_cycle) {
            // The witness really is a cycle with the reported sum.
            const auto& cyc = *sign.witness_cycle;
            Rational sum = 0;
            for (std::size_t i = 0; i < cyc.size(); ++i)
                sum += u(cyc[(i + 1) % cyc.size()], cyc[i]);
            CHECK(sum == sign.witness_sum);
            CHECK(sum >= 0);
            CHECK(sum <= g);
        }
    }
}

TEST_CASE("proposition-1 sufficient condition") {
    const Prop1Result ex1 = prop1_holds(kTernaryIncentive);
    CHECK(ex1.holds);
    CHECK(ex1.acyclic);
    CHECK(ex1.margin);

    // 2 > (2-1)*1 and the single nonnegative arc cannot cycle.
    CHECK(prop1_holds(UtilityMatrix::binary(1, -2)).holds);

    // Boundary: 1 > 1 fails.
    const Prop1Result boundary = prop1_holds(UtilityMatrix::binary(1, -1));
    CHECK(!boundary.holds);
    CHECK(boundary.acyclic);
    CHECK(!boundary.margin);

    // A nonnegative 2-cycle breaks clause (i).
    const Prop1Result cyc = prop1_holds(UtilityMatrix::binary(1, 0));
    CHECK(!cyc.holds);
    CHECK(!cyc.acyclic);
    REQUIRE(cyc.cycle_witness.has_value());
}

TEST_CASE("proposition 1 implies gamma < 0") {
    std::mt19937 rng(31);
    int hits = 0;
    for (int trial = 0; trial < 2000; ++trial) {
        const int q = 2 + static_cast<int>(rng() % 4);  // up to 5
        const UtilityMatrix u = random_utility(rng, q);
        if (!prop1_holds(u).holds) continue;
        ++hits;
        CHECK(gamma(u).value < 0);
    }
    CHECK(hits > 20);  // the battery actually exercised the implication
}

TEST_CASE("gamma enumeration is guarded beyond q = 9") {
    std::vector<std::vector<Rational>> e(10, std::vector<Rational>(10, Rational(0)));
    for (int i = 0; i < 10; ++i)
        for (int j = 0; j < 10; ++j)
            if (i != j) e[i][j] = -1;
    const UtilityMatrix u(std::move(e));
    CHECK_THROWS_AS(gamma(u), std::invalid_argument);
    CHECK(gamma_sign(u).kind == GammaSignKind::negative);  // sign still available
}

TEST_CASE("equal-marginal joints have nonpositive utility under gamma < 0") {
    const std::vector<UtilityMatrix> utils = {UtilityMatrix::binary(1, -2), kTernaryIncentive};
    for (const auto& u : utils) {
        REQUIRE(gamma(u).value < 0);
        const int q = u.q();
        for (long long n = 2; n <= (q == 2 ? 8 : 6); ++n) {
            for (const auto& t : enumerate_types(n, q)) {
                enumerate_joint_types(t, t, [&](const JointType& w) {
                    const Rational val = block_utility(w, u);
                    bool diag = true;
                    for (int i = 0; i < q && diag; ++i)
                        for (int j = 0; j < q && diag; ++j)
                            if (i != j && w(i, j) != 0) diag = false;
                    CHECK(val <= 0);
                    CHECK((val == 0) == diag);
                    return true;
                });
            }
        }
    }
}
