#include "doctest.h"

#include <random>
#include <set>

#include "stratcomm/game.hpp"
#include "stratcomm/sender_graph.hpp"
#include "stratcomm/transport.hpp"
#include "stratcomm/type_engine.hpp"

using namespace stratcomm;

namespace {

Sequence seq(std::vector<int> s, int q = 2) { return Sequence(std::move(s), q); }

std::vector<Sequence> all_sequences(int n, int q) {
    std::vector<Sequence> out;
    std::vector<int> cur(n, 0);
    for (;;) {
        out.emplace_back(cur, q);
        int k = n - 1;
        while (k >= 0 && cur[k] == q - 1) cur[k--] = 0;
        if (k < 0) break;
        ++cur[k];
    }
    return out;
}

// Exhaustive oracle for the transportation optimum.
struct BestOracle {
    Rational max_utility;
    Rational max_distortion;
    Rational min_distortion;
};

BestOracle type_level_best_oracle(const TypeVector& px, const TypeVector& qc,
                                  const UtilityMatrix& u) {
    BestOracle r;
    bool have = false;
    enumerate_joint_types(px, qc, [&](const JointType& w) {
        const Rational util = block_utility(w, u);
        long long off = 0;
        for (int i = 0; i < w.q(); ++i)
            for (int j = 0; j < w.q(); ++j)
                if (i != j) off += w(i, j);
        const Rational dist(off, px.n());
        if (!have || util > r.max_utility) {
            r.max_utility = util;
            r.max_distortion = r.min_distortion = dist;
            have = true;
        } else if (util == r.max_utility) {
            r.max_distortion = std::max(r.max_distortion, dist);
            r.min_distortion = std::min(r.min_distortion, dist);
        }
        return true;
    });
    REQUIRE(have);
    return r;
}

}  // namespace

TEST_CASE("strategy construction and anchors") {
    const auto identity = ReceiverStrategy::from_sequences(all_sequences(2, 2));
    CHECK(identity.image_size() == 4);
    CHECK(identity.anchor() == seq({0, 0}));

    const auto cls = ReceiverStrategy::from_type_classes({TypeVector({1, 4})});
    CHECK(cls.anchor() == seq({0, 1, 1, 1, 1}));
    CHECK(cls.image_size() == 5);

    // Two large classes at n = 36 stay lazy.
    const auto big = ReceiverStrategy::from_type_classes(
        {TypeVector({1, 1, 1, 33}), TypeVector({0, 12, 12, 12})});
    CHECK(big.image_size() == BigInt(42840) + type_class_size(TypeVector({0, 12, 12, 12})));

    CHECK_THROWS_AS(ReceiverStrategy::from_sequences({}), std::invalid_argument);
    CHECK_THROWS_AS(
        ReceiverStrategy::from_sequences({seq({0, 0})}, seq({1, 1})),
        std::invalid_argument);

    // g is the identity on its image and the anchor elsewhere.
    const auto g = ReceiverStrategy::from_sequences({seq({0, 1}), seq({1, 1})});
    CHECK(g.apply(seq({1, 1})) == seq({1, 1}));
    CHECK(g.apply(seq({1, 0})) == g.anchor());
}

TEST_CASE("best response basics") {
    const UtilityMatrix all_neg = UtilityMatrix::binary(-1, -2);
    const auto g = ReceiverStrategy::from_sequences(all_sequences(3, 2));
    const Sequence x = seq({0, 1, 0});
    CHECK(best_response(g, x, all_neg, TieRule::worst_case(0)) == x);

    const UtilityMatrix u11 = UtilityMatrix::binary(1, -1);
    const auto g2 = ReceiverStrategy::from_sequences({seq({0, 0}), seq({1, 1})});
    CHECK(best_response(g2, seq({1, 1}), u11, TieRule::worst_case(0)) == seq({0, 0}));
}

TEST_CASE("best response on the nearby-class instance") {
    const UtilityMatrix u = UtilityMatrix::binary(1, -2);
    const auto g = ReceiverStrategy::from_type_classes(
        {TypeVector({1, 4}), TypeVector({2, 3})});
    const Sequence x = seq({0, 1, 1, 1, 1});
    const Sequence y = best_response(g, x, u, TieRule::worst_case(Rational(1, 5)));
    CHECK(empirical_type(y) == TypeVector({2, 3}));
    CHECK(block_utility(y, x, u) == Rational(1, 5));
    CHECK(hamming(y, x) == Rational(1, 5));
    CHECK(y == seq({0, 0, 1, 1, 1}));  // lexicographic tie fallback
}

TEST_CASE("sequence-level evaluation") {
    SUBCASE("identity decoder, all-negative utility") {
        const UtilityMatrix u = UtilityMatrix::binary(-1, -2);
        const auto g = ReceiverStrategy::from_sequences(all_sequences(3, 2));
        const auto out = evaluate(g, u, Distribution::binary(Rational(3, 10)), 0,
                                  TieRule::worst_case(0));
        CHECK(out.error_prob == 0);
        CHECK(out.a_size == 8);
        CHECK(*out.rate_bits == doctest::Approx(1.0));
        CHECK(out.coop_recovered_prob == 1);
    }
    SUBCASE("two-codeword pessimistic example") {
        const UtilityMatrix u = UtilityMatrix::binary(1, -1);
        const auto g = ReceiverStrategy::from_sequences({seq({0, 0}), seq({1, 1})});
        EvalOptions opts;
        opts.collect_sets = true;
        const auto out =
            evaluate(g, u, Distribution::binary(Rational(1, 2)), 0, TieRule::worst_case(0), opts);
        CHECK(out.error_prob == Rational(3, 4));
        REQUIRE(out.recovered.size() == 1);
        CHECK(out.recovered[0] == seq({0, 0}));
        CHECK(out.a_size == 1);
        CHECK(*out.rate_bits == doctest::Approx(0.0));
    }
    SUBCASE("cap exceeded") {
        const UtilityMatrix u = UtilityMatrix::binary(1, -1);
        const auto g = ReceiverStrategy::from_sequences({seq({0, 0}), seq({1, 1})});
        EvalOptions opts;
        opts.cap = 3;
        CHECK_THROWS_AS(
            evaluate(g, u, Distribution::binary(Rational(1, 2)), 0, TieRule::worst_case(0), opts),
            std::overflow_error);
    }
}

TEST_CASE("pessimism dominates the lexicographic tie rule") {
    std::mt19937 rng(41);
    for (int trial = 0; trial < 25; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 4);
        std::uniform_int_distribution<int> num(-4, 4);
        const UtilityMatrix u = UtilityMatrix::binary(num(rng), num(rng));
        std::vector<Sequence> image;
        for (const auto& s : all_sequences(n, 2))
            if (rng() & 1) image.push_back(s);
        if (image.empty()) image.push_back(seq(std::vector<int>(n, 0)));
        const auto g = ReceiverStrategy::from_sequences(image);
        const Distribution p = Distribution::binary(Rational(3, 10));
        const Rational d(1 + static_cast<int>(rng() % 2), 5);
        const auto worst = evaluate(g, u, p, d, TieRule::worst_case(d));
        const auto lex = evaluate(g, u, p, d, TieRule::lex_min());
        CHECK(worst.error_prob >= lex.error_prob);
    }
}

TEST_CASE("best responses maximize over the image") {
    std::mt19937 rng(47);
    for (int trial = 0; trial < 20; ++trial) {
        const int q = 2 + static_cast<int>(rng() % 2);
        const int n = 2 + static_cast<int>(rng() % 3);
        std::uniform_int_distribution<int> num(-4, 4);
        std::vector<std::vector<Rational>> e(q, std::vector<Rational>(q, Rational(0)));
        for (int i = 0; i < q; ++i)
            for (int j = 0; j < q; ++j)
                if (i != j) e[i][j] = num(rng);
        const UtilityMatrix u(std::move(e));
        const auto all = all_sequences(n, q);
        std::vector<Sequence> image;
        for (const auto& s : all)
            if (rng() % 3 == 0) image.push_back(s);
        if (image.empty()) image.push_back(all[rng() % all.size()]);
        const auto g = ReceiverStrategy::from_sequences(image);
        for (const auto& x : all) {
            const Sequence y = best_response(g, x, u, TieRule::worst_case(0));
            for (const auto& cand : g.expanded_image())
                CHECK(block_utility(y, x, u) >= block_utility(cand, x, u));
        }
    }
}

TEST_CASE("exact recovery sets are independent in the sender graph") {
    std::mt19937 rng(53);
    std::uniform_int_distribution<int> num(-4, 4);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 5);
        const UtilityMatrix u = UtilityMatrix::binary(num(rng), num(rng));
        std::vector<Sequence> image;
        for (const auto& s : all_sequences(n, 2))
            if (rng() & 1) image.push_back(s);
        if (image.empty()) image.push_back(seq(std::vector<int>(n, 1)));
        const auto g = ReceiverStrategy::from_sequences(image);
        EvalOptions opts;
        opts.collect_sets = true;
        const auto out = evaluate(g, u, Distribution::binary(Rational(1, 2)), 0,
                                  TieRule::worst_case(0), opts);
        CHECK(is_independent_set(out.recovered, u));
    }
}

TEST_CASE("type-level best matches the worked examples") {
    const UtilityMatrix u = UtilityMatrix::binary(1, -2);
    SUBCASE("own class with gamma < 0 pins the diagonal") {
        const auto r = type_level_best(TypeVector({2, 3}), TypeVector({2, 3}), u);
        CHECK(r.max_utility == 0);
        CHECK(r.max_distortion == 0);
        CHECK(r.min_distortion == 0);
        CHECK(r.unique_diagonal);
    }
    SUBCASE("one-step-up class") {
        const auto r = type_level_best(TypeVector({1, 4}), TypeVector({2, 3}), u);
        CHECK(r.max_utility == Rational(1, 5));
        CHECK(r.max_distortion == Rational(1, 5));
        CHECK(r.min_distortion == Rational(1, 5));
        CHECK(!r.unique_diagonal);
    }
    SUBCASE("rate-gap instance at n = 36") {
        const UtilityMatrix u4({{0, -2, -13, -18},
                                {1, 0, -13, -18},
                                {12, 1, 0, -18},
                                {5, 5, 5, 0}});
        const auto r =
            type_level_best(TypeVector({12, 12, 0, 12}), TypeVector({0, 12, 12, 12}), u4);
        CHECK(r.max_utility == 4);
    }
}

TEST_CASE("type-level best agrees with the exhaustive oracle") {
    std::mt19937 rng(59);
    std::uniform_int_distribution<int> num(-5, 5);
    for (int trial = 0; trial < 60; ++trial) {
        const int q = 2 + static_cast<int>(rng() % 3);
        const long long n = 2 + rng() % 7;
        std::vector<std::vector<Rational>> e(q, std::vector<Rational>(q, Rational(0)));
        for (int i = 0; i < q; ++i)
            for (int j = 0; j < q; ++j)
                if (i != j) e[i][j] = Rational(num(rng), 1 + static_cast<int>(rng() % 3));
        const UtilityMatrix u(std::move(e));
        std::vector<long long> a(q, 0), b(q, 0);
        for (long long i = 0; i < n; ++i) ++a[rng() % q];
        for (long long i = 0; i < n; ++i) ++b[rng() % q];
        const TypeVector px(a), qc(b);
        const auto fast = type_level_best(px, qc, u);
        const auto slow = type_level_best_oracle(px, qc, u);
        CHECK(fast.max_utility == slow.max_utility);
        CHECK(fast.max_distortion == slow.max_distortion);
        CHECK(fast.min_distortion == slow.min_distortion);
        CHECK(fast.argmax_distortion.row_marginal() == qc);
        CHECK(fast.argmax_distortion.col_marginal() == px);
    }
}

TEST_CASE("engines agree on type-class strategies") {
    std::mt19937 rng(61);
    std::uniform_int_distribution<int> num(-4, 4);
    for (int trial = 0; trial < 12; ++trial) {
        const int q = 2 + (trial % 2);
        const int n = 4 + static_cast<int>(rng() % (q == 2 ? 5 : 3));
        const UtilityMatrix u = [&] {
            std::vector<std::vector<Rational>> e(q, std::vector<Rational>(q, Rational(0)));
            for (int i = 0; i < q; ++i)
                for (int j = 0; j < q; ++j)
                    if (i != j) e[i][j] = num(rng);
            return UtilityMatrix(std::move(e));
        }();
        const auto types = enumerate_types(n, q);
        std::vector<TypeVector> classes;
        for (const auto& t : types)
            if (rng() % 3 == 0) classes.push_back(t);
        if (classes.empty()) classes.push_back(types[rng() % types.size()]);
        const auto g = ReceiverStrategy::from_type_classes(classes);
        const Distribution p = q == 2
                                   ? Distribution::binary(Rational(3, 10))
                                   : Distribution({Rational(1, 5), Rational(2, 5), Rational(2, 5)});
        const Rational d = trial % 2 ? Rational(1, 5) : Rational(0);
        EvalOptions opts;
        opts.collect_sets = true;
        const auto sequence = evaluate(g, u, p, d, TieRule::worst_case(d), opts);
        const auto type = type_level_evaluate(g, u, p, d, TieRule::worst_case(d));
        CHECK(sequence.error_prob == type.error_prob);
        CHECK(sequence.coop_recovered_prob == type.coop_recovered_prob);
        if (type.a_exact && type.rate_bits) CHECK(type.a_lower_size == sequence.a_size);
    }
}

TEST_CASE("type engine rejects mismatched tie rules") {
    const auto g = ReceiverStrategy::from_type_classes({TypeVector({1, 2})});
    const UtilityMatrix u = UtilityMatrix::binary(1, -2);
    const Distribution p = Distribution::binary(Rational(1, 2));
    CHECK_THROWS_AS(type_level_evaluate(g, u, p, Rational(1, 5), TieRule::lex_min()),
                    std::invalid_argument);
    CHECK_THROWS_AS(type_level_evaluate(g, u, p, Rational(1, 5), TieRule::worst_case(0)),
                    std::invalid_argument);
}

TEST_CASE("no positive cycles in transportation maximizers under gamma < 0") {
    std::mt19937 rng(67);
    std::uniform_int_distribution<int> num(-6, 6);
    int done = 0;
    while (done < 25) {
        const int q = 2 + static_cast<int>(rng() % 3);  // up to 4
        std::vector<std::vector<Rational>> e(q, std::vector<Rational>(q, Rational(0)));
        for (int i = 0; i < q; ++i)
            for (int j = 0; j < q; ++j)
                if (i != j) e[i][j] = num(rng);
        const UtilityMatrix u(std::move(e));
        if (gamma(u).value >= 0) continue;
        ++done;
        const long long n = 4 + rng() % 8;
        std::vector<long long> a(q, 0), b(q, 0);
        for (long long i = 0; i < n; ++i) ++a[rng() % q];
        for (long long i = 0; i < n; ++i) ++b[rng() % q];
        const auto r = type_level_best(TypeVector(a), TypeVector(b), u);
        for (const auto& w : {r.argmax_distortion, r.argmin_distortion}) {
            // DFS over the off-diagonal support; any directed cycle would
            // contradict the maximizer structure.
            std::vector<int> colour(q, 0);
            bool cycle = false;
            auto dfs = [&](auto&& self, int v) -> void {
                colour[v] = 1;
                for (int t = 0; t < q; ++t) {
                    if (t == v || w(v, t) == 0) continue;
                    if (colour[t] == 1) cycle = true;
                    if (colour[t] == 0) self(self, t);
                }
                colour[v] = 2;
            };
            for (int v = 0; v < q; ++v)
                if (colour[v] == 0) dfs(dfs, v);
            CHECK(!cycle);
        }
    }
}

TEST_CASE("outcome invariants: nesting of reconstruction sets") {
    std::mt19937 rng(79);
    std::uniform_int_distribution<int> num(-4, 4);
    for (int trial = 0; trial < 15; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 4);
        const UtilityMatrix u = UtilityMatrix::binary(num(rng), num(rng));
        std::vector<Sequence> image;
        for (const auto& s : all_sequences(n, 2))
            if (rng() & 1) image.push_back(s);
        if (image.empty()) image.push_back(seq(std::vector<int>(n, 0)));
        const auto g = ReceiverStrategy::from_sequences(image);
        const Rational d(static_cast<int>(rng() % 3), 5);
        EvalOptions opts;
        opts.collect_sets = true;
        const auto out = evaluate(g, u, Distribution::binary(Rational(3, 10)), d,
                                  TieRule::worst_case(d), opts);
        // A_d lies inside the used image, which lies inside the image of g.
        CHECK(out.a_size <= out.image_size);
        CHECK(out.image_size <= g.image_size());
        CHECK(out.error_prob >= 0);
        CHECK(out.error_prob <= 1);
        CHECK(out.recovered_prob + out.error_prob == 1);
        // Strategic recovery never beats the cooperative baseline.
        CHECK(out.recovered_prob <= out.coop_recovered_prob);
        for (const auto& y : out.reconstructions) CHECK(g.image_contains(y));
        if (out.rate_bits) CHECK(*out.rate_bits <= out.image_rate_bits + 1e-12);
    }
}

TEST_CASE("integer fast path agrees with the rational fallback") {
    // Scaling the utility by a positive constant with a huge denominator
    // preserves every argmax, but pushes the engine onto the rational path.
    const Rational scale(1, (1LL << 30) + 1);
    std::mt19937 rng(73);
    std::uniform_int_distribution<int> num(-4, 4);
    for (int trial = 0; trial < 10; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 4);
        const Rational a(num(rng)), b(num(rng));
        const UtilityMatrix fast_u = UtilityMatrix::binary(a, b);
        const UtilityMatrix slow_u = UtilityMatrix::binary(a * scale, b * scale);
        std::vector<Sequence> image;
        for (const auto& s : all_sequences(n, 2))
            if (rng() & 1) image.push_back(s);
        if (image.empty()) image.push_back(seq(std::vector<int>(n, 0)));
        const auto g = ReceiverStrategy::from_sequences(image);
        const Distribution p = Distribution::binary(Rational(3, 10));
        const Rational d(1, 5);
        EvalOptions opts;
        opts.collect_sets = true;
        const auto fast = evaluate(g, fast_u, p, d, TieRule::worst_case(d), opts);
        const auto slow = evaluate(g, slow_u, p, d, TieRule::worst_case(d), opts);
        CHECK(fast.error_prob == slow.error_prob);
        CHECK(fast.coop_recovered_prob == slow.coop_recovered_prob);
        CHECK(fast.a_size == slow.a_size);
        CHECK(fast.recovered == slow.recovered);
        CHECK(fast.reconstructions == slow.reconstructions);
        CHECK(fast.image_size == slow.image_size);
    }
}

TEST_CASE("time sharing composes block strategies") {
    const UtilityMatrix u = UtilityMatrix::binary(1, -2);
    const Distribution p = Distribution::binary(Rational(3, 10));
    EvalOptions opts;
    opts.collect_sets = true;

    SUBCASE("trivial second block forces its symbol") {
        const auto g1 = ReceiverStrategy::from_type_classes({TypeVector({1, 2})});
        const auto g2 = ReceiverStrategy::from_sequences({seq({1, 1, 1})});
        const auto gc = compose_time_share(g1, g2);
        CHECK(gc.n() == 6);
        CHECK(gc.image_size() == g1.image_size());
        const auto o1 = evaluate(g1, u, p, 0, TieRule::worst_case(0), opts);
        const auto oc = evaluate(gc, u, p, 0, TieRule::worst_case(0), opts);
        CHECK(oc.a_size == o1.a_size);
    }
    SUBCASE("product structure at d = 0") {
        std::mt19937 rng(71);
        for (int trial = 0; trial < 6; ++trial) {
            std::vector<Sequence> im1, im2;
            for (const auto& s : all_sequences(3, 2)) {
                if (rng() & 1) im1.push_back(s);
                if (rng() & 1) im2.push_back(s);
            }
            if (im1.empty()) im1.push_back(seq({0, 0, 0}));
            if (im2.empty()) im2.push_back(seq({1, 1, 1}));
            const auto g1 = ReceiverStrategy::from_sequences(im1);
            const auto g2 = ReceiverStrategy::from_sequences(im2);
            const auto gc = compose_time_share(g1, g2);
            const auto o1 = evaluate(g1, u, p, 0, TieRule::worst_case(0), opts);
            const auto o2 = evaluate(g2, u, p, 0, TieRule::worst_case(0), opts);
            const auto oc = evaluate(gc, u, p, 0, TieRule::worst_case(0), opts);
            CHECK(oc.a_size == o1.a_size * o2.a_size);
            CHECK(oc.error_prob <= o1.error_prob + o2.error_prob);
            // Best responses factor: the composite reply concatenates the
            // per-block replies for recovered blocks.
            std::set<std::vector<int>> expect;
            for (const auto& a : o1.reconstructions)
                for (const auto& b : o2.reconstructions) {
                    auto v = a.symbols;
                    v.insert(v.end(), b.symbols.begin(), b.symbols.end());
                    expect.insert(v);
                }
            std::set<std::vector<int>> got;
            for (const auto& y : oc.reconstructions) got.insert(y.symbols);
            CHECK(got == expect);
        }
    }
}

TEST_CASE("brute force minimum worst-case error") {
    const Distribution p = Distribution::binary(Rational(3, 10));
    SUBCASE("all-negative utility reaches zero with the identity decoder") {
        const auto r = brute_force_min_error(3, p, UtilityMatrix::binary(-1, -2), 0);
        CHECK(r.min_error == 0);
        CHECK(r.witness_image.size() == 8);
    }
    SUBCASE("zero-sum utility cannot reach zero error") {
        const auto r =
            brute_force_min_error(2, Distribution::binary(Rational(1, 2)),
                                  UtilityMatrix::binary(1, -1), 0);
        CHECK(r.min_error > 0);
    }
    SUBCASE("deterministic across repeated runs and thread counts") {
        const auto a = brute_force_min_error(3, p, UtilityMatrix::binary(1, -2), 0, 1);
        const auto b = brute_force_min_error(3, p, UtilityMatrix::binary(1, -2), 0, 4);
        CHECK(a.min_error == b.min_error);
        CHECK(a.witness_image == b.witness_image);
    }
    CHECK_THROWS_AS(brute_force_min_error(5, p, UtilityMatrix::binary(1, -1), 0),
                    std::invalid_argument);
}
