#include "stratcomm/verify.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <sstream>

#include "stratcomm/game.hpp"
#include "stratcomm/rate_region.hpp"
#include "stratcomm/sender_graph.hpp"
#include "stratcomm/transport.hpp"
#include "stratcomm/type_engine.hpp"

namespace stratcomm {

namespace {

std::string rstr(const Rational& r) { return rational_to_string(r); }

void add(SuiteResult& s, const std::string& name, bool pass, const std::string& detail = "") {
    s.checks.push_back({name, pass, detail});
}

UtilityMatrix random_utility(std::mt19937& rng, int q, int lo = -6, int hi = 6) {
    std::uniform_int_distribution<int> num(lo, hi);
    std::uniform_int_distribution<int> den(1, 4);
    std::vector<std::vector<Rational>> e(q, std::vector<Rational>(q, Rational(0)));
    for (int i = 0; i < q; ++i)
        for (int j = 0; j < q; ++j)
            if (i != j) e[i][j] = Rational(num(rng), den(rng));
    return UtilityMatrix(std::move(e));
}

UtilityMatrix random_gamma_negative_utility(std::mt19937& rng, int q) {
    for (;;) {
        UtilityMatrix u = random_utility(rng, q);
        if (gamma(u).value < 0) return u;
    }
}

Sequence random_sequence(std::mt19937& rng, int n, int q) {
    std::uniform_int_distribution<int> sym(0, q - 1);
    std::vector<int> s(n);
    for (auto& v : s) v = sym(rng);
    return Sequence(std::move(s), q);
}

}  // namespace

SuiteResult verify_theorem1(int threads) {
    SuiteResult s{"theorem1", {}};
    const Distribution p3 = Distribution::binary(Rational(3, 10));
    const Distribution p5 = Distribution::binary(Rational(1, 2));
    const std::vector<std::pair<std::string, UtilityMatrix>> utils = {
        {"U(0,1)=1,U(1,0)=-1", UtilityMatrix::binary(1, -1)},
        {"U(0,1)=1,U(1,0)=0", UtilityMatrix::binary(1, 0)},
    };
    for (const auto& [label, u] : utils) {
        for (const auto& p : {p3, p5}) {
            bool all_positive = true;
            std::ostringstream detail;
            for (int n = 1; n <= 4; ++n) {
                const BruteForceResult r = brute_force_min_error(n, p, u, 0, threads);
                detail << "n=" << n << ": " << rstr(r.min_error) << "  ";
                if (r.min_error <= 0) all_positive = false;
            }
            add(s, "min worst-case error > 0 for " + label + ", p=" + rstr(p[0]),
                all_positive, detail.str());
        }
    }
    const UtilityMatrix neg = UtilityMatrix::binary(-1, -2);
    for (int n = 1; n <= 4; ++n) {
        const BruteForceResult r = brute_force_min_error(n, p3, neg, 0, threads);
        const bool identity_witness =
            r.min_error == 0 && static_cast<int>(r.witness_image.size()) == (1 << n);
        add(s, "all-negative utility, n=" + std::to_string(n) +
               ": zero error with identity-decoder witness",
            identity_witness, "min=" + rstr(r.min_error) + " |image|=" +
                              std::to_string(r.witness_image.size()));
    }
    return s;
}

SuiteResult verify_independent_set(int threads) {
    (void)threads;
    SuiteResult s{"independent_set", {}};
    std::mt19937 rng(20240817);
    const Distribution p = Distribution::binary(Rational(1, 2));
    for (int n = 2; n <= 6; ++n) {
        int failures = 0;
        for (int trial = 0; trial < 200; ++trial) {
            const UtilityMatrix u = random_utility(rng, 2);
            std::vector<Sequence> image;
            for (int idx = 0; idx < (1 << n); ++idx) {
                if (rng() & 1) {
                    std::vector<int> syms(n);
                    for (int k = 0; k < n; ++k) syms[k] = (idx >> (n - 1 - k)) & 1;
                    image.emplace_back(std::move(syms), 2);
                }
            }
            if (image.empty()) image.push_back(random_sequence(rng, n, 2));
            const ReceiverStrategy g = ReceiverStrategy::from_sequences(std::move(image));
            EvalOptions opts;
            opts.collect_sets = true;
            const GameOutcome out = evaluate(g, u, p, 0, TieRule::worst_case(0), opts);
            if (!is_independent_set(out.recovered, u)) ++failures;
        }
        add(s, "exact-recovery set independent in the sender graph, n=" + std::to_string(n),
            failures == 0, failures ? std::to_string(failures) + " violations" : "200 strategies");
    }
    return s;
}

namespace {

// Integer-utility oracle: counts edges by scanning whole type classes.
DegreeReport degree_counts_bruteforce(const TypeVector& p1, const TypeVector& p2,
                                      const GraphSpec& spec) {
    const Sequence x0 = lex_min_of_class(p1);
    const Sequence y0 = lex_min_of_class(p2);
    DegreeReport r{0, 0};
    auto has_edge = [&](const Sequence& from, const Sequence& to) {
        if (spec.variant == GraphSpec::Variant::undirected)
            return from == to ? false : adjacent(from, to, spec.u);
        return directed_edge(from, to, spec.u, spec.delta);
    };
    for (const auto& y : type_class_members(p2))
        if (has_edge(x0, y)) ++r.delta_out;
    for (const auto& x : type_class_members(p1))
        if (has_edge(x, y0)) ++r.delta_in;
    return r;
}

}  // namespace

SuiteResult verify_biregular(int threads) {
    (void)threads;
    SuiteResult s{"biregular", {}};
    const std::vector<std::pair<std::string, UtilityMatrix>> utils2 = {
        {"binary (1,-2)", UtilityMatrix::binary(1, -2)},
        {"binary (2,-1)", UtilityMatrix::binary(2, -1)},
    };
    const std::vector<std::pair<std::string, UtilityMatrix>> utils3 = {
        {"ternary mixed",
         UtilityMatrix({{0, 1, 1}, {-4, 0, 1}, {-4, -4, 0}})},
        {"ternary positive-heavy",
         UtilityMatrix({{0, 2, -1}, {1, 0, -3}, {2, -2, 0}})},
    };
    for (int q = 2; q <= 3; ++q) {
        const auto& utils = q == 2 ? utils2 : utils3;
        for (const auto& [label, u] : utils) {
            bool identity_ok = true;
            std::string first_bad;
            for (long long n = 2; n <= 10 && identity_ok; ++n) {
                const auto types = enumerate_types(n, q);
                for (const auto& variant :
                     {GraphSpec::undirected(u, n), GraphSpec::directed(u, n, Rational(1, 10))}) {
                    for (const auto& t1 : types) {
                        for (const auto& t2 : types) {
                            const DegreeReport r = degree_counts(t1, t2, variant);
                            if (r.delta_out * type_class_size(t1) !=
                                r.delta_in * type_class_size(t2)) {
                                identity_ok = false;
                                first_bad = "n=" + std::to_string(n);
                                break;
                            }
                        }
                        if (!identity_ok) break;
                    }
                    if (!identity_ok) break;
                }
            }
            add(s, "biregularity identity, q=" + std::to_string(q) + ", n<=10, " + label,
                identity_ok, first_bad);

            bool brute_ok = true;
            for (long long n = 2; n <= 8 && brute_ok; ++n) {
                const auto types = enumerate_types(n, q);
                for (const auto& variant :
                     {GraphSpec::undirected(u, n), GraphSpec::directed(u, n, Rational(1, 10))}) {
                    for (const auto& t1 : types) {
                        for (const auto& t2 : types) {
                            const DegreeReport fast = degree_counts(t1, t2, variant);
                            const DegreeReport slow = degree_counts_bruteforce(t1, t2, variant);
                            if (fast.delta_out != slow.delta_out ||
                                fast.delta_in != slow.delta_in) {
                                brute_ok = false;
                                break;
                            }
                        }
                        if (!brute_ok) break;
                    }
                    if (!brute_ok) break;
                }
            }
            add(s, "degree counts match exhaustive counting, q=" + std::to_string(q) +
                   ", n<=8, " + label,
                brute_ok);
        }
    }

    // Positive in/out degrees between typical classes close enough to the
    // source, for a utility with a nonnegative cycle.
    {
        const UtilityMatrix u = UtilityMatrix::binary(1, 0);  // gamma = 1 > 0
        const long long n = 20;
        const Rational delta(1, 20);
        const GraphSpec spec = GraphSpec::directed(u, n, delta);
        bool positive = true;
        for (long long a = 9; a <= 11; ++a) {
            for (long long b = 9; b <= 11; ++b) {
                const DegreeReport r =
                    degree_counts(TypeVector({a, n - a}), TypeVector({b, n - b}), spec);
                if (r.delta_out <= 0 || r.delta_in <= 0) positive = false;
            }
        }
        add(s, "positive degrees between typical classes for a nonnegative-cycle utility",
            positive);
    }
    return s;
}

SuiteResult verify_engine_equiv(int threads) {
    SuiteResult s{"engine_equiv", {}};
    std::mt19937 rng(911);
    const std::vector<Distribution> dists2 = {Distribution::binary(Rational(3, 10)),
                                              Distribution::binary(Rational(1, 2))};
    const std::vector<Distribution> dists3 = {
        Distribution({Rational(1, 5), Rational(2, 5), Rational(2, 5)})};
    int checked = 0;
    bool all_ok = true;
    std::string first_bad;
    for (int q = 2; q <= 3; ++q) {
        const int nmax = q == 2 ? 10 : 7;
        for (int n = 4; n <= nmax; ++n) {
            for (int trial = 0; trial < 4; ++trial) {
                const UtilityMatrix u = random_utility(rng, q);
                const auto types = enumerate_types(n, q);
                std::vector<TypeVector> classes;
                for (const auto& t : types)
                    if (rng() % 3 == 0) classes.push_back(t);
                if (classes.empty()) classes.push_back(types[rng() % types.size()]);
                const ReceiverStrategy g = ReceiverStrategy::from_type_classes(classes);
                const Distribution& p =
                    q == 2 ? dists2[trial % dists2.size()] : dists3[0];
                const Rational d = trial % 2 == 0 ? Rational(0) : Rational(1, 5);

                EvalOptions opts;
                opts.collect_sets = true;
                opts.threads = threads;
                const GameOutcome seq = evaluate(g, u, p, d, TieRule::worst_case(d), opts);
                const TypeOutcome typ =
                    type_level_evaluate(g, u, p, d, TieRule::worst_case(d), threads);

                bool ok = seq.error_prob == typ.error_prob;
                // Per-type recovery must agree with the sequence-level set.
                std::map<std::vector<long long>, long long> rec_count;
                for (const auto& x : seq.recovered) ++rec_count[empirical_type(x).counts];
                for (std::size_t ti = 0; ti < typ.types.size() && ok; ++ti) {
                    const long long members =
                        type_class_size(typ.types[ti]).convert_to<long long>();
                    const long long got = rec_count.count(typ.types[ti].counts)
                                              ? rec_count[typ.types[ti].counts]
                                              : 0;
                    ok = typ.recovered[ti] ? got == members : got == 0;
                }
                if (ok && typ.a_exact && typ.rate_bits)
                    ok = BigInt(typ.a_lower_size) == seq.a_size;
                if (ok && typ.a_exact && !typ.rate_bits) ok = seq.a_size == 0;
                if (ok) ok = typ.coop_recovered_prob == seq.coop_recovered_prob;
                ++checked;
                if (!ok && all_ok) {
                    all_ok = false;
                    first_bad = "q=" + std::to_string(q) + " n=" + std::to_string(n) +
                                " trial=" + std::to_string(trial);
                }
            }
        }
    }
    add(s, "sequence and type engines agree exactly", all_ok,
        all_ok ? std::to_string(checked) + " instances" : first_bad);
    return s;
}

SuiteResult verify_time_share(int threads) {
    SuiteResult s{"time_share", {}};
    std::mt19937 rng(424242);
    const Distribution p = Distribution::binary(Rational(3, 10));
    const int n1 = 3, n2 = 3;
    EvalOptions opts;
    opts.collect_sets = true;
    opts.threads = threads;

    auto random_strategy = [&](int n) {
        std::vector<Sequence> image;
        for (int idx = 0; idx < (1 << n); ++idx)
            if (rng() & 1) {
                std::vector<int> syms(n);
                for (int k = 0; k < n; ++k) syms[k] = (idx >> (n - 1 - k)) & 1;
                image.emplace_back(std::move(syms), 2);
            }
        if (image.empty()) image.push_back(random_sequence(rng, n, 2));
        return ReceiverStrategy::from_sequences(std::move(image));
    };

    const std::vector<std::pair<std::string, UtilityMatrix>> utils = {
        {"(1,-2)", UtilityMatrix::binary(1, -2)},
        {"(-1,-1)", UtilityMatrix::binary(-1, -1)},
        {"(1,0)", UtilityMatrix::binary(1, 0)},
    };
    int instance = 0;
    for (const auto& [label, u] : utils) {
        for (int trial = 0; trial < 3; ++trial) {
            const ReceiverStrategy g1 = random_strategy(n1);
            const ReceiverStrategy g2 =
                trial == 0 ? g1
                           : (trial == 1 ? ReceiverStrategy::from_sequences(
                                               {random_sequence(rng, n2, 2)})
                                         : random_strategy(n2));
            const ReceiverStrategy gc = compose_time_share(g1, g2);
            const Rational d = 0;
            const GameOutcome o1 = evaluate(g1, u, p, d, TieRule::worst_case(d), opts);
            const GameOutcome o2 = evaluate(g2, u, p, d, TieRule::worst_case(d), opts);
            const GameOutcome oc = evaluate(gc, u, p, d, TieRule::worst_case(d), opts);

            // A factorizes, so the rate is the block-length-weighted mean.
            bool ok = oc.a_size == o1.a_size * o2.a_size;
            std::set<std::vector<int>> product;
            for (const auto& a : o1.reconstructions)
                for (const auto& b : o2.reconstructions) {
                    std::vector<int> syms = a.symbols;
                    syms.insert(syms.end(), b.symbols.begin(), b.symbols.end());
                    product.insert(std::move(syms));
                }
            if (ok) {
                std::set<std::vector<int>> got;
                for (const auto& y : oc.reconstructions) got.insert(y.symbols);
                ok = got == product;
            }
            if (ok) ok = oc.error_prob <= o1.error_prob + o2.error_prob;
            if (ok) {
                // D contains the product of the block recovery sets.
                std::set<std::vector<int>> rec;
                for (const auto& x : oc.recovered) rec.insert(x.symbols);
                for (const auto& a : o1.recovered) {
                    for (const auto& b : o2.recovered) {
                        std::vector<int> syms = a.symbols;
                        syms.insert(syms.end(), b.symbols.begin(), b.symbols.end());
                        if (!rec.count(syms)) {
                            ok = false;
                            break;
                        }
                    }
                    if (!ok) break;
                }
            }
            add(s, "time-share instance " + std::to_string(instance++) + " (U=" + label + ")",
                ok,
                "A1=" + o1.a_size.str() + " A2=" + o2.a_size.str() + " A=" + oc.a_size.str());
        }
    }

    // d > 0: only the containments hold (A may then exceed the product).
    {
        const UtilityMatrix u = UtilityMatrix::binary(1, -2);
        const ReceiverStrategy g1 = random_strategy(n1);
        const ReceiverStrategy g2 = random_strategy(n2);
        const ReceiverStrategy gc = compose_time_share(g1, g2);
        const Rational d(1, 3);
        const GameOutcome o1 = evaluate(g1, u, p, d, TieRule::worst_case(d), opts);
        const GameOutcome o2 = evaluate(g2, u, p, d, TieRule::worst_case(d), opts);
        const GameOutcome oc = evaluate(gc, u, p, d, TieRule::worst_case(d), opts);
        bool ok = oc.error_prob <= o1.error_prob + o2.error_prob;
        std::set<std::vector<int>> rec;
        for (const auto& x : oc.recovered) rec.insert(x.symbols);
        for (const auto& a : o1.recovered)
            for (const auto& b : o2.recovered) {
                std::vector<int> syms = a.symbols;
                syms.insert(syms.end(), b.symbols.begin(), b.symbols.end());
                if (!rec.count(syms)) ok = false;
            }
        add(s, "time-share containments at d=1/3", ok);
    }
    return s;
}

SuiteResult verify_dbar_anchors(int threads) {
    (void)threads;
    SuiteResult s{"dbar_anchors", {}};
    const std::vector<std::pair<std::string, UtilityMatrix>> utils = {
        {"(1,-2)", UtilityMatrix::binary(1, -2)},
        {"(-2,1)", UtilityMatrix::binary(-2, 1)},
        {"(-1,-1)", UtilityMatrix::binary(-1, -1)},
        {"(1/2,-1)", UtilityMatrix::binary(Rational(1, 2), -1)},
    };
    for (const auto& [label, u] : utils) {
        bool zero_ok = true, pd_ok = true, rd_ok = true;
        for (int pi = 1; pi <= 4; ++pi) {
            const Rational p(pi, 10);
            const Distribution px = Distribution::binary(p);
            for (const Rational& d : {Rational(1, 20), Rational(1, 10)}) {
                if (d > p) continue;
                {
                    const DbarResult r = dbar({px, px, RateSpec::entropy_of_source(), u,
                                               DbarProblem::Regime::binary_exact});
                    if (!r.exact || r.value != 0) zero_ok = false;
                }
                {
                    const Distribution p0 = Distribution::binary(p + d);
                    const DbarResult r = dbar({px, p0, RateSpec::entropy_of_output(), u,
                                               DbarProblem::Regime::binary_exact});
                    if (!r.exact || r.value != d) pd_ok = false;
                }
                {
                    const Rational pstar = (p - d) / (1 - 2 * d);
                    const Distribution p0 = Distribution::binary(pstar);
                    const DbarResult r = dbar({px, p0, RateSpec::rate_distortion(d), u,
                                               DbarProblem::Regime::binary_exact});
                    if (!r.exact || r.value != d) rd_ok = false;
                }
            }
        }
        add(s, "dbar(P0=P_X, R=H(p)) = 0 exactly, U=" + label, zero_ok);
        add(s, "dbar(P0(0)=p+d, R=H(p+d)) = d exactly, U=" + label, pd_ok);
        add(s, "dbar(P0=p*, R=R(d)) = d exactly, U=" + label, rd_ok);
    }
    return s;
}

SuiteResult verify_lemma_binary_decomp(int threads) {
    (void)threads;
    SuiteResult s{"lemma_binary_decomp", {}};
    const std::vector<std::pair<std::string, UtilityMatrix>> utils = {
        {"(1,-2)", UtilityMatrix::binary(1, -2)},
        {"(-3,1)", UtilityMatrix::binary(-3, 1)},
        {"(2,5)", UtilityMatrix::binary(2, 5)},
    };
    for (const auto& [label, u] : utils) {
        bool ok = true;
        for (int n = 1; n <= 10 && ok; ++n) {
            for (long long xi = 0; xi < (1LL << n) && ok; ++xi) {
                for (long long yi = 0; yi < (1LL << n); ++yi) {
                    // Counts straight from the bit patterns; bit 0 encodes
                    // symbol 1 so zeros are the unset bits.
                    long long k = 0, m = 0, zy = 0, zx = 0;
                    for (int b = 0; b < n; ++b) {
                        const int xs = (xi >> b) & 1, ys = (yi >> b) & 1;
                        zx += xs == 0;
                        zy += ys == 0;
                        k += ys == 0 && xs == 1;
                        m += ys == 1 && xs == 0;
                    }
                    Rational expected;
                    if (zy <= zx)
                        expected = (u(1, 0) * (zx - zy) + (u(1, 0) + u(0, 1)) * k) / n;
                    else
                        expected = (u(0, 1) * (zy - zx) + (u(1, 0) + u(0, 1)) * m) / n;
                    std::vector<int> xsyms(n), ysyms(n);
                    for (int b = 0; b < n; ++b) {
                        xsyms[b] = (xi >> b) & 1;
                        ysyms[b] = (yi >> b) & 1;
                    }
                    if (block_utility(Sequence(ysyms, 2), Sequence(xsyms, 2), u) != expected) {
                        ok = false;
                        break;
                    }
                }
            }
        }
        add(s, "binary utility decomposition matches on all pairs n<=10, U=" + label, ok);
    }
    return s;
}

namespace {

// A positive product over a cycle of distinct symbols exists exactly when
// the off-diagonal support digraph (arc i -> j when W(i,j) > 0) has a cycle.
bool has_positive_cycle_product(const JointType& w) {
    const int q = w.q();
    std::vector<int> colour(q, 0);
    auto dfs = [&](auto&& self, int v) -> bool {
        colour[v] = 1;
        for (int nxt = 0; nxt < q; ++nxt) {
            if (nxt == v || w(v, nxt) == 0) continue;
            if (colour[nxt] == 1) return true;
            if (colour[nxt] == 0 && self(self, nxt)) return true;
        }
        colour[v] = 2;
        return false;
    };
    for (int v = 0; v < q; ++v)
        if (colour[v] == 0 && dfs(dfs, v)) return true;
    return false;
}

}  // namespace

SuiteResult verify_no_positive_cycle(int threads) {
    (void)threads;
    SuiteResult s{"no_positive_cycle", {}};

    // Joint types with equal marginals have nonpositive utility, zero only
    // on the diagonal, whenever gamma < 0.
    std::mt19937 rng(7);
    for (int q = 2; q <= 3; ++q) {
        const UtilityMatrix u1 = q == 2
                                     ? UtilityMatrix::binary(1, -2)
                                     : UtilityMatrix({{0, 1, 1}, {-4, 0, 1}, {-4, -4, 0}});
        const UtilityMatrix u2 = random_gamma_negative_utility(rng, q);
        for (const auto& [label, u] :
             std::vector<std::pair<std::string, UtilityMatrix>>{{"fixed", u1}, {"random", u2}}) {
            bool ok = true;
            for (long long n = 2; n <= 8 && ok; ++n) {
                for (const auto& t : enumerate_types(n, q)) {
                    enumerate_joint_types(t, t, [&](const JointType& w) {
                        const Rational val = block_utility(w, u);
                        bool diag = true;
                        for (int i = 0; i < q && diag; ++i)
                            for (int j = 0; j < q && diag; ++j)
                                if (i != j && w(i, j) != 0) diag = false;
                        if (val > 0 || (val == 0) != diag) ok = false;
                        return ok;
                    });
                    if (!ok) break;
                }
            }
            add(s, "equal-marginal utility nonpositive, zero iff diagonal (q=" +
                   std::to_string(q) + ", " + label + ")",
                ok);
        }
    }

    // Transportation maximizers support no cycle of positive entries.
    bool cyc_ok = true;
    for (int q = 2; q <= 4 && cyc_ok; ++q) {
        for (int trial = 0; trial < 12 && cyc_ok; ++trial) {
            const UtilityMatrix u = random_gamma_negative_utility(rng, q);
            const long long n = 6 + rng() % 7;
            std::vector<long long> a(q, 0), b(q, 0);
            for (long long i = 0; i < n; ++i) ++a[rng() % q];
            for (long long i = 0; i < n; ++i) ++b[rng() % q];
            const TypeLevelBest tb = type_level_best(TypeVector(a), TypeVector(b), u);
            if (has_positive_cycle_product(tb.argmax_distortion) ||
                has_positive_cycle_product(tb.argmin_distortion))
                cyc_ok = false;
        }
    }
    add(s, "utility-maximizing transports carry no positive cycle (q<=4)", cyc_ok);
    return s;
}

std::vector<std::string> verify_suite_names() {
    return {"theorem1",    "independent_set", "biregular",
            "engine_equiv", "time_share",      "dbar_anchors",
            "lemma_binary_decomp", "no_positive_cycle"};
}

SuiteResult run_verify_suite(const std::string& name, int threads) {
    if (name == "theorem1") return verify_theorem1(threads);
    if (name == "independent_set") return verify_independent_set(threads);
    if (name == "biregular") return verify_biregular(threads);
    if (name == "engine_equiv") return verify_engine_equiv(threads);
    if (name == "time_share") return verify_time_share(threads);
    if (name == "dbar_anchors") return verify_dbar_anchors(threads);
    if (name == "lemma_binary_decomp") return verify_lemma_binary_decomp(threads);
    if (name == "no_positive_cycle") return verify_no_positive_cycle(threads);
    throw std::invalid_argument("unknown verify suite: " + name);
}

}  // namespace stratcomm
