#include "stratcomm/type_engine.hpp"

#include <algorithm>
#include <set>
#include <thread>

namespace stratcomm {

TypeOutcome type_level_evaluate(const ReceiverStrategy& g, const UtilityMatrix& u,
                                const Distribution& p, const Rational& d, const TieRule& tie,
                                int threads) {
    if (!g.is_type_union())
        throw std::invalid_argument("type_level_evaluate: image must be a union of type classes");
    if (u.q() != g.q() || p.q() != g.q())
        throw std::invalid_argument("type_level_evaluate: alphabet mismatch");
    if (tie.kind != TieRule::Kind::worst_case || tie.threshold != d)
        throw std::invalid_argument(
            "type_level_evaluate: requires the worst_case tie rule at threshold d");

    const auto& classes = g.classes();
    const long long n = g.n();

    TypeOutcome out;
    out.types = enumerate_types(n, g.q());
    const std::size_t ntypes = out.types.size();
    out.recovered.assign(ntypes, 0);

    struct PerType {
        Rational prob;
        bool recovered = false;
        bool coop = false;
        bool identity = false;               // unique diagonal maximizer
        std::vector<std::size_t> max_classes;  // indices into `classes`
    };
    std::vector<PerType> rows(ntypes);

    const int nthreads = std::max(1, threads);
    std::vector<std::thread> workers;
    const std::size_t chunk = (ntypes + nthreads - 1) / nthreads;
    for (int t = 0; t < nthreads; ++t) {
        const std::size_t lo = t * chunk;
        const std::size_t hi = std::min(ntypes, lo + chunk);
        if (lo >= hi) break;
        workers.emplace_back([&, lo, hi] {
            for (std::size_t ti = lo; ti < hi; ++ti) {
                const TypeVector& src = out.types[ti];
                PerType& row = rows[ti];
                row.prob = type_class_prob(src, p);

                Rational best_util;
                for (std::size_t c = 0; c < classes.size(); ++c) {
                    const Rational v = type_level_max_utility(src, classes[c], u);
                    if (row.max_classes.empty() || v > best_util) {
                        best_util = v;
                        row.max_classes.assign(1, c);
                    } else if (v == best_util) {
                        row.max_classes.push_back(c);
                    }
                    if (!row.coop && min_distance_between_classes(src, classes[c]) <= d)
                        row.coop = true;
                }
                // Pessimistic recovery: some maximizer beyond d means the
                // type errs; distortion zero across the optimal face means
                // the unique maximizer is the identity.
                Rational worst_dist = 0;
                bool first = true;
                for (std::size_t c : row.max_classes) {
                    const Rational wd = type_level_worst_distortion(src, classes[c], u);
                    if (first || wd > worst_dist) worst_dist = wd;
                    first = false;
                }
                row.recovered = worst_dist <= d;
                row.identity = row.recovered && worst_dist == 0;
            }
        });
    }
    for (auto& w : workers) w.join();

    out.recovered_prob = 0;
    out.coop_recovered_prob = 0;
    std::set<std::size_t> lower, upper, reachable;
    bool all_identity = true;
    for (std::size_t ti = 0; ti < ntypes; ++ti) {
        const PerType& row = rows[ti];
        out.recovered[ti] = row.recovered ? 1 : 0;
        if (row.coop) out.coop_recovered_prob += row.prob;
        for (std::size_t c : row.max_classes) reachable.insert(c);
        if (!row.recovered) continue;
        out.recovered_prob += row.prob;
        if (row.identity)
            lower.insert(row.max_classes.front());
        else
            all_identity = false;
        for (std::size_t c : row.max_classes) upper.insert(c);
    }
    out.error_prob = 1 - out.recovered_prob;

    out.a_exact = all_identity;
    out.a_lower_size = 0;
    out.a_upper_size = 0;
    for (std::size_t c : lower) {
        out.a_lower_classes.push_back(classes[c]);
        out.a_lower_size += type_class_size(classes[c]);
    }
    for (std::size_t c : upper) {
        out.a_upper_classes.push_back(classes[c]);
        out.a_upper_size += type_class_size(classes[c]);
    }
    if (out.a_exact || lower == upper) {
        out.a_exact = true;
        if (out.a_lower_size > 0)
            out.rate_bits = log2_bigint(out.a_lower_size) / static_cast<double>(n);
    } else {
        if (out.a_lower_size > 0)
            out.rate_lower_bits = log2_bigint(out.a_lower_size) / static_cast<double>(n);
        if (out.a_upper_size > 0)
            out.rate_upper_bits = log2_bigint(out.a_upper_size) / static_cast<double>(n);
    }
    out.reachable_size = 0;
    for (std::size_t c : reachable) {
        out.reachable_classes.push_back(classes[c]);
        out.reachable_size += type_class_size(classes[c]);
    }
    out.reachable_rate_bits = log2_bigint(out.reachable_size) / static_cast<double>(n);
    return out;
}

}  // namespace stratcomm
