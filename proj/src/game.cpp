#include "stratcomm/game.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <thread>

namespace stratcomm {

namespace {

void check_same_shape(const std::vector<Sequence>& seqs) {
    for (const auto& s : seqs)
        if (s.n() != seqs.front().n() || s.q != seqs.front().q)
            throw std::invalid_argument("ReceiverStrategy: image sequences disagree in n or q");
}

std::vector<Sequence> sorted_unique(std::vector<Sequence> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

}  // namespace

ReceiverStrategy ReceiverStrategy::from_sequences(std::vector<Sequence> image,
                                                  std::optional<Sequence> anchor) {
    if (image.empty()) throw std::invalid_argument("ReceiverStrategy: image must be nonempty");
    check_same_shape(image);
    ReceiverStrategy g;
    g.n_ = image.front().n();
    g.q_ = image.front().q;
    image = sorted_unique(std::move(image));
    g.anchor_ = anchor ? *anchor : image.front();
    g.image_ = std::move(image);
    if (!g.image_contains(g.anchor_))
        throw std::invalid_argument("ReceiverStrategy: anchor outside the image");
    return g;
}

ReceiverStrategy ReceiverStrategy::from_type_classes(std::vector<TypeVector> classes,
                                                     std::optional<Sequence> anchor) {
    if (classes.empty()) throw std::invalid_argument("ReceiverStrategy: image must be nonempty");
    for (const auto& t : classes)
        if (t.q() != classes.front().q() || t.n() != classes.front().n())
            throw std::invalid_argument("ReceiverStrategy: type classes disagree in n or q");
    std::sort(classes.begin(), classes.end());
    classes.erase(std::unique(classes.begin(), classes.end()), classes.end());
    ReceiverStrategy g;
    g.n_ = classes.front().n();
    g.q_ = classes.front().q();
    // Lexicographic minimum over the union: each class's minimum is its
    // nondecreasing arrangement.
    Sequence lex_min = lex_min_of_class(classes.front());
    for (const auto& t : classes) {
        Sequence cand = lex_min_of_class(t);
        if (cand < lex_min) lex_min = cand;
    }
    g.image_ = std::move(classes);
    g.anchor_ = anchor ? *anchor : lex_min;
    if (!g.image_contains(g.anchor_))
        throw std::invalid_argument("ReceiverStrategy: anchor outside the image");
    return g;
}

const std::vector<TypeVector>& ReceiverStrategy::classes() const {
    if (!is_type_union()) throw std::logic_error("ReceiverStrategy: not a type-class image");
    return std::get<std::vector<TypeVector>>(image_);
}

const std::vector<Sequence>& ReceiverStrategy::sequences() const {
    if (is_type_union()) throw std::logic_error("ReceiverStrategy: not an explicit image");
    return std::get<std::vector<Sequence>>(image_);
}

BigInt ReceiverStrategy::image_size() const {
    if (!is_type_union()) return sequences().size();
    BigInt total = 0;
    for (const auto& t : classes()) total += type_class_size(t);
    return total;
}

bool ReceiverStrategy::image_contains(const Sequence& x) const {
    if (x.n() != n_ || x.q != q_) return false;
    if (is_type_union()) {
        const TypeVector t = empirical_type(x);
        for (const auto& c : classes())
            if (c == t) return true;
        return false;
    }
    const auto& seqs = sequences();
    return std::binary_search(seqs.begin(), seqs.end(), x);
}

std::vector<Sequence> ReceiverStrategy::expanded_image() const {
    if (!is_type_union()) return sequences();
    std::vector<Sequence> out;
    for (const auto& t : classes()) {
        auto members = type_class_members(t);
        out.insert(out.end(), members.begin(), members.end());
    }
    return sorted_unique(std::move(out));
}

Sequence ReceiverStrategy::apply(const Sequence& x) const {
    return image_contains(x) ? x : anchor_;
}

namespace {

// Utilities scaled onto a common integer denominator: the per-sequence scan
// then runs on 64-bit integers without losing exactness. Falls back to the
// rational path when the entries do not fit comfortably.
struct FastUtility {
    bool valid = false;
    std::vector<long long> num;  // q*q scaled entries
    int q = 0;

    explicit FastUtility(const UtilityMatrix& u) : q(u.q()) {
        BigInt l = 1;
        for (int i = 0; i < q; ++i)
            for (int j = 0; j < q; ++j)
                l = boost::multiprecision::lcm(l, BigInt(denominator(u(i, j))));
        if (l > (1LL << 24)) return;
        num.resize(q * q);
        for (int i = 0; i < q; ++i) {
            for (int j = 0; j < q; ++j) {
                const BigInt v = numerator(u(i, j)) * (l / denominator(u(i, j)));
                if (v > (1LL << 40) || v < -(1LL << 40)) return;
                num[i * q + j] = v.convert_to<long long>();
            }
        }
        valid = true;
    }
};

// Shared inner loop of best_response and evaluate: the image must be sorted
// lexicographically so "first found" doubles as "lexicographically smallest".
const Sequence& choose_reply(const std::vector<Sequence>& image, const Sequence& x,
                             const UtilityMatrix& u, const TieRule& tie,
                             Rational* min_image_distance = nullptr) {
    Rational best_util;
    std::vector<std::size_t> maximizers;
    for (std::size_t k = 0; k < image.size(); ++k) {
        const Rational v = block_utility(image[k], x, u);
        if (maximizers.empty() || v > best_util) {
            best_util = v;
            maximizers.assign(1, k);
        } else if (v == best_util) {
            maximizers.push_back(k);
        }
        if (min_image_distance) {
            const Rational h = hamming(image[k], x);
            if (k == 0 || h < *min_image_distance) *min_image_distance = h;
        }
    }
    if (tie.kind == TieRule::Kind::worst_case) {
        for (std::size_t k : maximizers)
            if (hamming(image[k], x) > tie.threshold) return image[k];
    }
    return image[maximizers.front()];
}

// Integer twin of choose_reply: returns the image index of the chosen reply
// plus the mismatch counts needed by the evaluation loop.
struct FastReply {
    std::size_t chosen;
    long long chosen_mismatches;
    long long min_image_mismatches;
};

FastReply fast_choose_reply(const std::vector<Sequence>& image, const FastUtility& fu,
                            const std::vector<int>& x, const TieRule& tie, long long n) {
    // worst_case threshold t: mism/n > t  <=>  mism * den(t) > num(t) * n.
    const bool pessimistic = tie.kind == TieRule::Kind::worst_case;
    const long long tnum =
        pessimistic ? numerator(tie.threshold).convert_to<long long>() : 0;
    const long long tden =
        pessimistic ? denominator(tie.threshold).convert_to<long long>() : 1;

    long long best = 0;
    std::size_t first_max = 0;
    std::size_t chosen = image.size();
    long long chosen_mism = 0;
    long long first_mism = 0;
    long long min_mism = n + 1;
    bool have = false;
    for (std::size_t k = 0; k < image.size(); ++k) {
        const auto& y = image[k].symbols;
        long long s = 0;
        long long mism = 0;
        for (long long pos = 0; pos < n; ++pos) {
            s += fu.num[y[pos] * fu.q + x[pos]];
            mism += y[pos] != x[pos];
        }
        min_mism = std::min(min_mism, mism);
        if (!have || s > best) {
            best = s;
            first_max = k;
            first_mism = mism;
            have = true;
            chosen = image.size();  // reset the pessimistic pick
        }
        if (pessimistic && s == best && chosen == image.size() && mism * tden > tnum * n) {
            chosen = k;
            chosen_mism = mism;
        }
    }
    if (chosen == image.size()) {
        chosen = first_max;
        chosen_mism = first_mism;
    }
    return {chosen, chosen_mism, min_mism};
}

std::vector<int> index_to_symbols(long long idx, int n, int q) {
    std::vector<int> s(n);
    for (int k = n - 1; k >= 0; --k) {
        s[k] = static_cast<int>(idx % q);
        idx /= q;
    }
    return s;
}

}  // namespace

Sequence best_response(const ReceiverStrategy& g, const Sequence& x, const UtilityMatrix& u,
                       const TieRule& tie) {
    if (x.n() != g.n() || x.q != g.q())
        throw std::invalid_argument("best_response: sequence does not match strategy");
    const auto image = g.expanded_image();
    return choose_reply(image, x, u, tie);
}

GameOutcome evaluate(const ReceiverStrategy& g, const UtilityMatrix& u, const Distribution& p,
                     const Rational& d, const TieRule& tie, const EvalOptions& opts) {
    if (u.q() != g.q() || p.q() != g.q())
        throw std::invalid_argument("evaluate: alphabet mismatch");
    if (d < 0 || d > 1) throw std::invalid_argument("evaluate: d outside [0,1]");
    const int n = static_cast<int>(g.n());
    const int q = g.q();
    long long total = 1;
    for (int k = 0; k < n; ++k) {
        total *= q;
        if (total > opts.cap)
            throw std::overflow_error(
                "evaluate: q^n exceeds the sequence-engine cap; use the type-level engine");
    }

    const std::vector<Sequence> image = g.expanded_image();

    struct Partial {
        Rational recovered_prob = 0;
        Rational coop_prob = 0;
        std::set<std::vector<int>> a;
        std::set<std::vector<int>> composite_image;
        std::vector<Sequence> recovered;
        std::vector<Sequence> reconstructions;
    };

    const int nthreads = std::max(1, opts.threads);
    std::vector<Partial> parts(nthreads);
    std::vector<std::thread> workers;
    const long long chunk = (total + nthreads - 1) / nthreads;
    for (int t = 0; t < nthreads; ++t) {
        const long long lo = t * chunk;
        const long long hi = std::min(total, lo + chunk);
        if (lo >= hi) break;
        workers.emplace_back([&, t, lo, hi] {
            Partial& part = parts[t];
            const FastUtility fu(u);
            const long long dnum = numerator(d).convert_to<long long>();
            const long long dden = denominator(d).convert_to<long long>();
            std::map<std::vector<long long>, Rational> prob_cache;  // per type
            auto prob_of = [&](const Sequence& x) -> const Rational& {
                const TypeVector tv = empirical_type(x);
                auto it = prob_cache.find(tv.counts);
                if (it == prob_cache.end())
                    it = prob_cache.emplace(tv.counts, sequence_prob(x, p)).first;
                return it->second;
            };
            for (long long idx = lo; idx < hi; ++idx) {
                const Sequence x(index_to_symbols(idx, n, q), q);
                if (fu.valid) {
                    const FastReply reply = fast_choose_reply(image, fu, x.symbols, tie, n);
                    const Sequence& y = image[reply.chosen];
                    part.composite_image.insert(y.symbols);
                    if (reply.min_image_mismatches * dden <= dnum * n)
                        part.coop_prob += prob_of(x);
                    if (reply.chosen_mismatches * dden <= dnum * n) {
                        part.recovered_prob += prob_of(x);
                        part.a.insert(y.symbols);
                        if (opts.collect_sets) {
                            part.recovered.push_back(x);
                            part.reconstructions.push_back(y);
                        }
                    }
                    continue;
                }
                Rational min_dist;
                const Sequence& y = choose_reply(image, x, u, tie, &min_dist);
                part.composite_image.insert(y.symbols);
                if (min_dist <= d) part.coop_prob += prob_of(x);
                if (hamming(y, x) <= d) {
                    part.recovered_prob += prob_of(x);
                    part.a.insert(y.symbols);
                    if (opts.collect_sets) {
                        part.recovered.push_back(x);
                        part.reconstructions.push_back(y);
                    }
                }
            }
        });
    }
    for (auto& w : workers) w.join();

    GameOutcome out;
    out.recovered_prob = 0;
    out.coop_recovered_prob = 0;
    std::set<std::vector<int>> a, composite;
    for (auto& part : parts) {
        out.recovered_prob += part.recovered_prob;
        out.coop_recovered_prob += part.coop_prob;
        a.merge(part.a);
        composite.merge(part.composite_image);
        if (opts.collect_sets) {
            out.recovered.insert(out.recovered.end(), part.recovered.begin(),
                                 part.recovered.end());
            for (const auto& r : part.reconstructions) out.reconstructions.push_back(r);
        }
    }
    out.error_prob = 1 - out.recovered_prob;
    out.a_size = a.size();
    out.image_size = composite.size();
    if (out.a_size > 0)
        out.rate_bits = log2_bigint(out.a_size) / n;
    out.image_rate_bits = log2_bigint(out.image_size) / n;
    if (opts.collect_sets) {
        std::sort(out.recovered.begin(), out.recovered.end());
        std::sort(out.reconstructions.begin(), out.reconstructions.end());
        out.reconstructions.erase(
            std::unique(out.reconstructions.begin(), out.reconstructions.end()),
            out.reconstructions.end());
    }
    return out;
}

ReceiverStrategy compose_time_share(const ReceiverStrategy& g1, const ReceiverStrategy& g2) {
    if (g1.q() != g2.q()) throw std::invalid_argument("compose_time_share: alphabet mismatch");
    const auto im1 = g1.expanded_image();
    const auto im2 = g2.expanded_image();
    std::vector<Sequence> image;
    image.reserve(im1.size() * im2.size());
    for (const auto& a : im1) {
        for (const auto& b : im2) {
            std::vector<int> syms = a.symbols;
            syms.insert(syms.end(), b.symbols.begin(), b.symbols.end());
            image.emplace_back(std::move(syms), g1.q());
        }
    }
    std::vector<int> anchor = g1.anchor().symbols;
    anchor.insert(anchor.end(), g2.anchor().symbols.begin(), g2.anchor().symbols.end());
    return ReceiverStrategy::from_sequences(std::move(image), Sequence(anchor, g1.q()));
}

BruteForceResult brute_force_min_error(int n, const Distribution& p, const UtilityMatrix& u,
                                       const Rational& d, int threads) {
    if (p.q() != 2 || u.q() != 2)
        throw std::invalid_argument("brute_force_min_error: binary alphabet only");
    if (n < 1 || n > 4)
        throw std::invalid_argument("brute_force_min_error: n must be in 1..4");
    const int total = 1 << n;

    std::vector<Sequence> seqs;
    seqs.reserve(total);
    for (int idx = 0; idx < total; ++idx) seqs.emplace_back(index_to_symbols(idx, n, 2), 2);

    // Pairwise tables: utility order decides maximizers, distances decide
    // pessimistic errors; probabilities weight the error sum.
    std::vector<std::vector<Rational>> util(total, std::vector<Rational>(total));
    std::vector<std::vector<bool>> far(total, std::vector<bool>(total));
    std::vector<Rational> prob(total);
    for (int x = 0; x < total; ++x) {
        prob[x] = sequence_prob(seqs[x], p);
        for (int y = 0; y < total; ++y) {
            util[y][x] = block_utility(seqs[y], seqs[x], u);
            far[y][x] = hamming(seqs[y], seqs[x]) > d;
        }
    }

    const unsigned long long masks = 1ULL << total;
    struct Partial {
        bool have = false;
        Rational best;
        unsigned long long witness = 0;
    };
    const int nthreads = std::max(1, threads);
    std::vector<Partial> parts(nthreads);
    std::vector<std::thread> workers;
    const unsigned long long chunk = (masks - 1 + nthreads) / nthreads;
    for (int t = 0; t < nthreads; ++t) {
        const unsigned long long lo = 1 + t * chunk;
        const unsigned long long hi = std::min(masks, lo + chunk);
        if (lo >= hi) break;
        workers.emplace_back([&, t, lo, hi] {
            Partial& part = parts[t];
            std::vector<int> members;
            for (unsigned long long mask = lo; mask < hi; ++mask) {
                members.clear();
                for (int y = 0; y < total; ++y)
                    if (mask & (1ULL << y)) members.push_back(y);
                Rational err = 0;
                for (int x = 0; x < total; ++x) {
                    const Rational* best = nullptr;
                    bool any_far = false;
                    for (int y : members) {
                        if (!best || util[y][x] > *best) {
                            best = &util[y][x];
                            any_far = far[y][x];
                        } else if (util[y][x] == *best && far[y][x]) {
                            any_far = true;
                        }
                    }
                    if (any_far) err += prob[x];
                }
                if (!part.have || err < part.best) {
                    part.best = err;
                    part.witness = mask;
                    part.have = true;
                }
            }
        });
    }
    for (auto& w : workers) w.join();

    Partial best;
    for (const auto& part : parts) {
        if (!part.have) continue;
        if (!best.have || part.best < best.best ||
            (part.best == best.best && part.witness < best.witness)) {
            best = part;
        }
    }
    BruteForceResult r;
    r.min_error = best.best;
    for (int y = 0; y < total; ++y)
        if (best.witness & (1ULL << y)) r.witness_image.push_back(seqs[y]);
    return r;
}

}  // namespace stratcomm
