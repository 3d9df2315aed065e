#include "stratcomm/rate_region.hpp"

#include <algorithm>
#include <cmath>

#include "stratcomm/transport.hpp"

namespace stratcomm {

namespace {

RegionReport classify_binary(const UtilityMatrix& u, const Distribution& p, const Rational& d) {
    RegionReport r;
    r.capacity_bits = 1;
    const Rational sum = u.binary_sum();
    const Rational p0 = p[0];
    const double hp = entropy(p);

    if (d == 0) {
        if (sum >= 0) {
            r.emptiness = RegionEmptiness::empty;
            r.strong_converse = true;
            r.strong_converse_condition =
                "U(0,1) + U(1,0) >= 0: worst-case error tends to one for every strategy sequence";
            return r;
        }
        r.emptiness = RegionEmptiness::nonempty;
        r.r_inf = {RateBound::Kind::exact, hp, "lossless, binary: R_inf = H(p)"};
        if (u(0, 1) < 0 && u(1, 0) < 0) {
            r.r_sup = {RateBound::Kind::exact, 1.0, "both entries negative: R = [H(p), 1]"};
            return r;
        }
        // a = 0 sends bp/a to infinity; the bound then saturates at H(1/2).
        const Rational ratio =
            u.binary_a() == 0
                ? Rational(1, 2)
                : std::min(Rational(u.binary_b() * p0 / u.binary_a()), Rational(1, 2));
        r.r_sup = {RateBound::Kind::upper_bound, binary_entropy(to_double(ratio)),
                   "one entry nonnegative: R_sup <= H(min{bp/a, 1/2})"};
        if (u(0, 1) >= 0 && u(1, 0) < 0 && -u(1, 0) >= u(0, 1)) {
            r.strong_converse = true;
            r.strong_converse_condition =
                "U(1,0) = -b, U(0,1) = a: above H(min{bp/a, 1/2}) the error tends to one";
        }
        return r;
    }

    // Lossy: regime checked as p <= 1/2; d >= p collapses R_inf to zero.
    if (p0 > Rational(1, 2))
        throw std::invalid_argument("classify_region: binary lossy needs P(0) <= 1/2");
    if (sum >= 0) {
        r.emptiness = RegionEmptiness::empty;
        return r;
    }
    r.emptiness = RegionEmptiness::nonempty;
    if (d >= p0)
        r.r_inf = {RateBound::Kind::exact, 0.0, "d >= p: R_inf = 0"};
    else
        r.r_inf = {RateBound::Kind::exact, rd_binary(p0, d), "lossy, binary: R_inf = R(d)"};
    if (u(0, 1) < 0 && u(1, 0) < 0) {
        r.r_sup = {RateBound::Kind::exact, 1.0, "both entries negative: R_d = [R(d), 1]"};
    } else if (p0 + d >= Rational(1, 2)) {
        r.r_sup = {RateBound::Kind::exact, 1.0, "p + d >= 1/2: R_sup = 1"};
    } else {
        r.r_sup = {RateBound::Kind::lower_bound, binary_entropy(to_double(p0 + d)),
                   "R_sup in [H(p+d), 1]"};
    }
    return r;
}

RegionReport classify_general(const UtilityMatrix& u, const Distribution& p, const Rational& d) {
    RegionReport r;
    r.capacity_bits = std::log2(static_cast<double>(p.q()));
    const GammaSignResult sign = gamma_sign(u);

    bool all_negative = true;
    bool constant_negative = true;
    Rational c;
    bool c_set = false;
    for (int i = 0; i < u.q(); ++i) {
        for (int j = 0; j < u.q(); ++j) {
            if (i == j) continue;
            if (u(i, j) >= 0) all_negative = constant_negative = false;
            if (!c_set) {
                c = u(i, j);
                c_set = true;
            } else if (u(i, j) != c) {
                constant_negative = false;
            }
        }
    }

    if (d == 0) {
        if (sign.kind == GammaSignKind::positive) {
            r.emptiness = RegionEmptiness::empty;
            return r;
        }
        if (sign.kind == GammaSignKind::zero) {
            r.emptiness = RegionEmptiness::unknown_gamma_zero;
            return r;
        }
        r.emptiness = RegionEmptiness::nonempty;
        r.r_inf = {RateBound::Kind::exact, entropy(p), "gamma < 0: R_inf = H(P_X)"};
        if (all_negative)
            r.r_sup = {RateBound::Kind::exact, r.capacity_bits,
                       "all entries negative: R = [H(P_X), log q]"};
        return r;
    }

    if (sign.kind == GammaSignKind::negative) {
        r.emptiness = RegionEmptiness::nonempty;
        try {
            const PPrimeBound bound = pprime_entropy_bound(p, d);
            r.r_inf = {RateBound::Kind::upper_bound, bound.bits,
                       "gamma < 0: R_inf <= min_{P'} H(P')"};
        } catch (const std::domain_error&) {
            // No feasible perturbation: leave the bound unset.
        }
        if (constant_negative) {
            r.r_inf = {RateBound::Kind::exact, rd_blahut_arimoto(p, d, 1e-9),
                       "constant negative utility: R_inf = R(d)"};
            r.r_sup = {RateBound::Kind::exact, r.capacity_bits,
                       "constant negative utility: R_d = [R(d), log q]"};
        }
        return r;
    }
    r.emptiness = sign.kind == GammaSignKind::zero ? RegionEmptiness::unknown_gamma_zero
                                                   : RegionEmptiness::unknown;
    return r;
}

}  // namespace

RegionReport classify_region(const UtilityMatrix& u, const Distribution& p, const Rational& d) {
    if (u.q() != p.q()) throw std::invalid_argument("classify_region: alphabet mismatch");
    if (d < 0 || d >= 1) throw std::invalid_argument("classify_region: need 0 <= d < 1");
    return p.q() == 2 ? classify_binary(u, p, d) : classify_general(u, p, d);
}

namespace {

// Binary joints with row marginal P0 (reconstruction) and column marginal
// P_X, parametrized by t = P(Xhat = 0, X = 1):
//   P = [[P0(0) - t, t], [P_X(0) - P0(0) + t, 1 - P_X(0) - t]]
// distortion(t) = P_X(0) - P0(0) + 2t, utility affine in t with slope
// U(0,1) + U(1,0).
struct BinaryFamily {
    Rational p;   // P_X(0)
    Rational p0;  // P0(0)
    Rational box_lo, box_hi;
};

BinaryFamily binary_family(const Distribution& px, const Distribution& p0) {
    BinaryFamily f;
    f.p = px[0];
    f.p0 = p0[0];
    f.box_lo = std::max(Rational(0), Rational(f.p0 - f.p));
    f.box_hi = std::min(f.p0, Rational(1 - f.p));
    if (f.box_lo > f.box_hi)
        throw std::invalid_argument("dbar: no joint with the requested marginals");
    return f;
}

double binary_mi(const BinaryFamily& f, double t) {
    const double p = to_double(f.p), p0 = to_double(f.p0);
    const double cell[4] = {p0 - t, t, p - p0 + t, 1 - p - t};
    const double row[2] = {p0, 1 - p0};
    const double col[2] = {p, 1 - p};
    double mi = 0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            const double v = cell[i * 2 + j];
            if (v > 1e-300) mi += v * std::log2(v / (row[i] * col[j]));
        }
    return std::max(0.0, mi);
}

DbarResult dbar_binary(const DbarProblem& prob) {
    const BinaryFamily f = binary_family(prob.px, prob.p0);
    const Rational slope = prob.u.binary_sum();
    if (slope >= 0)
        throw std::invalid_argument(
            "dbar: the binary exact regime needs U(0,1) + U(1,0) < 0");

    // The sender's objective decreases in t, so the optimal face is the
    // lowest feasible t; the worst-case distortion there is exact.
    Rational t_lo;
    bool exact = true;
    switch (prob.rate.kind) {
        case RateSpec::Kind::entropy_of_source:
        case RateSpec::Kind::entropy_of_output:
            // I(X; Xhat) <= min(H(X), H(Xhat)) <= R always: inactive.
            t_lo = f.box_lo;
            break;
        case RateSpec::Kind::rate_distortion: {
            const Rational drd = prob.rate.rd_distortion;
            if (f.p > Rational(1, 2) || drd < 0 || drd > f.p)
                throw std::invalid_argument("dbar: rate_distortion spec needs 0 <= d <= p <= 1/2");
            const Rational pstar =
                drd == f.p ? Rational(0) : (f.p - drd) / (1 - 2 * drd);
            if (f.p0 != pstar)
                throw std::invalid_argument(
                    "dbar: R(d) rate spec requires P0 to be the rate-distortion marginal");
            // The feasible set {t : I(t) <= R(d)} meets the sender's
            // preferred direction exactly at the rate-distortion joint.
            t_lo = std::max(f.box_lo, Rational(pstar * drd));
            break;
        }
        case RateSpec::Kind::raw: {
            // Numeric: bisect the convex I(t) on [box_lo, t_independent].
            const double r = prob.rate.bits;
            const double t_ind = to_double(f.p0) * (1 - to_double(f.p));
            double lo = to_double(f.box_lo), hi = std::max(lo, t_ind);
            if (binary_mi(f, lo) <= r + 1e-12) {
                t_lo = f.box_lo;
            } else {
                for (int it = 0; it < 200; ++it) {
                    const double mid = (lo + hi) / 2;
                    (binary_mi(f, mid) > r ? lo : hi) = mid;
                }
                exact = false;
                t_lo = Rational(static_cast<long long>(std::llround(hi * (1LL << 40))),
                                1LL << 40);
            }
            break;
        }
    }
    DbarResult res;
    res.exact = exact;
    res.value = f.p - f.p0 + 2 * t_lo;
    res.value_approx = to_double(res.value);
    return res;
}

DbarResult dbar_mi_inactive(const DbarProblem& prob) {
    // Valid because I(X; Xhat) <= H(Xhat) = H(P0) <= R.
    if (prob.rate.kind == RateSpec::Kind::raw && prob.rate.bits < entropy(prob.p0) - 1e-12)
        throw std::invalid_argument("dbar: mi_inactive regime needs R >= H(P0)");
    if (prob.rate.kind == RateSpec::Kind::rate_distortion)
        throw std::invalid_argument("dbar: rate_distortion spec is for the binary regime");
    if (prob.rate.kind == RateSpec::Kind::entropy_of_source) {
        // Needs H(P_X) >= H(P0); accept only the self-evident case P0 = P_X.
        if (!(prob.p0 == prob.px))
            throw std::invalid_argument(
                "dbar: entropy_of_source spec in mi_inactive regime requires P0 = P_X");
    }

    // Distribution-level transportation program: scale to integer marginals.
    BigInt denom = 1;
    for (int i = 0; i < prob.px.q(); ++i) {
        denom = boost::multiprecision::lcm(denom, BigInt(denominator(prob.px[i])));
        denom = boost::multiprecision::lcm(denom, BigInt(denominator(prob.p0[i])));
    }
    std::vector<long long> col(prob.px.q()), row(prob.px.q());
    for (int i = 0; i < prob.px.q(); ++i) {
        col[i] = ((numerator(prob.px[i]) * denom) / denominator(prob.px[i]))
                     .convert_to<long long>();
        row[i] = ((numerator(prob.p0[i]) * denom) / denominator(prob.p0[i]))
                     .convert_to<long long>();
    }
    const TypeLevelBest best =
        type_level_best(TypeVector(col), TypeVector(row), prob.u);
    DbarResult res;
    res.exact = true;
    res.value = best.max_distortion;  // already divided by the common scale
    res.value_approx = to_double(res.value);
    return res;
}

}  // namespace

DbarResult dbar(const DbarProblem& prob) {
    if (prob.px.q() != prob.p0.q() || prob.px.q() != prob.u.q())
        throw std::invalid_argument("dbar: alphabet mismatch");
    if (prob.regime == DbarProblem::Regime::binary_exact) {
        if (prob.px.q() != 2) throw std::invalid_argument("dbar: binary_exact needs q = 2");
        return dbar_binary(prob);
    }
    return dbar_mi_inactive(prob);
}

PPrimeBound pprime_entropy_bound(const Distribution& p, const Rational& d) {
    if (d < 0) throw std::invalid_argument("pprime_entropy_bound: need d >= 0");
    const int q = p.q();
    const Rational step = d / (q - 1);
    std::optional<PPrimeBound> best;
    // Receiver-major order so ties resolve toward the lexicographically
    // smallest receiving symbol.
    for (int k = 0; k < q; ++k) {
        for (int j = 0; j < q; ++j) {
            if (j == k) continue;
            std::vector<Rational> probs = p.probs();
            probs[j] -= step;
            probs[k] += step;
            if (probs[j] < 0 || probs[k] > 1) continue;
            Distribution cand(std::move(probs));
            const double h = entropy(cand);
            if (!best || h < best->bits - 1e-15) best = PPrimeBound{h, std::move(cand)};
        }
    }
    if (!best)
        throw std::domain_error(
            "pprime_entropy_bound: every transfer drives some entry outside [0,1]");
    return *best;
}

}  // namespace stratcomm
