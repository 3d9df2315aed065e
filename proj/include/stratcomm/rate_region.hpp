#pragma once

#include <optional>
#include <string>

#include "stratcomm/rate_distortion.hpp"
#include "stratcomm/utility.hpp"

namespace stratcomm {

enum class RegionEmptiness { empty, nonempty, unknown_gamma_zero, unknown };

struct RateBound {
    enum class Kind { none, exact, upper_bound, lower_bound };
    Kind kind = Kind::none;
    double bits = 0;
    std::string clause;  // which condition produced it
};

struct RegionReport {
    RegionEmptiness emptiness = RegionEmptiness::unknown;
    RateBound r_inf;
    RateBound r_sup;
    double capacity_bits = 0;  // log2 q
    bool strong_converse = false;
    std::string strong_converse_condition;
};

/// Rate-region endpoint classification for lossless (d = 0) and lossy
/// (d > 0) recovery, binary and general alphabets.
RegionReport classify_region(const UtilityMatrix& u, const Distribution& p, const Rational& d);

/// The rate constraint of the mismatched bound, kept symbolic where the
/// argument makes the mutual-information constraint provably inactive or
/// pins the feasible set analytically.
struct RateSpec {
    enum class Kind {
        entropy_of_source,  // R = H(P_X):   I(X; Xhat) <= H(X) always
        entropy_of_output,  // R = H(P_0):   I(X; Xhat) <= H(Xhat) always
        rate_distortion,    // R = R(d_rd) for the binary source, MI active
        raw                 // numeric rate in bits
    };
    Kind kind;
    Rational rd_distortion;  // for rate_distortion
    double bits = 0;         // for raw

    static RateSpec entropy_of_source() { return {Kind::entropy_of_source, 0, 0}; }
    static RateSpec entropy_of_output() { return {Kind::entropy_of_output, 0, 0}; }
    static RateSpec rate_distortion(Rational d) {
        return {Kind::rate_distortion, std::move(d), 0};
    }
    static RateSpec raw(double bits) { return {Kind::raw, 0, bits}; }
};

struct DbarProblem {
    enum class Regime { binary_exact, mi_inactive };
    Distribution px;
    Distribution p0;
    RateSpec rate;
    UtilityMatrix u;
    Regime regime;
};

struct DbarResult {
    bool exact = false;
    Rational value;       // valid when exact
    double value_approx;  // always valid
};

/// Worst expected distortion among the sender-optimal joints with marginals
/// (P_X, P_0) and mutual information at most R, for the given P_0. The
/// outer minimization over P_0 is the caller's (grids / candidate lists).
DbarResult dbar(const DbarProblem& prob);

struct PPrimeBound {
    double bits;
    Distribution witness;
};

/// Minimum entropy over the single-pair perturbations of the source:
/// mass d/(q-1) moved between one ordered symbol pair, with the witness.
PPrimeBound pprime_entropy_bound(const Distribution& p, const Rational& d);

}  // namespace stratcomm
