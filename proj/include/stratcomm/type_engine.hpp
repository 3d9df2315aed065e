#pragma once

#include "stratcomm/game.hpp"
#include "stratcomm/transport.hpp"

namespace stratcomm {

/// Result of the scalable engine. Everything that depends only on joint
/// types is exact; the reconstruction count is exact precisely when every
/// recovered type has the diagonal as its unique maximizer, and is bracketed
/// otherwise.
struct TypeOutcome {
    Rational recovered_prob;
    Rational error_prob;
    Rational coop_recovered_prob;

    std::vector<TypeVector> types;  // all source types, lexicographic
    std::vector<char> recovered;    // indicator, aligned with `types`

    bool a_exact = false;
    std::vector<TypeVector> a_lower_classes;  // recovered identity classes
    std::vector<TypeVector> a_upper_classes;  // all maximizer classes of recovered types
    BigInt a_lower_size;
    BigInt a_upper_size;
    std::optional<double> rate_bits;        // set when the bracket collapses
    std::optional<double> rate_lower_bits;  // otherwise the bracket, in bits
    std::optional<double> rate_upper_bits;

    std::vector<TypeVector> reachable_classes;  // maximizer classes over all sources
    BigInt reachable_size;
    double reachable_rate_bits = 0;  // upper bound on the used-image rate
};

/// Type-level evaluation of a type-class-union strategy. The tie rule must
/// be worst_case with threshold equal to d: a source type errs exactly when
/// some global maximizer exceeds distortion d.
TypeOutcome type_level_evaluate(const ReceiverStrategy& g, const UtilityMatrix& u,
                                const Distribution& p, const Rational& d, const TieRule& tie,
                                int threads = 1);

}  // namespace stratcomm
