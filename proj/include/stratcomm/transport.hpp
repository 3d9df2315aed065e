#pragma once

#include "stratcomm/model.hpp"
#include "stratcomm/utility.hpp"

namespace stratcomm {

/// Exact optimum of the sender's per-type problem: over all joint types W
/// with column marginal `px` (true sequence) and row marginal `qclass`
/// (reconstruction class), maximize the block utility; then, restricted to
/// the optimal face, take the extreme distortions. Vertices of the
/// transportation polytope are integral, so all three values are exact.
struct TypeLevelBest {
    Rational max_utility;     // per letter
    Rational max_distortion;  // among utility maximizers
    Rational min_distortion;  // among utility maximizers
    bool unique_diagonal;     // the only maximizer is y = x
    JointType argmax_distortion;  // a maximizer attaining max_distortion
    JointType argmin_distortion;  // a maximizer attaining min_distortion
};

TypeLevelBest type_level_best(const TypeVector& px, const TypeVector& qclass,
                              const UtilityMatrix& u);

/// Stage 1 alone: the best block utility the sender can reach in the class.
Rational type_level_max_utility(const TypeVector& px, const TypeVector& qclass,
                                const UtilityMatrix& u);

/// Largest distortion among the utility maximizers (stage 2, max direction).
Rational type_level_worst_distortion(const TypeVector& px, const TypeVector& qclass,
                                     const UtilityMatrix& u);

}  // namespace stratcomm
