#pragma once

#include <vector>

#include "stratcomm/numeric.hpp"

namespace stratcomm {

enum class LpStatus { optimal, infeasible, unbounded };

struct LpResult {
    LpStatus status = LpStatus::infeasible;
    Rational objective;
    std::vector<Rational> x;
};

/// Exact-rational two-phase primal simplex for
///     max cᵀx  s.t.  A x = b,  x >= 0.
/// Bland's rule throughout, so it terminates on degenerate problems. Meant
/// for the small dense programs of this project (tens of variables).
LpResult solve_equality_lp(const std::vector<std::vector<Rational>>& a,
                           const std::vector<Rational>& b,
                           const std::vector<Rational>& c);

}  // namespace stratcomm
