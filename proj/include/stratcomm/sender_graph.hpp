#pragma once

#include <span>

#include "stratcomm/model.hpp"
#include "stratcomm/utility.hpp"

namespace stratcomm {

/// Which graph on X^n the utility induces: the undirected sender graph joins
/// x, y when either direction of misreporting is weakly profitable; the
/// directed variant has an edge x -> y when U_n(y, x) > delta * U^max.
struct GraphSpec {
    enum class Variant { undirected, directed };
    UtilityMatrix u;
    long long n;
    Variant variant = Variant::undirected;
    Rational delta = 0;

    static GraphSpec undirected(UtilityMatrix util, long long block) {
        return {std::move(util), block, Variant::undirected, 0};
    }
    static GraphSpec directed(UtilityMatrix util, long long block, Rational d) {
        if (d < 0) throw std::invalid_argument("GraphSpec: delta must be >= 0");
        return {std::move(util), block, Variant::directed, std::move(d)};
    }
};

struct DegreeReport {
    BigInt delta_out;  // edges from one fixed x in U_P1 into U_P2
    BigInt delta_in;   // edges into one fixed y in U_P2 from U_P1
};

bool adjacent(const Sequence& x, const Sequence& y, const UtilityMatrix& u);
bool directed_edge(const Sequence& x, const Sequence& y, const UtilityMatrix& u,
                   const Rational& delta);

/// Degree counts between two type classes without enumerating sequences:
/// sums over joint types with the given marginals, each weighted by the
/// number of ways to overwrite a canonical representative.
DegreeReport degree_counts(const TypeVector& p1, const TypeVector& p2, const GraphSpec& spec,
                           long long joint_cap = 50'000'000);

bool is_independent_set(std::span<const Sequence> s, const UtilityMatrix& u);

}  // namespace stratcomm
