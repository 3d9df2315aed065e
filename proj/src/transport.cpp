#include "stratcomm/transport.hpp"

#include "stratcomm/simplex.hpp"

namespace stratcomm {

namespace {

struct TransportLp {
    int q;
    long long n;
    std::vector<std::vector<Rational>> a;
    std::vector<Rational> b;
    std::vector<Rational> cu;  // utility objective
    std::vector<Rational> cd;  // distortion objective

    TransportLp(const TypeVector& px, const TypeVector& qclass, const UtilityMatrix& u)
        : q(px.q()), n(px.n()) {
        if (qclass.q() != q || u.q() != q)
            throw std::invalid_argument("type_level_best: alphabet mismatch");
        if (px.n() != qclass.n())
            throw std::invalid_argument("type_level_best: marginals have different n");
        for (int i = 0; i < q; ++i) {
            std::vector<Rational> row(q * q, Rational(0));
            for (int j = 0; j < q; ++j) row[i * q + j] = 1;
            a.push_back(std::move(row));
            b.emplace_back(qclass.counts[i]);
        }
        for (int j = 0; j < q; ++j) {
            std::vector<Rational> row(q * q, Rational(0));
            for (int i = 0; i < q; ++i) row[i * q + j] = 1;
            a.push_back(std::move(row));
            b.emplace_back(px.counts[j]);
        }
        cu.resize(q * q);
        cd.assign(q * q, Rational(0));
        for (int i = 0; i < q; ++i) {
            for (int j = 0; j < q; ++j) {
                cu[i * q + j] = u(i, j);
                if (i != j) cd[i * q + j] = 1;
            }
        }
    }

    Rational stage1() {
        const LpResult r = solve_equality_lp(a, b, cu);
        if (r.status != LpStatus::optimal)
            throw std::logic_error("type_level_best: transportation program not optimal");
        opt_util_ = r.objective;
        return r.objective;
    }

    // Pin the utility to its optimum and optimize the distortion; the face is
    // a face of the transportation polytope, so the vertex stays integral.
    LpResult stage2(bool maximize_distortion) {
        a.push_back(cu);
        b.push_back(opt_util_);
        std::vector<Rational> c = cd;
        if (!maximize_distortion)
            for (auto& v : c) v = -v;
        const LpResult r = solve_equality_lp(a, b, c);
        a.pop_back();
        b.pop_back();
        if (r.status != LpStatus::optimal)
            throw std::logic_error("type_level_best: optimal face program failed");
        return r;
    }

  private:
    Rational opt_util_;
};

JointType to_joint(const std::vector<Rational>& x, int q) {
    JointType w(q);
    for (int i = 0; i < q; ++i) {
        for (int j = 0; j < q; ++j) {
            const Rational& v = x[i * q + j];
            if (denominator(v) != 1)
                throw std::logic_error("type_level_best: non-integral vertex");
            w(i, j) = numerator(v).convert_to<long long>();
        }
    }
    return w;
}

}  // namespace

TypeLevelBest type_level_best(const TypeVector& px, const TypeVector& qclass,
                              const UtilityMatrix& u) {
    TransportLp lp(px, qclass, u);
    TypeLevelBest r;
    r.max_utility = lp.stage1() / lp.n;
    const LpResult dmax = lp.stage2(true);
    const LpResult dmin = lp.stage2(false);
    r.max_distortion = dmax.objective / lp.n;
    r.min_distortion = -dmin.objective / lp.n;
    r.unique_diagonal = px == qclass && r.max_distortion == 0;
    r.argmax_distortion = to_joint(dmax.x, lp.q);
    r.argmin_distortion = to_joint(dmin.x, lp.q);
    return r;
}

Rational type_level_max_utility(const TypeVector& px, const TypeVector& qclass,
                                const UtilityMatrix& u) {
    TransportLp lp(px, qclass, u);
    return lp.stage1() / lp.n;
}

Rational type_level_worst_distortion(const TypeVector& px, const TypeVector& qclass,
                                     const UtilityMatrix& u) {
    TransportLp lp(px, qclass, u);
    lp.stage1();
    return lp.stage2(true).objective / lp.n;
}

}  // namespace stratcomm
