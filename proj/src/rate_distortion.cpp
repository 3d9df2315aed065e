#include "stratcomm/rate_distortion.hpp"

#include <algorithm>
#include <cmath>

namespace stratcomm {

double entropy(const Distribution& p) {
    double h = 0;
    for (int i = 0; i < p.q(); ++i) {
        const double v = to_double(p[i]);
        if (v > 0) h -= v * std::log2(v);
    }
    return h;
}

double binary_entropy(double p) {
    if (p <= 0 || p >= 1) return 0;
    return -p * std::log2(p) - (1 - p) * std::log2(1 - p);
}

double rd_binary(const Rational& p, const Rational& d) {
    if (p < 0 || p > Rational(1, 2)) throw std::invalid_argument("rd_binary: need 0 <= p <= 1/2");
    if (d < 0) throw std::invalid_argument("rd_binary: need d >= 0");
    if (d >= p) return 0;
    return binary_entropy(to_double(p)) - binary_entropy(to_double(d));
}

namespace {

struct BaPoint {
    double distortion;
    double rate;
};

// Parametric point of the rate-distortion curve at distortion slope s >= 0
// (Hamming distortion), via alternating minimization on the reproduction
// distribution. Uniform initialization, iteration cap per module contract.
BaPoint ba_point(const std::vector<double>& px, double slope, long long iter_cap) {
    const int q = static_cast<int>(px.size());
    const double a = std::exp2(-slope);  // off-diagonal tilt
    std::vector<double> qy(q, 1.0 / q);
    std::vector<double> qnew(q), z(q);
    for (long long it = 0; it < iter_cap; ++it) {
        for (int x = 0; x < q; ++x) {
            double s = 0;
            for (int y = 0; y < q; ++y) s += qy[y] * (x == y ? 1.0 : a);
            z[x] = s;
        }
        double delta = 0;
        for (int y = 0; y < q; ++y) {
            double s = 0;
            for (int x = 0; x < q; ++x)
                if (px[x] > 0) s += px[x] * (x == y ? 1.0 : a) / z[x];
            qnew[y] = qy[y] * s;
            delta = std::max(delta, std::abs(qnew[y] - qy[y]));
        }
        qy = qnew;
        if (delta < 1e-15) break;
        if (it + 1 == iter_cap)
            throw std::runtime_error("rd_blahut_arimoto: iteration cap exceeded");
    }
    for (int x = 0; x < q; ++x) {
        double s = 0;
        for (int y = 0; y < q; ++y) s += qy[y] * (x == y ? 1.0 : a);
        z[x] = s;
    }
    double dist = 0, rate = 0;
    for (int x = 0; x < q; ++x) {
        if (px[x] <= 0) continue;
        for (int y = 0; y < q; ++y) {
            if (qy[y] <= 0) continue;
            const double w = qy[y] * (x == y ? 1.0 : a) / z[x];  // P(y|x)
            if (w <= 0) continue;
            if (x != y) dist += px[x] * w;
            rate += px[x] * w * std::log2(w / qy[y]);
        }
    }
    return {dist, std::max(0.0, rate)};
}

}  // namespace

double rd_blahut_arimoto(const Distribution& p, const Rational& d, double tol) {
    if (d < 0 || d > 1) throw std::invalid_argument("rd_blahut_arimoto: need 0 <= d <= 1");
    if (tol <= 0) throw std::invalid_argument("rd_blahut_arimoto: tol must be > 0");
    const double target = to_double(d);
    std::vector<double> px(p.q());
    double pmax = 0;
    for (int i = 0; i < p.q(); ++i) {
        px[i] = to_double(p[i]);
        pmax = std::max(pmax, px[i]);
    }
    if (target <= 0) return entropy(p);
    if (target >= 1 - pmax) return 0;  // R(d) hits zero at d = 1 - max P(i)

    const long long iter_cap = 100000;
    double lo = 0, hi = 64;
    BaPoint pt = ba_point(px, hi, iter_cap);
    if (pt.distortion > target)
        throw std::runtime_error("rd_blahut_arimoto: slope bracket too small");
    for (int it = 0; it < 200; ++it) {
        const double mid = (lo + hi) / 2;
        pt = ba_point(px, mid, iter_cap);
        if (std::abs(pt.distortion - target) < tol * 1e-3) {
            lo = hi = mid;
            break;
        }
        (pt.distortion > target ? lo : hi) = mid;
        if (hi - lo < 1e-14) break;
    }
    const double slope = (lo + hi) / 2;
    pt = ba_point(px, slope, iter_cap);
    // Tangent correction: the curve is convex with slope -s at the computed
    // point, so this pins R(target) to well below `tol` once D is close.
    return std::max(0.0, pt.rate + slope * (pt.distortion - target));
}

}  // namespace stratcomm
