#pragma once

#include "stratcomm/model.hpp"

namespace stratcomm {

/// Shannon entropy in bits, 0 log 0 = 0.
double entropy(const Distribution& p);
double binary_entropy(double p);

/// Binary rate-distortion function under Hamming distortion, p <= 1/2:
/// H(p) - H(d) for 0 <= d < p, 0 for d >= p.
double rd_binary(const Rational& p, const Rational& d);

/// R(d) for a general finite source under Hamming distortion, within `tol`
/// of the true infimum. Alternating minimization with bisection over the
/// distortion slope. Throws on non-convergence.
double rd_blahut_arimoto(const Distribution& p, const Rational& d, double tol = 1e-9);

}  // namespace stratcomm
