#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <stdexcept>
#include <string>

namespace stratcomm {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

/// log2 of a positive big integer, exact to double precision even when the
/// value itself does not fit in a double.
double log2_bigint(const BigInt& v);

BigInt factorial(unsigned n);
BigInt binomial(unsigned n, unsigned k);

/// Parses "num/den", decimal strings ("0.3", "-1.25") and plain integers
/// into an exact rational. Throws std::invalid_argument on anything else.
Rational parse_rational(const std::string& text);

/// Rational -> canonical "num/den" text ("3/10", "0", "-4"). Integers are
/// printed without a denominator.
std::string rational_to_string(const Rational& r);

/// Real -> text with 12 significant digits, stable across platforms for the
/// value ranges used here.
std::string real_to_string(double x);

}  // namespace stratcomm
