#include "stratcomm/numeric.hpp"

#include <cctype>
#include <cstdio>

namespace stratcomm {

double log2_bigint(const BigInt& v) {
    if (v <= 0) throw std::domain_error("log2_bigint: value must be positive");
    const unsigned bits = boost::multiprecision::msb(v);  // floor(log2 v)
    if (bits < 1000) {
        return std::log2(v.convert_to<double>());
    }
    // Scale down so the mantissa fits a double, add the shifted bits back.
    const unsigned shift = bits - 63;
    const BigInt top = v >> shift;
    return std::log2(top.convert_to<double>()) + static_cast<double>(shift);
}

BigInt factorial(unsigned n) {
    BigInt f = 1;
    for (unsigned i = 2; i <= n; ++i) f *= i;
    return f;
}

BigInt binomial(unsigned n, unsigned k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    BigInt r = 1;
    for (unsigned i = 1; i <= k; ++i) {
        r *= n - k + i;
        r /= i;
    }
    return r;
}

Rational parse_rational(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("parse_rational: empty string");
    const auto slash = text.find('/');
    if (slash != std::string::npos) {
        const std::string num = text.substr(0, slash);
        const std::string den = text.substr(slash + 1);
        if (num.empty() || den.empty())
            throw std::invalid_argument("parse_rational: malformed fraction '" + text + "'");
        return Rational(BigInt(num), BigInt(den));
    }
    const auto dot = text.find('.');
    if (dot == std::string::npos) {
        return Rational(BigInt(text));
    }
    // Decimal literal: sign, integer part, fractional part.
    std::string s = text;
    bool neg = false;
    if (s[0] == '+' || s[0] == '-') {
        neg = s[0] == '-';
        s = s.substr(1);
    }
    const auto d = s.find('.');
    const std::string ip = d == 0 ? "0" : s.substr(0, d);
    const std::string fp = s.substr(d + 1);
    for (char c : ip)
        if (!std::isdigit(static_cast<unsigned char>(c)))
            throw std::invalid_argument("parse_rational: bad decimal '" + text + "'");
    for (char c : fp)
        if (!std::isdigit(static_cast<unsigned char>(c)))
            throw std::invalid_argument("parse_rational: bad decimal '" + text + "'");
    BigInt num(ip.empty() ? "0" : ip);
    BigInt den = 1;
    for (char c : fp) {
        num = num * 10 + (c - '0');
        den *= 10;
    }
    Rational r(num, den);
    return neg ? -r : r;
}

std::string rational_to_string(const Rational& r) {
    if (denominator(r) == 1) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

std::string real_to_string(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

}  // namespace stratcomm
