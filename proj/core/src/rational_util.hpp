#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <stdexcept>

namespace twocopy::detail {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Exact value of a finite double as a dyadic rational.
inline Rational rational_from_double(double d) {
    if (!std::isfinite(d)) throw std::invalid_argument("rational_from_double: non-finite value");
    if (d == 0.0) return Rational(0);
    int exp = 0;
    const double m = std::frexp(d, &exp);          // d = m * 2^exp, |m| in [0.5, 1)
    const auto num = static_cast<long long>(std::ldexp(m, 53));  // integer, exact
    const int e = exp - 53;
    Rational r(num);
    if (e >= 0) {
        r *= Rational(BigInt(1) << e);
    } else {
        r /= Rational(BigInt(1) << -e);
    }
    return r;
}

inline double rational_to_double(const Rational& r) { return r.convert_to<double>(); }

}  // namespace twocopy::detail
