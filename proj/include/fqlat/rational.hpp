#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>

namespace fqlat {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// q^e for integer e of either sign.
inline Rational q_pow(long q, long e) {
    BigInt p = 1;
    for (long i = 0; i < (e >= 0 ? e : -e); ++i) p *= q;
    return e >= 0 ? Rational(p) : Rational(BigInt(1), p);
}

inline std::string rat_str(const Rational& r) {
    return r.str();
}

// total variation distance between two finitely supported distributions
// given as aligned vectors of masses (shorter one padded with zeros).
inline Rational tv_distance(const std::vector<Rational>& a, const std::vector<Rational>& b) {
    Rational s = 0;
    size_t n = std::max(a.size(), b.size());
    for (size_t i = 0; i < n; ++i) {
        Rational x = i < a.size() ? a[i] : Rational(0);
        Rational y = i < b.size() ? b[i] : Rational(0);
        s += x >= y ? x - y : y - x;
    }
    return s / 2;
}

} // namespace fqlat
