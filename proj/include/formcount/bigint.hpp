#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace formcount {

// All exact arithmetic runs on arbitrary-precision integers; fixed-width
// int64 fast paths are used only where a conservative magnitude bound
// certifies that no intermediate can overflow (see enumerate.hpp).
using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

inline bool fits_int64(const BigInt& v) {
    return v >= std::numeric_limits<std::int64_t>::min() &&
           v <= std::numeric_limits<std::int64_t>::max();
}

inline std::int64_t to_int64(const BigInt& v) {
    if (!fits_int64(v)) throw std::overflow_error("value exceeds 64-bit range: " + v.str());
    return static_cast<std::int64_t>(v);
}

inline BigInt big_pow(BigInt base, unsigned exp) {
    BigInt out = 1;
    while (exp) {
        if (exp & 1u) out *= base;
        base *= base;
        exp >>= 1u;
    }
    return out;
}

inline BigInt factorial(unsigned n) {
    BigInt out = 1;
    for (unsigned k = 2; k <= n; ++k) out *= k;
    return out;
}

}  // namespace formcount
