// Exact arithmetic types used throughout the library.
//
// All linear algebra is over arbitrary-precision integers; entry growth
// during elimination on 4-manifold boundary matrices overflows int64.

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace sapc {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int absInt(const Int& a) { return a < 0 ? Int(-a) : a; }

inline Int gcdInt(Int a, Int b)
{
    a = absInt(a);
    b = absInt(b);
    while (b != 0) {
        Int r = a % b;
        a = b;
        b = r;
    }
    return a;
}

// Extended gcd: returns g = gcd(a,b) and x,y with a*x + b*y = g, g >= 0.
inline Int extendedGcd(const Int& a, const Int& b, Int& x, Int& y)
{
    if (b == 0) {
        if (a < 0) {
            x = -1;
            y = 0;
            return -a;
        }
        x = 1;
        y = 0;
        return a;
    }
    Int x1, y1;
    Int g = extendedGcd(b, a % b, x1, y1);
    x = y1;
    y = x1 - (a / b) * y1;
    return g;
}

// Floor division (C++ / truncates toward zero).
inline Int floorDiv(const Int& a, const Int& b)
{
    Int q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0)))
        --q;
    return q;
}

inline Int modPositive(const Int& a, const Int& m)
{
    Int r = a % m;
    if (r < 0)
        r += m;
    return r;
}

inline std::string toString(const Int& a) { return a.str(); }

}  // namespace sapc
