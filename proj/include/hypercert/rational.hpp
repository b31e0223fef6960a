#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <string>

#include "hypercert/errors.hpp"

namespace hypercert {

// Exact arithmetic is the default everywhere: measures, certificate weights and
// all LP solving are carried out over arbitrary-precision rationals so that
// duality equalities and certificate inequalities can be asserted with "==".
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Rat rat(long long num, long long den = 1) {
    require(den != 0, Err::BadParams, "rational with zero denominator");
    return Rat(Int(num), Int(den));
}

inline double to_double(const Rat& r) { return r.convert_to<double>(); }

/// Serialized form used in JSON outputs: always "num/den", denominator positive.
inline std::string to_fraction_string(const Rat& r) {
    return numerator(r).str() + "/" + denominator(r).str();
}

/// Exact rational value of a double (every finite double is a dyadic rational).
inline Rat rational_from_double(double x) {
    require(std::isfinite(x), Err::ParseError, "non-finite number");
    if (x == 0.0) return Rat(0);
    int exp = 0;
    double mant = std::frexp(x, &exp);  // x = mant * 2^exp, |mant| in [0.5, 1)
    long long m = 0;
    for (int i = 0; i < 64 && mant != 0.0; ++i) {
        mant *= 2;
        exp -= 1;
        double ip = 0;
        mant = std::modf(mant, &ip);
        m = 2 * m + static_cast<long long>(ip);
    }
    Rat r(m);
    if (exp > 0)
        r *= Rat(Int(1) << exp);
    else if (exp < 0)
        r /= Rat(Int(1) << (-exp));
    return r;
}

/// Parses "p/q", "p", or a decimal like "0.25" into an exact rational.
inline Rat parse_rational(const std::string& s) {
    require(!s.empty(), Err::ParseError, "empty rational");
    auto slash = s.find('/');
    try {
        if (slash != std::string::npos) {
            Int num(s.substr(0, slash));
            Int den(s.substr(slash + 1));
            require(den != 0, Err::ParseError, "zero denominator in '" + s + "'");
            return Rat(num, den);
        }
        auto dot = s.find('.');
        if (dot != std::string::npos) {
            std::string head = s.substr(0, dot), tail = s.substr(dot + 1);
            bool neg = !head.empty() && head[0] == '-';
            Int ipart = head.empty() || head == "-" ? Int(0) : Int(head);
            Int scale = 1;
            Int frac = 0;
            for (char c : tail) {
                require(c >= '0' && c <= '9', Err::ParseError, "bad decimal '" + s + "'");
                frac = frac * 10 + (c - '0');
                scale *= 10;
            }
            Rat r = Rat(abs(ipart)) + Rat(frac, scale);
            return neg ? -r : r;
        }
        return Rat(Int(s));
    } catch (const Error&) {
        throw;
    } catch (const std::exception&) {
        fail(Err::ParseError, "cannot parse rational '" + s + "'");
    }
}

/// Smallest integer >= r.
inline Int ceil_rat(const Rat& r) {
    Int q = numerator(r) / denominator(r);
    if (Rat(q) < r) q += 1;
    return q;
}

/// Integer power with negative exponents allowed; base must be nonzero for e < 0.
inline Rat pow_rat(const Rat& base, long long e) {
    if (e < 0) {
        require(base != 0, Err::BadParams, "zero base with negative exponent");
        return Rat(1) / pow_rat(base, -e);
    }
    Rat acc(1), b = base;
    long long k = e;
    while (k > 0) {
        if (k & 1) acc *= b;
        b *= b;
        k >>= 1;
    }
    return acc;
}

}  // namespace hypercert
