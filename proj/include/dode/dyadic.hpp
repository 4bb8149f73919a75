#pragma once

#include <compare>
#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "dode/errors.hpp"

namespace dode {

using Int = boost::multiprecision::cpp_int;

/// 2^k as an arbitrary-precision integer.
Int pow2(std::int64_t k);

/// Number of bits of n >= 0; bit_length(0) == 0.
std::int64_t bit_length(const Int& n);

/// An exact dyadic rational m / 2^e with e >= 0, kept in canonical form:
/// e == 0 or m odd.  This is the single numeric carrier of the library;
/// there is no floating-point path anywhere.
class Dyadic {
public:
    Dyadic() : mant_(0), exp_(0) {}
    Dyadic(int v) : mant_(v), exp_(0) {}
    Dyadic(Int mantissa) : mant_(std::move(mantissa)), exp_(0) {}
    Dyadic(Int mantissa, std::int64_t exponent);

    const Int& mantissa() const { return mant_; }
    std::int64_t exponent() const { return exp_; }

    bool is_zero() const { return mant_ == 0; }
    bool is_integer() const { return exp_ == 0; }
    bool is_negative() const { return mant_ < 0; }

    Dyadic operator-() const;
    friend Dyadic operator+(const Dyadic& a, const Dyadic& b);
    friend Dyadic operator-(const Dyadic& a, const Dyadic& b);
    friend Dyadic operator*(const Dyadic& a, const Dyadic& b);
    Dyadic& operator+=(const Dyadic& o) { return *this = *this + o; }
    Dyadic& operator-=(const Dyadic& o) { return *this = *this - o; }
    Dyadic& operator*=(const Dyadic& o) { return *this = *this * o; }

    /// Exact halving (the basic function x/2).
    Dyadic half() const;

    /// Round to a dyadic with exponent <= n, |round(a,n) - a| <= 2^-n.
    /// Round-to-nearest, ties to even mantissa at precision n.
    Dyadic round(std::int64_t n) const;

    Dyadic abs() const { return mant_ < 0 ? -*this : *this; }
    Int floor() const;
    Int ceil() const;

    friend std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b);
    friend bool operator==(const Dyadic& a, const Dyadic& b) {
        return a.mant_ == b.mant_ && a.exp_ == b.exp_;
    }

    /// Parses `m/2^e`, plain integers, and exactly-dyadic decimals like
    /// `5.5`; rejects non-dyadic decimals such as `0.1`.
    static Dyadic parse(const std::string& text);

    /// Canonical `m` or `m/2^e` form.
    std::string str() const;
    /// Exact binary-point decimal rendering (dyadics always terminate).
    std::string decimal() const;

private:
    void canonicalize();

    Int mant_;
    std::int64_t exp_; // value = mant_ / 2^exp_
};

enum class Cmp { LT, EQ, GT };

inline Cmp dy_cmp(const Dyadic& a, const Dyadic& b) {
    auto o = a <=> b;
    return o < 0 ? Cmp::LT : (o > 0 ? Cmp::GT : Cmp::EQ);
}

/// 2^-n as a Dyadic.
Dyadic dy_pow2(std::int64_t n);

/// Length of the binary representation; length(0) == 0 by convention.
/// Argument must be a non-negative integer dyadic.
std::int64_t dy_length(const Dyadic& a);

} // namespace dode
