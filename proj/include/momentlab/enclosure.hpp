#pragma once

#include "momentlab/rational.hpp"

namespace momentlab {

/// Certified interval [lo, hi] with exact rational endpoints enclosing a
/// real value. All operations round outward, so enclosures stay sound.
struct Enclosure {
    Rational lo;
    Rational hi;

    Enclosure() = default;
    Enclosure(Rational l, Rational h) : lo(std::move(l)), hi(std::move(h)) {}
    static Enclosure point(const Rational& x) { return {x, x}; }

    Rational width() const { return hi - lo; }
    bool contains_zero() const { return lo <= 0 && 0 <= hi; }
    bool strictly_positive() const { return lo > 0; }
    bool strictly_negative() const { return hi < 0; }
};

Enclosure operator+(const Enclosure& a, const Enclosure& b);
Enclosure operator-(const Enclosure& a, const Enclosure& b);
Enclosure operator-(const Enclosure& a);
Enclosure operator*(const Enclosure& a, const Enclosure& b);
/// Requires 0 outside b.
Enclosure operator/(const Enclosure& a, const Enclosure& b);
Enclosure scale(const Rational& c, const Enclosure& a);

/// Encloses sqrt(d) for an integer d >= 0 with width at most 2^-bits.
/// Endpoints are dyadic, via a scaled integer square root.
Enclosure sqrt_enclosure(const Int& d, unsigned bits);

} // namespace momentlab
