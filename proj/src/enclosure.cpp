#include "momentlab/enclosure.hpp"

#include <algorithm>
#include <stdexcept>

namespace momentlab {

Enclosure operator+(const Enclosure& a, const Enclosure& b) {
    return {a.lo + b.lo, a.hi + b.hi};
}

Enclosure operator-(const Enclosure& a, const Enclosure& b) {
    return {a.lo - b.hi, a.hi - b.lo};
}

Enclosure operator-(const Enclosure& a) {
    return {-a.hi, -a.lo};
}

Enclosure operator*(const Enclosure& a, const Enclosure& b) {
    const Rational p1 = a.lo * b.lo;
    const Rational p2 = a.lo * b.hi;
    const Rational p3 = a.hi * b.lo;
    const Rational p4 = a.hi * b.hi;
    return {std::min(std::min(p1, p2), std::min(p3, p4)),
            std::max(std::max(p1, p2), std::max(p3, p4))};
}

Enclosure operator/(const Enclosure& a, const Enclosure& b) {
    if (b.contains_zero())
        throw std::domain_error("interval division by an interval containing zero");
    const Rational q1 = a.lo / b.lo;
    const Rational q2 = a.lo / b.hi;
    const Rational q3 = a.hi / b.lo;
    const Rational q4 = a.hi / b.hi;
    return {std::min(std::min(q1, q2), std::min(q3, q4)),
            std::max(std::max(q1, q2), std::max(q3, q4))};
}

Enclosure scale(const Rational& c, const Enclosure& a) {
    if (c >= 0)
        return {c * a.lo, c * a.hi};
    return {c * a.hi, c * a.lo};
}

Enclosure sqrt_enclosure(const Int& d, unsigned bits) {
    if (d < 0)
        throw std::domain_error("sqrt of negative value");
    // r = floor(sqrt(d * 4^bits)) gives r <= sqrt(d)*2^bits < r+1.
    Int scaled = d << (2 * bits);
    Int r = sqrt(scaled);
    Int den = Int(1) << bits;
    return {make_rational(r, den), make_rational(r + 1, den)};
}

} // namespace momentlab
