#pragma once

#include "momentlab/rational.hpp"
#include "momentlab/subgroup.hpp"

#include <variant>
#include <vector>

namespace momentlab {

/// Truncated moment sequence (t(0), ..., t(N)) with t(0) = 1. Entries are
/// either all exact rationals or all elements of one generated subgroup
/// (rationals embed via the unit generator).
class MomentVector {
public:
    static MomentVector from_rationals(std::vector<Rational> entries);
    static MomentVector from_elements(std::vector<GroupElement> entries);

    std::size_t size() const;
    bool is_rational() const;

    const std::vector<Rational>& rationals() const;       // rational storage only
    const std::vector<GroupElement>& elements() const;    // group storage only

    Rational rational_at(std::size_t i) const;            // rational storage only
    GroupElement element_at(std::size_t i) const;         // either storage

    /// Group-stored vector whose entries all evaluate to rationals is
    /// converted to rational storage; otherwise returns *this.
    MomentVector normalized() const;

    MomentVector prefix(std::size_t length) const;
    MomentVector appended(const Rational& value) const;
    MomentVector appended(const GroupElement& value) const;

    bool operator==(const MomentVector& other) const;

private:
    MomentVector() = default;
    std::variant<std::vector<Rational>, std::vector<GroupElement>> entries_;
};

/// Discrete derivative (t(0)-t(1), ..., t(N-1)-t(N)); throws TooShort for
/// vectors of length < 2.
std::vector<Rational> derivative(const std::vector<Rational>& t);
std::vector<GroupElement> derivative(const std::vector<GroupElement>& t);

/// t^(j)(k), by repeated differencing. Requires j + k <= N.
Rational iterated_difference(const std::vector<Rational>& t, std::size_t j, std::size_t k);
GroupElement iterated_difference(const std::vector<GroupElement>& t, std::size_t j, std::size_t k);
Rational iterated_difference(const MomentVector& t, std::size_t j, std::size_t k); // rational storage
GroupElement iterated_difference_element(const MomentVector& t, std::size_t j, std::size_t k);

/// True iff every available difference t^(k)(n) with n + k <= N is >= 0.
bool completely_monotone_prefix(const MomentVector& t);

} // namespace momentlab
