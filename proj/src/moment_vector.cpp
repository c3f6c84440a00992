#include "momentlab/moment_vector.hpp"

#include "momentlab/errors.hpp"

#include <stdexcept>

namespace momentlab {

MomentVector MomentVector::from_rationals(std::vector<Rational> entries) {
    if (entries.empty())
        throw TooShort("moment vector needs at least t(0)");
    if (entries.front() != 1)
        throw NotAMomentVector("moment vector must start with t(0) = 1");
    MomentVector v;
    v.entries_ = std::move(entries);
    return v;
}

MomentVector MomentVector::from_elements(std::vector<GroupElement> entries) {
    if (entries.empty())
        throw TooShort("moment vector needs at least t(0)");
    for (std::size_t i = 1; i < entries.size(); ++i)
        if (!(*entries[i].group() == *entries.front().group()))
            throw MixedDescriptors("moment vector entries from different descriptors");
    const GroupElement& head = entries.front();
    if (!head.is_rational() || head.rational_value() != 1)
        throw NotAMomentVector("moment vector must start with t(0) = 1");
    MomentVector v;
    v.entries_ = std::move(entries);
    return v;
}

std::size_t MomentVector::size() const {
    return std::visit([](const auto& e) { return e.size(); }, entries_);
}

bool MomentVector::is_rational() const {
    return std::holds_alternative<std::vector<Rational>>(entries_);
}

const std::vector<Rational>& MomentVector::rationals() const {
    return std::get<std::vector<Rational>>(entries_);
}

const std::vector<GroupElement>& MomentVector::elements() const {
    return std::get<std::vector<GroupElement>>(entries_);
}

Rational MomentVector::rational_at(std::size_t i) const {
    return rationals().at(i);
}

GroupElement MomentVector::element_at(std::size_t i) const {
    if (is_rational())
        throw std::logic_error("element_at on rational storage");
    return elements().at(i);
}

MomentVector MomentVector::normalized() const {
    if (is_rational())
        return *this;
    std::vector<Rational> values;
    values.reserve(size());
    for (const auto& e : elements()) {
        if (!e.is_rational())
            return *this;
        values.push_back(e.rational_value());
    }
    return from_rationals(std::move(values));
}

MomentVector MomentVector::prefix(std::size_t length) const {
    if (length == 0 || length > size())
        throw OutOfRange("prefix length out of range");
    MomentVector v;
    std::visit(
        [&](const auto& e) {
            v.entries_ = std::decay_t<decltype(e)>(e.begin(), e.begin() + length);
        },
        entries_);
    return v;
}

MomentVector MomentVector::appended(const Rational& value) const {
    MomentVector v = *this;
    if (is_rational()) {
        std::get<std::vector<Rational>>(v.entries_).push_back(value);
    } else {
        auto& e = std::get<std::vector<GroupElement>>(v.entries_);
        e.push_back(GroupElement::from_rational(e.front().group(), value));
    }
    return v;
}

MomentVector MomentVector::appended(const GroupElement& value) const {
    if (is_rational()) {
        // promote rational storage into the element's group
        std::vector<GroupElement> entries;
        entries.reserve(size() + 1);
        for (const auto& q : rationals())
            entries.push_back(GroupElement::from_rational(value.group(), q));
        entries.push_back(value);
        return from_elements(std::move(entries));
    }
    MomentVector v = *this;
    std::get<std::vector<GroupElement>>(v.entries_).push_back(value);
    return v;
}

bool MomentVector::operator==(const MomentVector& other) const {
    if (size() != other.size())
        return false;
    if (is_rational() && other.is_rational())
        return rationals() == other.rationals();
    for (std::size_t i = 0; i < size(); ++i) {
        const GroupElement a = is_rational()
                                   ? GroupElement::from_rational(other.element_at(i).group(),
                                                                 rational_at(i))
                                   : element_at(i);
        const GroupElement b = other.is_rational()
                                   ? GroupElement::from_rational(element_at(i).group(),
                                                                 other.rational_at(i))
                                   : other.element_at(i);
        if (!(a == b))
            return false;
    }
    return true;
}

namespace {

template <class S>
std::vector<S> derivative_impl(const std::vector<S>& t) {
    if (t.size() < 2)
        throw TooShort("derivative needs length >= 2");
    std::vector<S> out;
    out.reserve(t.size() - 1);
    for (std::size_t k = 0; k + 1 < t.size(); ++k)
        out.push_back(t[k] - t[k + 1]);
    return out;
}

template <class S>
S iterated_difference_impl(std::vector<S> window, std::size_t j, std::size_t k) {
    if (j + k >= window.size())
        throw OutOfRange("iterated_difference: j + k exceeds N");
    for (std::size_t round = 0; round < j; ++round)
        for (std::size_t i = 0; i + round + 1 < window.size(); ++i)
            window[i] = window[i] - window[i + 1];
    return window[k];
}

} // namespace

std::vector<Rational> derivative(const std::vector<Rational>& t) {
    return derivative_impl(t);
}

std::vector<GroupElement> derivative(const std::vector<GroupElement>& t) {
    return derivative_impl(t);
}

Rational iterated_difference(const std::vector<Rational>& t, std::size_t j, std::size_t k) {
    return iterated_difference_impl(t, j, k);
}

GroupElement iterated_difference(const std::vector<GroupElement>& t, std::size_t j,
                                 std::size_t k) {
    return iterated_difference_impl(t, j, k);
}

Rational iterated_difference(const MomentVector& t, std::size_t j, std::size_t k) {
    return iterated_difference(t.rationals(), j, k);
}

GroupElement iterated_difference_element(const MomentVector& t, std::size_t j, std::size_t k) {
    if (t.is_rational())
        throw std::logic_error("iterated_difference_element on rational storage");
    return iterated_difference(t.elements(), j, k);
}

bool completely_monotone_prefix(const MomentVector& t) {
    const std::size_t n = t.size();
    if (t.is_rational()) {
        std::vector<Rational> row = t.rationals();
        for (std::size_t j = 0; j < n; ++j) {
            for (const auto& v : row)
                if (v < 0)
                    return false;
            if (row.size() == 1)
                break;
            row = derivative(row);
        }
        return true;
    }
    std::vector<GroupElement> row = t.elements();
    for (std::size_t j = 0; j < n; ++j) {
        for (const auto& v : row)
            if (v.sign() < 0)
                return false;
        if (row.size() == 1)
            break;
        row = derivative(row);
    }
    return true;
}

} // namespace momentlab
