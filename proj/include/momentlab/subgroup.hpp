#pragma once

#include "momentlab/enclosure.hpp"
#include "momentlab/rational.hpp"

#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace momentlab {

/// A generator of an additive subgroup of R: either the constant 1 or the
/// square root of a positive rational. Square roots are canonicalized to
/// scale * sqrt(index) with a squarefree integer index, so linear
/// independence over Q and exact sign decisions become syntactic.
struct RealGenerator {
    std::string symbol; // "1", "sqrt2", ...
    Rational scale;     // canonical multiplier
    Int index;          // squarefree radicand; 1 means the value is rational

    static RealGenerator one();
    static RealGenerator sqrt_of(const Rational& radicand, std::string symbol = {});

    bool is_rational() const { return index == 1; }
    /// Encloses the generator's value with width at most 2^-bits.
    Enclosure enclose(unsigned bits) const;

    bool operator==(const RealGenerator& other) const = default;
};

/// Describes a dense subgroup of the reals containing 1.
struct SubgroupDescriptor {
    enum class Kind { PrimePowerRing, FullRationals, GeneratedGroup };

    Kind kind = Kind::FullRationals;
    std::vector<Int> primes;               // PrimePowerRing only, distinct
    std::vector<RealGenerator> generators; // GeneratedGroup only, "1" first

    static SubgroupDescriptor prime_power_ring(std::vector<Int> primes);
    static SubgroupDescriptor rationals();
    static SubgroupDescriptor generated(std::vector<RealGenerator> generators);

    /// Parses the CLI mini-grammar: "Z[1/2]", "Z[1/2,1/3]", "Q",
    /// "gen:sqrt2,sqrt3". Throws std::invalid_argument on bad specs.
    static SubgroupDescriptor parse(const std::string& spec);
    std::string to_string() const;

    const RealGenerator* find_generator(const std::string& symbol) const;

    bool operator==(const SubgroupDescriptor& other) const = default;
};

using SubgroupPtr = std::shared_ptr<const SubgroupDescriptor>;

/// Element of a subgroup, stored as rational coordinates over the
/// descriptor's generators. Immutable in spirit: all operations return
/// new values. Sign and comparisons are exact.
class GroupElement {
public:
    GroupElement() = default;
    GroupElement(SubgroupPtr group, std::map<std::string, Rational> coords);

    /// The element q*1 of any group (all groups here contain the rationals).
    static GroupElement from_rational(SubgroupPtr group, const Rational& value);

    const SubgroupPtr& group() const { return group_; }
    const std::map<std::string, Rational>& coords() const { return coords_; }

    /// Coordinates over the canonical basis {sqrt(d) : d squarefree}, with
    /// d = 1 carrying the rational part.
    std::map<Int, Rational> canonical_coords() const;

    bool is_rational() const;
    Rational rational_value() const; // requires is_rational()

    bool is_zero() const;
    /// Exact sign in {-1, 0, +1}; never fails (zero is syntactic, nonzero
    /// values separate from 0 after finitely many refinements).
    int sign() const;

    GroupElement operator+(const GroupElement& other) const;
    GroupElement operator-(const GroupElement& other) const;
    GroupElement operator-() const;
    GroupElement scaled(const Rational& c) const;

    bool operator==(const GroupElement& other) const;

    /// Exact comparisons against rationals.
    bool less_than(const Rational& q) const;
    bool greater_than(const Rational& q) const;

    Enclosure enclose(unsigned bits) const;

private:
    SubgroupPtr group_;
    std::map<std::string, Rational> coords_; // zero coefficients pruned
};

/// True iff the rational x lies in the group described by G.
bool contains(const SubgroupDescriptor& G, const Rational& x);
/// True iff the element's coordinates refer only to G's generators.
bool contains(const SubgroupDescriptor& G, const GroupElement& x);

/// Picks an element of G strictly inside the open interval (lo, hi):
/// the target itself when it lies in G and in the interval; otherwise the
/// first denominator (in increasing value over the group's denominator set)
/// admitting a point in the interval wins, with the point nearest the
/// target, ties toward the smaller numerator. Throws DepthExhausted when
/// max_denominator is set and reached.
GroupElement round_into(const SubgroupPtr& G, const Rational& target, const Rational& lo,
                        const Rational& hi, const std::optional<Int>& max_denominator = {});

/// Enclosure of the element's value with width at most `width` (> 0).
Enclosure eval(const GroupElement& x, const Rational& width);

/// Rank over Q of the elements' canonical coordinate vectors, by exact
/// Gaussian elimination. Throws MixedDescriptors on inputs from different
/// descriptors.
std::size_t rational_rank(std::span<const GroupElement> xs);

} // namespace momentlab
