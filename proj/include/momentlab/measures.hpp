#pragma once

#include "momentlab/moment_vector.hpp"
#include "momentlab/rational.hpp"

#include <string>
#include <utility>
#include <vector>

namespace momentlab {

/// Probability measure on [0,1] with exact rational moments: finitely
/// atomic, Lebesgue, or Beta with positive integer parameters.
struct Measure {
    enum class Kind { Atomic, Lebesgue, Beta };

    Kind kind = Kind::Lebesgue;
    std::vector<std::pair<Rational, Rational>> atoms; // (location, weight)
    unsigned beta_a = 1;
    unsigned beta_b = 1;

    static Measure lebesgue();
    static Measure beta(unsigned a, unsigned b);
    static Measure dirac(const Rational& location);
    static Measure atomic(std::vector<std::pair<Rational, Rational>> atoms);

    /// Parses measure specs: "lebesgue", "beta:2,3", "dirac:1/2",
    /// "atomic:1/4=1/2,3/4=1/2", "random-atomic:4" (seeded elsewhere).
    static Measure parse(const std::string& spec, unsigned long seed = 0);
    std::string to_string() const;
};

/// Seeded random measure with `atom_count` distinct rational atoms in (0,1).
Measure random_atomic_measure(unsigned atom_count, unsigned long seed);

/// Exact moments (t(0), ..., t(N)), t(n) = integral of x^n.
MomentVector moments_of(const Measure& mu, std::size_t N);

/// Exact mixed moment t(n,k) = integral of x^k (1-x)^(n-k); needs 0<=k<=n.
Rational mixed_moment(const Measure& mu, std::size_t n, std::size_t k);

} // namespace momentlab
