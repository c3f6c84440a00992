#pragma once

#include "momentlab/moment_vector.hpp"

#include <optional>
#include <vector>

namespace momentlab {

enum class Verdict { Interior, Boundary, Outside };
enum class Classification { Trivial, NonTrivial };

/// Which of the two Hankel-type quadratic forms a statement refers to:
/// Lower also bounds the next term from below, Upper from above.
enum class Form { Lower, Upper };

/// Strict positive-definiteness witness: the elimination pivots of both
/// forms. For irrational entries the pivots are certified rational lower
/// bounds; either way all entries are strictly positive.
struct InteriorCertificate {
    std::vector<Rational> pivots_lower;
    std::vector<Rational> pivots_upper;

    Rational min_pivot() const;
};

/// Witness of a failed positive-semidefiniteness condition: the index of
/// the offending pivot in one of the forms and a certified bound on it
/// (an exact value for rational input, a negative upper bound otherwise).
struct OutsideWitness {
    Form form = Form::Lower;
    std::size_t pivot_index = 0;
    Rational pivot_bound;
};

struct MembershipResult {
    Verdict verdict = Verdict::Boundary;
    std::optional<InteriorCertificate> certificate; // Interior only
    std::optional<OutsideWitness> witness;          // Outside only
};

/// Open interval of values s for which (t, s) stays Interior. Exact for
/// rational vectors; a certified inner approximation for irrational ones.
struct ExtensionInterval {
    Rational lo;
    Rational hi;
    Rational midpoint() const { return (lo + hi) / 2; }
};

/// Decides (t(0),...,t(N)) against the truncated moment body: Interior,
/// Boundary, or Outside, with certificate/witness. For irrational entries
/// pivot signs are certified by enclosure refinement; precision_cap_bits
/// bounds the refinement (PrecisionExhausted beyond it).
MembershipResult membership(const MomentVector& t, unsigned precision_cap_bits = 256);

/// Requires membership(t) = Interior (else NotInterior).
ExtensionInterval extension_interval(const MomentVector& t, unsigned precision_cap_bits = 256);

/// NonTrivial iff t(2) < t(1). Requires length >= 3 (TooShort) and
/// membership != Outside (NotAMomentVector).
Classification classify(const MomentVector& t);

} // namespace momentlab
