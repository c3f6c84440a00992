#pragma once

#include "momentlab/membership.hpp"
#include "momentlab/pascal.hpp"
#include "momentlab/rational.hpp"

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace momentlab {

/// Admissible value spacing on the cylinder of a word with a zeros and b
/// ones: 1/(2^a 3^b). Values on that cylinder are integer multiples of it.
Rational lattice_spacing(std::string_view word);

/// Locally constant function on the Cantor set, stored sparsely as a
/// prefix-free map from binary words to values (an exact partition).
class CylinderFunction {
public:
    using LeafMap = std::map<std::string, Rational>;

    static CylinderFunction constant(const Rational& value);
    /// Validates that the words form an exact partition of the Cantor set.
    static CylinderFunction from_leaves(LeafMap leaves);

    std::size_t depth() const; // max leaf depth
    const LeafMap& leaves() const { return leaves_; }

    /// Value on the cylinder of `word`; the word must be at least as deep
    /// as the function's leaf on its path.
    const Rational& value_on(std::string_view word) const;

    /// Splits every leaf until all leaves have depth >= d (value-preserving).
    CylinderFunction refined_to_depth(std::size_t d) const;
    /// Merges sibling leaves with equal values.
    CylinderFunction simplified() const;

    /// Tamper helper for verification tests: overwrite the value on an
    /// existing leaf.
    void set_leaf_value(const std::string& word, const Rational& value);

    bool operator==(const CylinderFunction& other) const = default;

private:
    LeafMap leaves_;
};

/// Lemma-4.12-style clopen selection: for each given word, a value in its
/// cylinder lattice strictly inside the word's open interval, refining a
/// cylinder (children inherit the interval) exactly when its lattice has no
/// admissible point. Within a lattice the point nearest the interval
/// midpoint wins, ties toward the smaller value.
CylinderFunction select_in_intervals(
    const std::map<std::string, std::pair<Rational, Rational>>& intervals, int depth_cap = 40);

/// Finite-depth embedding data: functions g_0 = 1, g_1, ..., g_N whose
/// per-cylinder value vectors are strictly interior truncated moment
/// sequences with all Pascal entries positive and all values on the
/// cylinder lattices.
struct EmbeddingCertificate {
    std::size_t N = 0;
    std::vector<CylinderFunction> functions; // size N+1

    std::size_t depth() const;
    /// The common refinement of all functions: each word carries the full
    /// scalar vector (g_0(w), ..., g_N(w)).
    std::vector<std::pair<std::string, std::vector<Rational>>> joint_leaves() const;

    /// Derived per-cylinder views (recomputed, not stored).
    std::vector<InteriorCertificate> interior_certificates(std::string_view word) const;
    PascalTable pascal_table(std::string_view word) const;
};

struct Violation {
    std::string kind; // "unit", "partition", "lattice", "non-trivial", ...
    std::string word;
    std::string detail;
};

struct VerificationReport {
    bool ok = false;
    std::vector<Violation> violations;
};

EmbeddingCertificate build_embedding(std::size_t N, int depth_cap = 40);
VerificationReport verify_embedding(const EmbeddingCertificate& cert);

} // namespace momentlab
