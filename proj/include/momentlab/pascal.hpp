#pragma once

#include "momentlab/moment_vector.hpp"

#include <variant>
#include <vector>

namespace momentlab {

/// Triangular array g(n,k), 0 <= k <= n <= N, satisfying the Pascal
/// relation g(n+1,k) + g(n+1,k+1) = g(n,k) exactly, with the source
/// sequence on the diagonal g(n,n) = g(n).
class PascalTable {
public:
    using RationalRows = std::vector<std::vector<Rational>>;
    using ElementRows = std::vector<std::vector<GroupElement>>;

    static PascalTable from_rational_rows(RationalRows rows);
    static PascalTable from_element_rows(ElementRows rows);

    std::size_t depth() const; // N
    bool is_rational() const;

    const RationalRows& rational_rows() const;
    const ElementRows& element_rows() const;

    Rational rational_at(std::size_t n, std::size_t k) const;
    GroupElement element_at(std::size_t n, std::size_t k) const;

    std::vector<Rational> rational_row(std::size_t n) const;
    /// The diagonal (g(0,0), ..., g(N,N)) = the source sequence.
    std::vector<Rational> rational_diagonal() const;
    std::vector<GroupElement> element_diagonal() const;

private:
    PascalTable() = default;
    std::variant<RationalRows, ElementRows> rows_;
};

/// Builds the table with entries g(n,k) = g^(n-k)(k); the recurrence is
/// re-checked exactly after construction. Throws TooShort when the source
/// has fewer than N+1 entries.
PascalTable build_table(const MomentVector& g, std::size_t N);

struct HomomorphismReport {
    bool positive = false;          // all entries >= 0
    bool strictly_positive = false; // all entries > 0
    bool faithful = false;          // positive with no zero entry
    std::vector<std::size_t> injective_prefix_ranks; // rank of (g(0)..g(n)) over Q

    bool injective() const;
};

HomomorphismReport verify_hom(const PascalTable& table);

/// Trace row (tau(e(n,0)), ..., tau(e(n,n))) = (g(n,0), ..., g(n,k)); the
/// binomial-weighted sum over the row is 1. Requires a rational vector with
/// membership != Outside and n <= N.
std::vector<Rational> gicar_trace(const MomentVector& t, std::size_t n);

} // namespace momentlab
