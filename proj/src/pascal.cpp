#include "momentlab/pascal.hpp"

#include "momentlab/errors.hpp"
#include "momentlab/membership.hpp"

#include <stdexcept>

namespace momentlab {

PascalTable PascalTable::from_rational_rows(RationalRows rows) {
    PascalTable t;
    t.rows_ = std::move(rows);
    return t;
}

PascalTable PascalTable::from_element_rows(ElementRows rows) {
    PascalTable t;
    t.rows_ = std::move(rows);
    return t;
}

std::size_t PascalTable::depth() const {
    return std::visit([](const auto& r) { return r.size(); }, rows_) - 1;
}

bool PascalTable::is_rational() const {
    return std::holds_alternative<RationalRows>(rows_);
}

const PascalTable::RationalRows& PascalTable::rational_rows() const {
    return std::get<RationalRows>(rows_);
}

const PascalTable::ElementRows& PascalTable::element_rows() const {
    return std::get<ElementRows>(rows_);
}

Rational PascalTable::rational_at(std::size_t n, std::size_t k) const {
    return rational_rows().at(n).at(k);
}

GroupElement PascalTable::element_at(std::size_t n, std::size_t k) const {
    return element_rows().at(n).at(k);
}

std::vector<Rational> PascalTable::rational_row(std::size_t n) const {
    return rational_rows().at(n);
}

std::vector<Rational> PascalTable::rational_diagonal() const {
    std::vector<Rational> out;
    const auto& rows = rational_rows();
    out.reserve(rows.size());
    for (std::size_t n = 0; n < rows.size(); ++n)
        out.push_back(rows[n][n]);
    return out;
}

std::vector<GroupElement> PascalTable::element_diagonal() const {
    std::vector<GroupElement> out;
    const auto& rows = element_rows();
    out.reserve(rows.size());
    for (std::size_t n = 0; n < rows.size(); ++n)
        out.push_back(rows[n][n]);
    return out;
}

namespace {

template <class S>
std::vector<std::vector<S>> build_rows(const std::vector<S>& g, std::size_t N) {
    // difference triangle D[j][k] = g^(j)(k); entry g(n,k) = D[n-k][k]
    std::vector<std::vector<S>> diff;
    diff.push_back(std::vector<S>(g.begin(), g.begin() + N + 1));
    for (std::size_t j = 1; j <= N; ++j) {
        const auto& prev = diff.back();
        std::vector<S> row;
        row.reserve(prev.size() - 1);
        for (std::size_t k = 0; k + 1 < prev.size(); ++k)
            row.push_back(prev[k] - prev[k + 1]);
        diff.push_back(std::move(row));
    }
    std::vector<std::vector<S>> rows(N + 1);
    for (std::size_t n = 0; n <= N; ++n) {
        rows[n].reserve(n + 1);
        for (std::size_t k = 0; k <= n; ++k)
            rows[n].push_back(diff[n - k][k]);
    }
    // the recurrence is asserted, not assumed
    for (std::size_t n = 0; n < N; ++n)
        for (std::size_t k = 0; k <= n; ++k)
            if (!(rows[n + 1][k] + rows[n + 1][k + 1] == rows[n][k]))
                throw std::logic_error("Pascal recurrence violated");
    return rows;
}

} // namespace

PascalTable build_table(const MomentVector& g, std::size_t N) {
    if (g.size() < N + 1)
        throw TooShort("build_table needs at least N+1 entries");
    const MomentVector v = g.normalized();
    if (v.is_rational())
        return PascalTable::from_rational_rows(build_rows(v.rationals(), N));
    return PascalTable::from_element_rows(build_rows(v.elements(), N));
}

bool HomomorphismReport::injective() const {
    for (std::size_t n = 0; n < injective_prefix_ranks.size(); ++n)
        if (injective_prefix_ranks[n] != n + 1)
            return false;
    return !injective_prefix_ranks.empty();
}

HomomorphismReport verify_hom(const PascalTable& table) {
    HomomorphismReport report;
    report.positive = true;
    report.strictly_positive = true;
    bool any_zero = false;
    if (table.is_rational()) {
        for (const auto& row : table.rational_rows())
            for (const auto& v : row) {
                if (v < 0)
                    report.positive = false;
                if (v <= 0)
                    report.strictly_positive = false;
                if (v == 0)
                    any_zero = true;
            }
        // rank over Q of a rational diagonal: 1 unless everything is zero
        const auto diag = table.rational_diagonal();
        bool all_zero_prefix = true;
        for (std::size_t n = 0; n < diag.size(); ++n) {
            if (diag[n] != 0)
                all_zero_prefix = false;
            report.injective_prefix_ranks.push_back(all_zero_prefix ? 0 : 1);
        }
    } else {
        for (const auto& row : table.element_rows())
            for (const auto& v : row) {
                const int s = v.sign();
                if (s < 0)
                    report.positive = false;
                if (s <= 0)
                    report.strictly_positive = false;
                if (s == 0)
                    any_zero = true;
            }
        const auto diag = table.element_diagonal();
        for (std::size_t n = 0; n < diag.size(); ++n)
            report.injective_prefix_ranks.push_back(
                rational_rank(std::span(diag.data(), n + 1)));
    }
    report.faithful = report.positive && !any_zero;
    return report;
}

std::vector<Rational> gicar_trace(const MomentVector& t, std::size_t n) {
    if (n >= t.size())
        throw OutOfRange("gicar_trace: level exceeds the vector length");
    if (membership(t).verdict == Verdict::Outside)
        throw NotAMomentVector("gicar_trace requires membership != Outside");
    const PascalTable table = build_table(t, n);
    std::vector<Rational> row = table.rational_row(n);
    // trace normalization across the level: sum_k C(n,k) g(n,k) = 1
    Rational total = 0;
    for (std::size_t k = 0; k <= n; ++k)
        total += Rational(binomial(static_cast<unsigned>(n), static_cast<unsigned>(k))) * row[k];
    if (total != 1)
        throw std::logic_error("trace normalization failed");
    return row;
}

} // namespace momentlab
