#include "momentlab/lp_oracle.hpp"

#include <stdexcept>

namespace momentlab {

namespace {

// Dense phase-1 tableau. Columns: grid weights, then one slack/surplus per
// row, then artificials, then the right-hand side. All rows are equalities
// with b >= 0; the initial basis is the slack where its coefficient is +1,
// an artificial otherwise. Minimizing the artificial sum to zero decides
// feasibility exactly.
struct Tableau {
    std::vector<std::vector<Rational>> rows; // each of length cols + 1 (rhs last)
    std::vector<Rational> cost;              // 1 on artificials
    std::vector<std::size_t> basis;          // basic column per row
    std::size_t cols = 0;

    Rational& rhs(std::size_t r) { return rows[r][cols]; }
};

bool simplex_phase1(Tableau& tab) {
    const std::size_t R = tab.rows.size();
    for (;;) {
        // reduced costs rc_j = c_j - sum_r c_basis[r] * T[r][j]
        std::size_t entering = tab.cols;
        for (std::size_t j = 0; j < tab.cols; ++j) {
            Rational rc = tab.cost[j];
            for (std::size_t r = 0; r < R; ++r)
                if (tab.cost[tab.basis[r]] != 0)
                    rc -= tab.cost[tab.basis[r]] * tab.rows[r][j];
            if (rc < 0) { // Bland: first improving column
                entering = j;
                break;
            }
        }
        if (entering == tab.cols)
            break; // optimal
        // ratio test, Bland tie-break on the basic column index
        std::size_t leaving = R;
        Rational best_ratio;
        for (std::size_t r = 0; r < R; ++r) {
            if (tab.rows[r][entering] <= 0)
                continue;
            const Rational ratio = tab.rhs(r) / tab.rows[r][entering];
            if (leaving == R || ratio < best_ratio ||
                (ratio == best_ratio && tab.basis[r] < tab.basis[leaving])) {
                leaving = r;
                best_ratio = ratio;
            }
        }
        if (leaving == R)
            throw std::logic_error("phase-1 simplex: unbounded objective");
        // pivot
        const Rational pivot = tab.rows[leaving][entering];
        for (auto& v : tab.rows[leaving])
            v /= pivot;
        for (std::size_t r = 0; r < R; ++r) {
            if (r == leaving || tab.rows[r][entering] == 0)
                continue;
            const Rational f = tab.rows[r][entering];
            for (std::size_t j = 0; j <= tab.cols; ++j)
                tab.rows[r][j] -= f * tab.rows[leaving][j];
        }
        tab.basis[leaving] = entering;
    }
    Rational objective = 0;
    for (std::size_t r = 0; r < R; ++r)
        if (tab.cost[tab.basis[r]] != 0)
            objective += tab.cost[tab.basis[r]] * tab.rhs(r);
    return objective == 0;
}

} // namespace

LpResult lp_feasible(const std::vector<Rational>& t, long grid_size, const Rational& tolerance) {
    if (t.empty())
        throw std::invalid_argument("lp_feasible needs a non-empty vector");
    if (tolerance < 0)
        throw std::invalid_argument("lp_feasible needs tolerance >= 0");
    if (grid_size < static_cast<long>(t.size()))
        throw std::invalid_argument("lp_feasible needs grid_size >= N+1");

    const std::size_t N = t.size() - 1;
    const std::size_t W = static_cast<std::size_t>(grid_size) + 1; // weight columns

    // powers[n][j] = (j/grid)^n
    std::vector<std::vector<Rational>> powers(N + 1, std::vector<Rational>(W));
    for (std::size_t j = 0; j < W; ++j)
        powers[0][j] = 1;
    for (std::size_t n = 1; n <= N; ++n)
        for (std::size_t j = 0; j < W; ++j)
            powers[n][j] = powers[n - 1][j] * make_rational(Int(j), Int(grid_size));

    // Row set: for each n, an upper row (<= t_n + tol) and, unless slack at
    // zero already covers it, a lower row (>= t_n - tol). Lower rows with a
    // non-positive bound are vacuous and dropped.
    struct RowSpec {
        std::size_t n;
        bool upper;
        Rational bound;
    };
    std::vector<RowSpec> specs;
    for (std::size_t n = 0; n <= N; ++n) {
        const Rational ub = t[n] + tolerance;
        if (ub < 0)
            return {}; // sum of non-negative terms cannot be below zero
        specs.push_back({n, true, ub});
        const Rational lb = t[n] - tolerance;
        if (lb > 0)
            specs.push_back({n, false, lb});
    }

    const std::size_t R = specs.size();
    std::size_t artificials = 0;
    for (const auto& s : specs)
        if (!s.upper)
            ++artificials;

    Tableau tab;
    tab.cols = W + R + artificials;
    tab.cost.assign(tab.cols, Rational(0));
    tab.rows.assign(R, std::vector<Rational>(tab.cols + 1, Rational(0)));
    tab.basis.assign(R, 0);

    std::size_t art_next = W + R;
    for (std::size_t r = 0; r < R; ++r) {
        const auto& s = specs[r];
        for (std::size_t j = 0; j < W; ++j)
            tab.rows[r][j] = powers[s.n][j];
        tab.rhs(r) = s.bound;
        if (s.upper) {
            tab.rows[r][W + r] = 1; // slack
            tab.basis[r] = W + r;
        } else {
            tab.rows[r][W + r] = -1; // surplus
            tab.rows[r][art_next] = 1;
            tab.cost[art_next] = 1;
            tab.basis[r] = art_next;
            ++art_next;
        }
    }

    if (!simplex_phase1(tab))
        return {};

    GridWitness witness;
    witness.grid_size = grid_size;
    witness.tolerance = tolerance;
    witness.weights.assign(W, Rational(0));
    for (std::size_t r = 0; r < tab.rows.size(); ++r)
        if (tab.basis[r] < W)
            witness.weights[tab.basis[r]] = tab.rhs(r);
    // sanity: the witness must satisfy every tolerance bound exactly
    for (std::size_t n = 0; n <= N; ++n) {
        Rational acc = 0;
        for (std::size_t j = 0; j < W; ++j)
            if (witness.weights[j] != 0)
                acc += witness.weights[j] * powers[n][j];
        if (abs(acc - t[n]) > tolerance)
            throw std::logic_error("simplex produced an invalid witness");
    }
    return {true, std::move(witness)};
}

LpResult lp_feasible(const MomentVector& t, long grid_size, const Rational& tolerance) {
    const MomentVector v = t.normalized();
    if (!v.is_rational())
        throw std::invalid_argument("lp_feasible needs rational moments");
    return lp_feasible(v.rationals(), grid_size, tolerance);
}

} // namespace momentlab
