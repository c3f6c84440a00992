#include "momentlab/membership.hpp"

#include "momentlab/errors.hpp"

#include <algorithm>
#include <stdexcept>

namespace momentlab {

Rational InteriorCertificate::min_pivot() const {
    Rational best;
    bool found = false;
    for (const auto* list : {&pivots_lower, &pivots_upper})
        for (const auto& p : *list)
            if (!found || p < best) {
                best = p;
                found = true;
            }
    if (!found)
        throw std::logic_error("empty certificate");
    return best;
}

namespace {

using Matrix = std::vector<std::vector<Rational>>;
using IntervalMatrix = std::vector<std::vector<Enclosure>>;

// The classical truncated-Hausdorff forms. For N = 2m the Lower form is
// (t_{i+j})_{i,j<=m} and the Upper form (t_{i+j+1} - t_{i+j+2})_{i,j<=m-1};
// for N = 2m+1 the Lower form is (t_{i+j+1})_{i,j<=m} and the Upper form
// (t_{i+j} - t_{i+j+1})_{i,j<=m}. Membership = both PSD, Interior = both PD.
template <class S, class Get>
std::vector<std::vector<S>> build_form(Form which, std::size_t N, const Get& at) {
    std::size_t size = 0;
    bool shifted = false;   // entries t_{i+j+1}
    bool difference = false; // entries t_{i+j+off} - t_{i+j+off+1}
    std::size_t off = 0;
    if (N % 2 == 0) {
        const std::size_t m = N / 2;
        if (which == Form::Lower) {
            size = m + 1;
        } else {
            size = m; // may be zero
            difference = true;
            off = 1;
        }
    } else {
        const std::size_t m = (N - 1) / 2;
        if (which == Form::Lower) {
            size = m + 1;
            shifted = true;
        } else {
            size = m + 1;
            difference = true;
            off = 0;
        }
    }
    std::vector<std::vector<S>> M(size, std::vector<S>(size));
    for (std::size_t i = 0; i < size; ++i)
        for (std::size_t j = 0; j < size; ++j) {
            if (difference)
                M[i][j] = at(i + j + off) - at(i + j + off + 1);
            else
                M[i][j] = at(i + j + (shifted ? 1 : 0));
        }
    return M;
}

struct FormStatus {
    bool pd = true;
    bool psd = true;
    std::vector<Rational> pivots;   // pivots produced up to the failure point
    std::size_t fail_index = 0;
    Rational fail_value;            // offending pivot (or negative 2x2 minor)
};

// Symmetric Gaussian elimination with exact rationals. A zero pivot whose
// remaining row is zero is skipped (PSD may survive); a zero pivot with a
// nonzero row kills PSD through the negative 2x2 principal minor.
FormStatus analyze_form(Matrix M) {
    FormStatus st;
    const std::size_t n = M.size();
    for (std::size_t k = 0; k < n; ++k) {
        const Rational d = M[k][k];
        if (d < 0) {
            st.pd = st.psd = false;
            st.fail_index = k;
            st.fail_value = d;
            return st;
        }
        if (d == 0) {
            st.pd = false;
            for (std::size_t j = k + 1; j < n; ++j) {
                if (M[k][j] != 0) {
                    st.psd = false;
                    st.fail_index = k;
                    st.fail_value = -(M[k][j] * M[k][j]);
                    return st;
                }
            }
            continue; // zero row: rank-deficient but possibly PSD
        }
        st.pivots.push_back(d);
        for (std::size_t i = k + 1; i < n; ++i) {
            if (M[i][k] == 0)
                continue;
            const Rational f = M[i][k] / d;
            for (std::size_t j = i; j < n; ++j)
                M[i][j] -= f * M[k][j];
        }
        // mirror the updated upper triangle of the trailing block
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < i; ++j)
                M[i][j] = M[j][i];
    }
    return st;
}

enum class IntervalOutcome { PositiveDefinite, NotPsd, Undetermined };

struct IntervalFormStatus {
    IntervalOutcome outcome = IntervalOutcome::Undetermined;
    std::vector<Rational> pivot_lower_bounds;
    std::size_t fail_index = 0;
    Rational fail_upper_bound; // < 0 when NotPsd
};

IntervalFormStatus analyze_form_intervals(IntervalMatrix M) {
    IntervalFormStatus st;
    const std::size_t n = M.size();
    for (std::size_t k = 0; k < n; ++k) {
        const Enclosure d = M[k][k];
        if (d.strictly_negative()) {
            // leading pivots so far certified positive, so this certifies
            // a negative principal-minor ratio: not PSD
            st.outcome = IntervalOutcome::NotPsd;
            st.fail_index = k;
            st.fail_upper_bound = d.hi;
            return st;
        }
        if (!d.strictly_positive()) {
            st.outcome = IntervalOutcome::Undetermined;
            return st;
        }
        st.pivot_lower_bounds.push_back(d.lo);
        for (std::size_t i = k + 1; i < n; ++i) {
            const Enclosure f = M[i][k] / d;
            for (std::size_t j = i; j < n; ++j)
                M[i][j] = M[i][j] - f * M[k][j];
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < i; ++j)
                M[i][j] = M[j][i];
    }
    st.outcome = IntervalOutcome::PositiveDefinite;
    return st;
}

Matrix rational_form(Form which, const std::vector<Rational>& t) {
    const std::size_t N = t.size() - 1;
    return build_form<Rational>(which, N, [&](std::size_t i) { return t[i]; });
}

IntervalMatrix interval_form(Form which, const std::vector<Enclosure>& t) {
    const std::size_t N = t.size() - 1;
    return build_form<Enclosure>(which, N, [&](std::size_t i) { return t[i]; });
}

MembershipResult membership_rational(const std::vector<Rational>& t) {
    const FormStatus lower = analyze_form(rational_form(Form::Lower, t));
    MembershipResult out;
    if (!lower.psd) {
        out.verdict = Verdict::Outside;
        out.witness = OutsideWitness{Form::Lower, lower.fail_index, lower.fail_value};
        return out;
    }
    const FormStatus upper = analyze_form(rational_form(Form::Upper, t));
    if (!upper.psd) {
        out.verdict = Verdict::Outside;
        out.witness = OutsideWitness{Form::Upper, upper.fail_index, upper.fail_value};
        return out;
    }
    if (lower.pd && upper.pd) {
        out.verdict = Verdict::Interior;
        out.certificate = InteriorCertificate{lower.pivots, upper.pivots};
        return out;
    }
    out.verdict = Verdict::Boundary;
    return out;
}

MembershipResult membership_elements(const std::vector<GroupElement>& t, unsigned cap_bits) {
    for (unsigned bits = 32;; bits *= 2) {
        if (bits > cap_bits)
            throw PrecisionExhausted("membership: enclosure refinement cap reached "
                                     "(point indistinguishable from Boundary)");
        std::vector<Enclosure> enc;
        enc.reserve(t.size());
        for (const auto& e : t)
            enc.push_back(e.enclose(bits));
        const IntervalFormStatus lower = analyze_form_intervals(interval_form(Form::Lower, enc));
        if (lower.outcome == IntervalOutcome::NotPsd) {
            MembershipResult out;
            out.verdict = Verdict::Outside;
            out.witness = OutsideWitness{Form::Lower, lower.fail_index, lower.fail_upper_bound};
            return out;
        }
        const IntervalFormStatus upper = analyze_form_intervals(interval_form(Form::Upper, enc));
        if (upper.outcome == IntervalOutcome::NotPsd) {
            MembershipResult out;
            out.verdict = Verdict::Outside;
            out.witness = OutsideWitness{Form::Upper, upper.fail_index, upper.fail_upper_bound};
            return out;
        }
        if (lower.outcome == IntervalOutcome::PositiveDefinite &&
            upper.outcome == IntervalOutcome::PositiveDefinite) {
            MembershipResult out;
            out.verdict = Verdict::Interior;
            out.certificate =
                InteriorCertificate{lower.pivot_lower_bounds, upper.pivot_lower_bounds};
            return out;
        }
    }
}

// Exact solve of H x = c for PD H (no pivoting needed).
std::vector<Rational> solve_pd(Matrix H, std::vector<Rational> c) {
    const std::size_t n = H.size();
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = k + 1; i < n; ++i) {
            const Rational f = H[i][k] / H[k][k];
            for (std::size_t j = k; j < n; ++j)
                H[i][j] -= f * H[k][j];
            c[i] -= f * c[k];
        }
    }
    std::vector<Rational> x(n);
    for (std::size_t k = n; k-- > 0;) {
        Rational acc = c[k];
        for (std::size_t j = k + 1; j < n; ++j)
            acc -= H[k][j] * x[j];
        x[k] = acc / H[k][k];
    }
    return x;
}

std::vector<Enclosure> solve_pd_intervals(IntervalMatrix H, std::vector<Enclosure> c) {
    const std::size_t n = H.size();
    for (std::size_t k = 0; k < n; ++k) {
        if (H[k][k].contains_zero())
            throw std::domain_error("interval solve: pivot contains zero");
        for (std::size_t i = k + 1; i < n; ++i) {
            const Enclosure f = H[i][k] / H[k][k];
            for (std::size_t j = k; j < n; ++j)
                H[i][j] = H[i][j] - f * H[k][j];
            c[i] = c[i] - f * c[k];
        }
    }
    std::vector<Enclosure> x(n, Enclosure::point(Rational(0)));
    for (std::size_t k = n; k-- > 0;) {
        Enclosure acc = c[k];
        for (std::size_t j = k + 1; j < n; ++j)
            acc = acc - H[k][j] * x[j];
        x[k] = acc / H[k][k];
    }
    return x;
}

// The next term enters each form only in its bottom-right corner; the PD
// condition there is a scalar Schur-complement bound against the leading
// block. The Lower form yields lo, the Upper form hi.
template <class S, class Get>
void extension_pieces(std::size_t n_new, const Get& at, std::vector<std::vector<S>>& H,
                      std::vector<S>& c, std::vector<std::vector<S>>& K, std::vector<S>& b,
                      S& upper_corner) {
    if (n_new % 2 == 0) {
        const std::size_t m = n_new / 2;
        H.assign(m, std::vector<S>(m));
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j)
                H[i][j] = at(i + j);
        c.clear();
        for (std::size_t i = 0; i < m; ++i)
            c.push_back(at(i + m));
        const std::size_t mb = m >= 1 ? m - 1 : 0;
        K.assign(mb, std::vector<S>(mb));
        for (std::size_t i = 0; i < mb; ++i)
            for (std::size_t j = 0; j < mb; ++j)
                K[i][j] = at(i + j + 1) - at(i + j + 2);
        b.clear();
        for (std::size_t i = 0; i < mb; ++i)
            b.push_back(at(i + m) - at(i + m + 1));
        upper_corner = at(2 * m - 1);
    } else {
        const std::size_t m = (n_new - 1) / 2;
        H.assign(m, std::vector<S>(m));
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j)
                H[i][j] = at(i + j + 1);
        c.clear();
        for (std::size_t i = 0; i < m; ++i)
            c.push_back(at(i + m + 1));
        K.assign(m, std::vector<S>(m));
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j)
                K[i][j] = at(i + j) - at(i + j + 1);
        b.clear();
        for (std::size_t i = 0; i < m; ++i)
            b.push_back(at(i + m) - at(i + m + 1));
        upper_corner = at(2 * m);
    }
}

ExtensionInterval extension_rational(const std::vector<Rational>& t) {
    const std::size_t n_new = t.size();
    Matrix H, K;
    std::vector<Rational> c, b;
    Rational corner;
    extension_pieces<Rational>(n_new, [&](std::size_t i) { return t[i]; }, H, c, K, b, corner);
    Rational lo = 0;
    if (!H.empty()) {
        const auto x = solve_pd(H, c);
        for (std::size_t i = 0; i < c.size(); ++i)
            lo += c[i] * x[i];
    }
    Rational hi = corner;
    if (!K.empty()) {
        const auto y = solve_pd(K, b);
        Rational q = 0;
        for (std::size_t i = 0; i < b.size(); ++i)
            q += b[i] * y[i];
        hi -= q;
    }
    return {lo, hi};
}

ExtensionInterval extension_elements(const std::vector<GroupElement>& t, unsigned cap_bits) {
    for (unsigned bits = 32;; bits *= 2) {
        if (bits > cap_bits)
            throw PrecisionExhausted("extension_interval: enclosure refinement cap reached");
        std::vector<Enclosure> enc;
        enc.reserve(t.size());
        for (const auto& e : t)
            enc.push_back(e.enclose(bits));
        IntervalMatrix H, K;
        std::vector<Enclosure> c, b;
        Enclosure corner;
        extension_pieces<Enclosure>(
            t.size(), [&](std::size_t i) { return enc[i]; }, H, c, K, b, corner);
        try {
            Enclosure lo = Enclosure::point(Rational(0));
            if (!H.empty()) {
                const auto x = solve_pd_intervals(H, c);
                for (std::size_t i = 0; i < c.size(); ++i)
                    lo = lo + c[i] * x[i];
            }
            Enclosure hi = corner;
            if (!K.empty()) {
                const auto y = solve_pd_intervals(K, b);
                Enclosure q = Enclosure::point(Rational(0));
                for (std::size_t i = 0; i < b.size(); ++i)
                    q = q + b[i] * y[i];
                hi = hi - q;
            }
            // certified inner interval; refine until comfortably wide
            const Rational inner = hi.lo - lo.hi;
            const Rational outer = hi.hi - lo.lo;
            if (inner > 0 && 4 * inner >= 3 * outer)
                return {lo.hi, hi.lo};
        } catch (const std::domain_error&) {
            // pivot interval straddled zero: refine
        }
    }
}

} // namespace

MembershipResult membership(const MomentVector& t, unsigned precision_cap_bits) {
    const MomentVector v = t.normalized();
    if (v.is_rational())
        return membership_rational(v.rationals());
    return membership_elements(v.elements(), precision_cap_bits);
}

ExtensionInterval extension_interval(const MomentVector& t, unsigned precision_cap_bits) {
    const MomentVector v = t.normalized();
    const MembershipResult mr = membership(v, precision_cap_bits);
    if (mr.verdict != Verdict::Interior)
        throw NotInterior("extension_interval requires an Interior vector");
    if (v.is_rational())
        return extension_rational(v.rationals());
    return extension_elements(v.elements(), precision_cap_bits);
}

Classification classify(const MomentVector& t) {
    if (t.size() < 3)
        throw TooShort("classify needs length >= 3");
    if (membership(t).verdict == Verdict::Outside)
        throw NotAMomentVector("classify requires membership != Outside");
    if (t.is_rational())
        return t.rationals()[2] < t.rationals()[1] ? Classification::NonTrivial
                                                   : Classification::Trivial;
    const GroupElement diff = t.elements()[1] - t.elements()[2];
    return diff.sign() > 0 ? Classification::NonTrivial : Classification::Trivial;
}

} // namespace momentlab
