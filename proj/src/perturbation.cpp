#include "momentlab/perturbation.hpp"

#include "momentlab/errors.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace momentlab {

namespace {

constexpr unsigned kMaxHalvings = 512;

std::vector<Rational> lebesgue_prefix(std::size_t m) {
    std::vector<Rational> out;
    out.reserve(m + 1);
    for (std::size_t n = 0; n <= m; ++n)
        out.push_back(make_rational(1, Int(n + 1)));
    return out;
}

void validate_request(const PerturbationRequest& req) {
    if (!req.subgroup)
        throw std::invalid_argument("perturbation request needs a subgroup");
    if (req.epsilons.size() != req.prefix_length)
        throw std::invalid_argument("need one epsilon per perturbed coordinate");
    for (const auto& e : req.epsilons)
        if (e <= 0)
            throw std::invalid_argument("epsilons must be strictly positive");
    if (req.total_length < req.prefix_length)
        throw std::invalid_argument("total_length must be at least the prefix length");
}

} // namespace

MomentVector request_source_prefix(const PerturbationRequest& req) {
    const std::size_t m = req.prefix_length;
    if (const Measure* mu = std::get_if<Measure>(&req.source))
        return moments_of(*mu, m);
    const MomentVector& v = std::get<MomentVector>(req.source);
    if (v.size() < m + 1)
        throw TooShort("source vector shorter than the requested prefix");
    return v.prefix(m + 1);
}

InteriorizeResult interiorize(const MomentVector& s, std::size_t m,
                              const std::optional<std::vector<Rational>>& half_band) {
    if (s.size() < m + 1)
        throw TooShort("interiorize: source shorter than m+1");
    if (!s.is_rational())
        throw std::invalid_argument("interiorize expects exact rational sources");
    if (half_band && half_band->size() != m)
        throw std::invalid_argument("interiorize: band size must equal m");
    const MomentVector prefix = s.prefix(m + 1);

    const MembershipResult mr = membership(prefix);
    if (mr.verdict == Verdict::Outside)
        throw NotAMomentVector("interiorize: source prefix lies outside the moment body");
    if (mr.verdict == Verdict::Interior)
        return {prefix, mr.certificate->min_pivot(), Rational(0)};

    const std::vector<Rational> ell = lebesgue_prefix(m);
    const std::vector<Rational>& src = prefix.rationals();
    Rational theta(1, 2);
    for (unsigned round = 0;; ++round) {
        if (round > kMaxHalvings)
            throw PrecisionExhausted("interiorize: no admissible mixing weight found");
        bool ok = true;
        if (half_band) {
            for (std::size_t j = 1; j <= m && ok; ++j)
                if (theta * abs(ell[j] - src[j]) > (*half_band)[j - 1])
                    ok = false;
        }
        if (ok)
            break;
        theta /= 2;
    }
    std::vector<Rational> mixed(m + 1);
    for (std::size_t j = 0; j <= m; ++j)
        mixed[j] = (1 - theta) * src[j] + theta * ell[j];
    const MomentVector out = MomentVector::from_rationals(std::move(mixed));
    const MembershipResult check = membership(out);
    if (check.verdict != Verdict::Interior)
        throw std::logic_error("interiorize: convex mix failed to land interior");
    return {out, check.certificate->min_pivot(), theta};
}

MomentVector perturb_prefix(const PerturbationRequest& req) {
    validate_request(req);
    const std::size_t m = req.prefix_length;
    const MomentVector source = request_source_prefix(req);

    std::vector<Rational> half_band;
    half_band.reserve(m);
    for (const auto& e : req.epsilons)
        half_band.push_back(e / 2);
    const InteriorizeResult base = interiorize(source, m, half_band);
    const std::vector<Rational>& star = base.vector.rationals();

    std::vector<Rational> radius = half_band;
    for (unsigned round = 0;; ++round) {
        if (round > kMaxHalvings)
            throw PrecisionExhausted("perturb_prefix: rounding radius exhausted");
        std::vector<Rational> candidate;
        candidate.reserve(m + 1);
        candidate.push_back(Rational(1));
        for (std::size_t j = 1; j <= m; ++j) {
            const GroupElement e = round_into(req.subgroup, star[j], star[j] - radius[j - 1],
                                              star[j] + radius[j - 1]);
            candidate.push_back(e.rational_value());
        }
        MomentVector t = MomentVector::from_rationals(std::move(candidate));
        if (membership(t).verdict == Verdict::Interior)
            return t;
        for (auto& r : radius)
            r /= 2;
    }
}

MomentVector extend(const MomentVector& t, const SubgroupPtr& G, std::size_t upto,
                    const std::optional<Int>& max_denominator) {
    MomentVector out = t;
    while (out.size() <= upto) {
        const ExtensionInterval window = extension_interval(out);
        const GroupElement next =
            round_into(G, window.midpoint(), window.lo, window.hi, max_denominator);
        if (next.is_rational() && out.is_rational())
            out = out.appended(next.rational_value());
        else
            out = out.appended(next);
    }
    return out;
}

namespace {

PerturbationResult finish_result(MomentVector sequence, const MomentVector& source_prefix,
                                 std::size_t m) {
    PerturbationResult result;
    result.deviations.reserve(m);
    for (std::size_t j = 1; j <= m; ++j) {
        if (sequence.is_rational()) {
            result.deviations.push_back(
                abs(sequence.rational_at(j) - source_prefix.rational_at(j)));
        } else {
            const GroupElement diff =
                sequence.element_at(j) -
                GroupElement::from_rational(sequence.element_at(j).group(),
                                            source_prefix.rational_at(j));
            const Enclosure e = diff.enclose(64);
            const Rational a = abs(e.lo);
            const Rational b = abs(e.hi);
            result.deviations.push_back(std::max(a, b));
        }
    }
    for (std::size_t len = 2; len <= sequence.size(); ++len) {
        const MembershipResult mr = membership(sequence.prefix(len));
        if (mr.verdict != Verdict::Interior)
            throw std::logic_error("perturbation produced a non-interior prefix");
        result.certificates.push_back(*mr.certificate);
    }
    result.sequence = std::move(sequence);
    return result;
}

} // namespace

PerturbationResult perturb(const PerturbationRequest& req) {
    validate_request(req);
    const MomentVector source = request_source_prefix(req);
    MomentVector seq = perturb_prefix(req);
    seq = extend(seq, req.subgroup, req.total_length);
    return finish_result(std::move(seq), source, req.prefix_length);
}

PerturbationResult perturb_independent(const PerturbationRequest& req) {
    validate_request(req);
    if (!req.independent)
        throw std::invalid_argument("perturb_independent needs independent = true");
    const SubgroupPtr& G = req.subgroup;
    if (G->kind != SubgroupDescriptor::Kind::GeneratedGroup)
        throw std::invalid_argument("independent mode needs a generated group");
    const std::size_t N = req.total_length;
    if (G->generators.size() < N + 1)
        throw std::invalid_argument("independent mode needs at least N+1 generators");
    // fresh generators must be genuinely irrational and pairwise independent
    std::set<Int> radicands;
    for (std::size_t n = 1; n <= N; ++n) {
        const RealGenerator& g = G->generators[n];
        if (g.index == 1)
            throw std::invalid_argument("generator '" + g.symbol + "' is rational");
        if (!radicands.insert(g.index).second)
            throw std::invalid_argument("generators share the radicand " + g.index.str());
    }

    const std::size_t m = req.prefix_length;
    const MomentVector source = request_source_prefix(req);
    std::vector<Rational> half_band;
    for (const auto& e : req.epsilons)
        half_band.push_back(e / 2);
    const InteriorizeResult base = interiorize(source, m, half_band);
    const std::vector<Rational>& star = base.vector.rationals();

    MomentVector seq =
        MomentVector::from_elements({GroupElement::from_rational(G, Rational(1))});
    for (std::size_t n = 1; n <= N; ++n) {
        const ExtensionInterval window = extension_interval(seq);
        Rational lo = window.lo;
        Rational hi = window.hi;
        if (n <= m) { // stay inside the deviation band around the source
            const Rational band_lo = source.rational_at(n) - req.epsilons[n - 1];
            const Rational band_hi = source.rational_at(n) + req.epsilons[n - 1];
            lo = std::max(lo, band_lo);
            hi = std::min(hi, band_hi);
            if (!(lo < hi))
                throw PrecisionExhausted(
                    "perturb_independent: deviation band misses the extension interval");
        }
        // anchor at the interiorized coordinate when it fits, else centre
        const Rational anchor =
            (n <= m && lo < star[n] && star[n] < hi) ? star[n] : Rational((lo + hi) / 2);
        // aim for the middle half around the anchor so the chosen value
        // keeps a healthy distance from both interval ends
        const Rational gap_lo = anchor - lo;
        const Rational gap_hi = hi - anchor;
        const Rational room = std::min(gap_lo, gap_hi) / 2;
        const GroupElement alpha(
            G, std::map<std::string, Rational>{{G->generators[n].symbol, Rational(1)}});
        const GroupElement base_term = GroupElement::from_rational(G, anchor);
        GroupElement chosen = base_term;
        bool found = false;
        Rational c(1, 2);
        for (unsigned k = 1; k <= kMaxHalvings; ++k, c /= 2) {
            const GroupElement candidate = base_term + alpha.scaled(c);
            const GroupElement upper_gap =
                GroupElement::from_rational(G, anchor + room) - candidate;
            const GroupElement lower_gap =
                candidate - GroupElement::from_rational(G, anchor - room);
            if (upper_gap.sign() > 0 && lower_gap.sign() > 0) {
                chosen = candidate;
                found = true;
                break;
            }
        }
        if (!found)
            throw PrecisionExhausted("perturb_independent: no admissible coefficient found");
        seq = seq.appended(chosen);
    }

    PerturbationResult result = finish_result(std::move(seq), source, m);
    // the rank contract is part of the construction; check it here once
    for (std::size_t n = 0; n < result.sequence.size(); ++n) {
        const auto& elems = result.sequence.elements();
        if (rational_rank(std::span(elems.data(), n + 1)) != n + 1)
            throw std::logic_error("perturb_independent: rank defect");
    }
    return result;
}

} // namespace momentlab
