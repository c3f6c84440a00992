#pragma once

#include "momentlab/measures.hpp"
#include "momentlab/membership.hpp"
#include "momentlab/moment_vector.hpp"
#include "momentlab/subgroup.hpp"

#include <optional>
#include <variant>
#include <vector>

namespace momentlab {

/// Perturb the first m+1 terms of `source` into the subgroup within the
/// given deviation bounds, then extend term by term, keeping every prefix
/// strictly interior. `independent` additionally forces Q-independent terms
/// (needs a GeneratedGroup with at least total_length+1 generators).
struct PerturbationRequest {
    std::variant<Measure, MomentVector> source;
    std::size_t prefix_length = 0; // m
    std::vector<Rational> epsilons; // one per j = 1..m, all > 0
    SubgroupPtr subgroup;
    std::size_t total_length = 0; // N >= m
    bool independent = false;
};

struct PerturbationResult {
    MomentVector sequence; // length N+1
    std::vector<InteriorCertificate> certificates; // prefixes of length 2..N+1
    std::vector<Rational> deviations; // upper bounds on |t_j - s_j|, j = 1..m
};

struct InteriorizeResult {
    MomentVector vector;
    Rational margin; // minimum certificate pivot
    Rational theta;  // mixing weight toward the Lebesgue moments
};

/// Pushes a Boundary prefix strictly inside by mixing with the Lebesgue
/// moments: the largest theta in {1/2, 1/4, ...} keeping every coordinate
/// within the per-coordinate half band (when given). Interior input is
/// returned unchanged with theta = 0.
InteriorizeResult interiorize(const MomentVector& s, std::size_t m,
                              const std::optional<std::vector<Rational>>& half_band = {});

/// The prefix step of the perturbation: all entries in G, |t_j - s_j| <
/// eps_j, every prefix Interior. Rounding radii halve until the
/// positive-definiteness certificate survives (PrecisionExhausted after
/// 512 halvings).
MomentVector perturb_prefix(const PerturbationRequest& req);

/// Extends an Interior vector through `upto` by rounding each extension
/// interval's midpoint into G.
MomentVector extend(const MomentVector& t, const SubgroupPtr& G, std::size_t upto,
                    const std::optional<Int>& max_denominator = {});

PerturbationResult perturb(const PerturbationRequest& req);
PerturbationResult perturb_independent(const PerturbationRequest& req);

/// The source moments (s_0, ..., s_m) of a request.
MomentVector request_source_prefix(const PerturbationRequest& req);

} // namespace momentlab
