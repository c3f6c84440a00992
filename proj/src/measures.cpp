#include "momentlab/measures.hpp"

#include "momentlab/errors.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

namespace momentlab {

Measure Measure::lebesgue() {
    return {};
}

Measure Measure::beta(unsigned a, unsigned b) {
    if (a < 1 || b < 1)
        throw std::invalid_argument("Beta parameters must be positive integers");
    Measure m;
    m.kind = Kind::Beta;
    m.beta_a = a;
    m.beta_b = b;
    return m;
}

Measure Measure::dirac(const Rational& location) {
    return atomic({{location, Rational(1)}});
}

Measure Measure::atomic(std::vector<std::pair<Rational, Rational>> atoms) {
    if (atoms.empty())
        throw std::invalid_argument("atomic measure needs at least one atom");
    Rational total = 0;
    std::set<Rational> locations;
    for (const auto& [loc, w] : atoms) {
        if (loc < 0 || loc > 1)
            throw std::invalid_argument("atom locations must lie in [0,1]");
        if (w <= 0)
            throw std::invalid_argument("atom weights must be positive");
        if (!locations.insert(loc).second)
            throw std::invalid_argument("atom locations must be distinct");
        total += w;
    }
    if (total != 1)
        throw std::invalid_argument("atom weights must sum to 1");
    std::sort(atoms.begin(), atoms.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    Measure m;
    m.kind = Kind::Atomic;
    m.atoms = std::move(atoms);
    return m;
}

Measure random_atomic_measure(unsigned atom_count, unsigned long seed) {
    if (atom_count == 0)
        throw std::invalid_argument("need at least one atom");
    std::mt19937_64 rng(seed);
    // distinct locations k/64 shifted off the endpoints, rational weights
    std::uniform_int_distribution<int> loc_num(1, 255);
    std::uniform_int_distribution<int> w_num(1, 64);
    std::set<Rational> used;
    std::vector<std::pair<Rational, Rational>> atoms;
    while (atoms.size() < atom_count) {
        Rational loc = make_rational(loc_num(rng), 256);
        if (!used.insert(loc).second)
            continue;
        atoms.emplace_back(loc, Rational(w_num(rng)));
    }
    Rational total = 0;
    for (const auto& [loc, w] : atoms)
        total += w;
    for (auto& [loc, w] : atoms)
        w /= total;
    return Measure::atomic(std::move(atoms));
}

Measure Measure::parse(const std::string& spec, unsigned long seed) {
    if (spec == "lebesgue")
        return lebesgue();
    if (spec.rfind("beta:", 0) == 0) {
        const std::string args = spec.substr(5);
        const auto comma = args.find(',');
        if (comma == std::string::npos)
            throw std::invalid_argument("beta spec: expected beta:a,b");
        return beta(static_cast<unsigned>(std::stoul(args.substr(0, comma))),
                    static_cast<unsigned>(std::stoul(args.substr(comma + 1))));
    }
    if (spec.rfind("dirac:", 0) == 0)
        return dirac(parse_rational(spec.substr(6)));
    if (spec.rfind("atomic:", 0) == 0) {
        std::vector<std::pair<Rational, Rational>> atoms;
        const std::string args = spec.substr(7);
        std::size_t pos = 0;
        while (pos < args.size()) {
            auto comma = args.find(',', pos);
            if (comma == std::string::npos)
                comma = args.size();
            const std::string tok = args.substr(pos, comma - pos);
            const auto eq = tok.find('=');
            if (eq == std::string::npos)
                throw std::invalid_argument("atomic spec: expected loc=weight entries");
            atoms.emplace_back(parse_rational(tok.substr(0, eq)), parse_rational(tok.substr(eq + 1)));
            pos = comma + 1;
        }
        return atomic(std::move(atoms));
    }
    if (spec.rfind("random-atomic:", 0) == 0)
        return random_atomic_measure(static_cast<unsigned>(std::stoul(spec.substr(14))), seed);
    throw std::invalid_argument("unrecognized measure spec '" + spec + "'");
}

std::string Measure::to_string() const {
    switch (kind) {
    case Kind::Lebesgue:
        return "lebesgue";
    case Kind::Beta: {
        std::ostringstream out;
        out << "beta:" << beta_a << ',' << beta_b;
        return out.str();
    }
    case Kind::Atomic: {
        std::string out = "atomic:";
        for (std::size_t i = 0; i < atoms.size(); ++i) {
            if (i)
                out += ',';
            out += format_rational(atoms[i].first) + "=" + format_rational(atoms[i].second);
        }
        return out;
    }
    }
    return {};
}

MomentVector moments_of(const Measure& mu, std::size_t N) {
    std::vector<Rational> t;
    t.reserve(N + 1);
    switch (mu.kind) {
    case Measure::Kind::Lebesgue:
        for (std::size_t n = 0; n <= N; ++n)
            t.push_back(make_rational(1, Int(n + 1)));
        break;
    case Measure::Kind::Beta: {
        Rational cur = 1;
        t.push_back(cur);
        for (std::size_t n = 1; n <= N; ++n) {
            cur *= make_rational(Int(mu.beta_a + n - 1), Int(mu.beta_a + mu.beta_b + n - 1));
            t.push_back(cur);
        }
        break;
    }
    case Measure::Kind::Atomic: {
        std::vector<Rational> powers(mu.atoms.size(), Rational(1));
        for (std::size_t n = 0; n <= N; ++n) {
            Rational acc = 0;
            for (std::size_t j = 0; j < mu.atoms.size(); ++j) {
                acc += mu.atoms[j].second * powers[j];
                powers[j] *= mu.atoms[j].first;
            }
            t.push_back(acc);
        }
        break;
    }
    }
    return MomentVector::from_rationals(std::move(t));
}

Rational mixed_moment(const Measure& mu, std::size_t n, std::size_t k) {
    if (k > n)
        throw OutOfRange("mixed_moment needs 0 <= k <= n");
    switch (mu.kind) {
    case Measure::Kind::Lebesgue:
        // Beta integral: k! (n-k)! / (n+1)!
        return make_rational(factorial(static_cast<unsigned>(k)) *
                                 factorial(static_cast<unsigned>(n - k)),
                             factorial(static_cast<unsigned>(n + 1)));
    case Measure::Kind::Beta: {
        // B(a+k, b+n-k) / B(a,b) with integer a, b
        const unsigned a = mu.beta_a;
        const unsigned b = mu.beta_b;
        auto rising = [](unsigned base, unsigned count) {
            Int out = 1;
            for (unsigned i = 0; i < count; ++i)
                out *= Int(base + i);
            return out;
        };
        // Gamma(a+k)/Gamma(a) * Gamma(b+n-k)/Gamma(b) / (Gamma(a+b+n)/Gamma(a+b))
        return make_rational(rising(a, static_cast<unsigned>(k)) *
                                 rising(b, static_cast<unsigned>(n - k)),
                             rising(a + b, static_cast<unsigned>(n)));
    }
    case Measure::Kind::Atomic: {
        Rational acc = 0;
        for (const auto& [loc, w] : mu.atoms)
            acc += w * pow_rational(loc, static_cast<unsigned>(k)) *
                   pow_rational(1 - loc, static_cast<unsigned>(n - k));
        return acc;
    }
    }
    throw std::logic_error("unreachable");
}

} // namespace momentlab
