#include "momentlab/subgroup.hpp"

#include "momentlab/errors.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace momentlab {

RealGenerator RealGenerator::one() {
    return {"1", Rational(1), Int(1)};
}

RealGenerator RealGenerator::sqrt_of(const Rational& radicand, std::string symbol) {
    if (radicand <= 0)
        throw std::invalid_argument("sqrt generator needs a positive radicand");
    // sqrt(p/q) = sqrt(p*q)/q; split p*q = s^2 * d with d squarefree.
    const Int p = numerator(radicand);
    const Int q = denominator(radicand);
    auto [s, d] = squarefree_decompose(p * q);
    RealGenerator g;
    g.scale = make_rational(s, q);
    g.index = d;
    if (!symbol.empty()) {
        g.symbol = std::move(symbol);
    } else {
        std::ostringstream name;
        if (denominator(radicand) == 1)
            name << "sqrt" << numerator(radicand);
        else
            name << "sqrt(" << format_rational(radicand) << ")";
        g.symbol = name.str();
    }
    return g;
}

Enclosure RealGenerator::enclose(unsigned bits) const {
    if (index == 1)
        return Enclosure::point(scale);
    return momentlab::scale(scale, sqrt_enclosure(index, bits));
}

SubgroupDescriptor SubgroupDescriptor::prime_power_ring(std::vector<Int> primes) {
    if (primes.empty())
        throw std::invalid_argument("PrimePowerRing needs at least one prime");
    std::set<Int> seen;
    for (const Int& p : primes) {
        if (p < 2)
            throw std::invalid_argument("PrimePowerRing primes must be >= 2");
        if (!seen.insert(p).second)
            throw std::invalid_argument("PrimePowerRing primes must be distinct");
    }
    SubgroupDescriptor g;
    g.kind = Kind::PrimePowerRing;
    g.primes = std::move(primes);
    std::sort(g.primes.begin(), g.primes.end());
    return g;
}

SubgroupDescriptor SubgroupDescriptor::rationals() {
    SubgroupDescriptor g;
    g.kind = Kind::FullRationals;
    return g;
}

SubgroupDescriptor SubgroupDescriptor::generated(std::vector<RealGenerator> generators) {
    SubgroupDescriptor g;
    g.kind = Kind::GeneratedGroup;
    g.generators.push_back(RealGenerator::one());
    std::set<std::string> seen{"1"};
    for (auto& gen : generators) {
        if (gen.symbol == "1")
            continue; // the unit is always present
        if (!seen.insert(gen.symbol).second)
            throw std::invalid_argument("duplicate generator symbol '" + gen.symbol + "'");
        g.generators.push_back(std::move(gen));
    }
    return g;
}

const RealGenerator* SubgroupDescriptor::find_generator(const std::string& symbol) const {
    for (const auto& g : generators)
        if (g.symbol == symbol)
            return &g;
    return nullptr;
}

SubgroupDescriptor SubgroupDescriptor::parse(const std::string& spec) {
    if (spec == "Q" || spec == "q")
        return rationals();
    if (spec.rfind("Z[", 0) == 0 && spec.back() == ']') {
        std::vector<Int> primes;
        std::string inner = spec.substr(2, spec.size() - 3);
        std::size_t pos = 0;
        while (pos < inner.size()) {
            auto comma = inner.find(',', pos);
            if (comma == std::string::npos)
                comma = inner.size();
            std::string tok = inner.substr(pos, comma - pos);
            if (tok.rfind("1/", 0) != 0)
                throw std::invalid_argument("group spec: expected 1/p entries in " + spec);
            primes.emplace_back(tok.substr(2));
            pos = comma + 1;
        }
        return prime_power_ring(std::move(primes));
    }
    if (spec.rfind("gen:", 0) == 0) {
        std::vector<RealGenerator> gens;
        std::string inner = spec.substr(4);
        std::size_t pos = 0;
        while (pos < inner.size()) {
            auto comma = inner.find(',', pos);
            if (comma == std::string::npos)
                comma = inner.size();
            std::string tok = inner.substr(pos, comma - pos);
            if (tok == "1") {
                // implicit anyway
            } else if (tok.rfind("sqrt", 0) == 0) {
                gens.push_back(RealGenerator::sqrt_of(parse_rational(tok.substr(4)), tok));
            } else {
                throw std::invalid_argument("group spec: unknown generator '" + tok + "'");
            }
            pos = comma + 1;
        }
        return generated(std::move(gens));
    }
    throw std::invalid_argument("unrecognized group spec '" + spec + "'");
}

std::string SubgroupDescriptor::to_string() const {
    switch (kind) {
    case Kind::FullRationals:
        return "Q";
    case Kind::PrimePowerRing: {
        std::string out = "Z[";
        for (std::size_t i = 0; i < primes.size(); ++i) {
            if (i)
                out += ',';
            out += "1/" + primes[i].str();
        }
        return out + "]";
    }
    case Kind::GeneratedGroup: {
        std::string out = "gen:";
        bool first = true;
        for (const auto& g : generators) {
            if (g.symbol == "1")
                continue;
            if (!first)
                out += ',';
            out += g.symbol;
            first = false;
        }
        return out;
    }
    }
    return {};
}

GroupElement::GroupElement(SubgroupPtr group, std::map<std::string, Rational> coords)
    : group_(std::move(group)) {
    if (!group_)
        throw std::invalid_argument("GroupElement needs a descriptor");
    for (auto& [symbol, coeff] : coords) {
        if (coeff == 0)
            continue;
        if (group_->kind == SubgroupDescriptor::Kind::GeneratedGroup) {
            if (!group_->find_generator(symbol))
                throw std::invalid_argument("unknown generator '" + symbol + "'");
        } else if (symbol != "1") {
            throw std::invalid_argument("rational groups only have the generator '1'");
        }
        coords_.emplace(symbol, coeff);
    }
}

GroupElement GroupElement::from_rational(SubgroupPtr group, const Rational& value) {
    std::map<std::string, Rational> coords;
    if (value != 0)
        coords.emplace("1", value);
    return GroupElement(std::move(group), std::move(coords));
}

std::map<Int, Rational> GroupElement::canonical_coords() const {
    std::map<Int, Rational> out;
    for (const auto& [symbol, coeff] : coords_) {
        Int index = 1;
        Rational scale = 1;
        if (group_->kind == SubgroupDescriptor::Kind::GeneratedGroup) {
            const RealGenerator* g = group_->find_generator(symbol);
            index = g->index;
            scale = g->scale;
        }
        Rational& slot = out[index];
        slot += coeff * scale;
        if (slot == 0)
            out.erase(index);
    }
    return out;
}

bool GroupElement::is_rational() const {
    for (const auto& [index, coeff] : canonical_coords())
        if (index != 1 && coeff != 0)
            return false;
    return true;
}

Rational GroupElement::rational_value() const {
    Rational out = 0;
    for (const auto& [index, coeff] : canonical_coords()) {
        if (index != 1)
            throw std::logic_error("rational_value on an irrational element");
        out = coeff;
    }
    return out;
}

bool GroupElement::is_zero() const {
    return canonical_coords().empty();
}

int GroupElement::sign() const {
    const auto canon = canonical_coords();
    if (canon.empty())
        return 0;
    if (canon.size() == 1 && canon.begin()->first == 1)
        return canon.begin()->second > 0 ? 1 : -1;
    // Nonzero by Q-independence of square roots of distinct squarefree
    // integers; refine until the enclosure separates from zero.
    for (unsigned bits = 16; bits <= 4096; bits *= 2) {
        Enclosure e = enclose(bits);
        if (e.strictly_positive())
            return 1;
        if (e.strictly_negative())
            return -1;
    }
    throw PrecisionExhausted("sign refinement cap reached");
}

namespace {

GroupElement combine(const GroupElement& a, const GroupElement& b, int sign_b) {
    if (a.group() && b.group() && !(*a.group() == *b.group()))
        throw MixedDescriptors("group elements from different descriptors");
    std::map<std::string, Rational> coords = a.coords();
    for (const auto& [symbol, coeff] : b.coords()) {
        Rational& slot = coords[symbol];
        slot += sign_b > 0 ? coeff : -coeff;
        if (slot == 0)
            coords.erase(symbol);
    }
    return GroupElement(a.group() ? a.group() : b.group(), std::move(coords));
}

} // namespace

GroupElement GroupElement::operator+(const GroupElement& other) const {
    return combine(*this, other, +1);
}

GroupElement GroupElement::operator-(const GroupElement& other) const {
    return combine(*this, other, -1);
}

GroupElement GroupElement::operator-() const {
    std::map<std::string, Rational> coords;
    for (const auto& [symbol, coeff] : coords_)
        coords.emplace(symbol, -coeff);
    return GroupElement(group_, std::move(coords));
}

GroupElement GroupElement::scaled(const Rational& c) const {
    std::map<std::string, Rational> coords;
    if (c != 0)
        for (const auto& [symbol, coeff] : coords_)
            coords.emplace(symbol, c * coeff);
    return GroupElement(group_, std::move(coords));
}

bool GroupElement::operator==(const GroupElement& other) const {
    return (*this - other).is_zero();
}

bool GroupElement::less_than(const Rational& q) const {
    return (*this - GroupElement::from_rational(group_, q)).sign() < 0;
}

bool GroupElement::greater_than(const Rational& q) const {
    return (*this - GroupElement::from_rational(group_, q)).sign() > 0;
}

Enclosure GroupElement::enclose(unsigned bits) const {
    Enclosure total = Enclosure::point(Rational(0));
    for (const auto& [index, coeff] : canonical_coords()) {
        if (index == 1) {
            total = total + Enclosure::point(coeff);
        } else {
            total = total + scale(coeff, sqrt_enclosure(index, bits));
        }
    }
    return total;
}

bool contains(const SubgroupDescriptor& G, const Rational& x) {
    switch (G.kind) {
    case SubgroupDescriptor::Kind::FullRationals:
    case SubgroupDescriptor::Kind::GeneratedGroup:
        // every group here contains 1 and is closed under rational multiples
        return true;
    case SubgroupDescriptor::Kind::PrimePowerRing: {
        Int den = denominator(x);
        for (const Int& p : G.primes)
            while (den % p == 0)
                den /= p;
        return den == 1;
    }
    }
    return false;
}

bool contains(const SubgroupDescriptor& G, const GroupElement& x) {
    if (x.is_rational())
        return contains(G, x.rational_value());
    if (G.kind != SubgroupDescriptor::Kind::GeneratedGroup)
        return false;
    for (const auto& [symbol, coeff] : x.coords())
        if (coeff != 0 && !G.find_generator(symbol))
            return false;
    return true;
}

namespace {

/// Ascending enumeration of the denominator set of G: products of the
/// ring's primes for PrimePowerRing, all positive integers otherwise.
class DenominatorStream {
public:
    explicit DenominatorStream(const SubgroupDescriptor& G) {
        if (G.kind == SubgroupDescriptor::Kind::PrimePowerRing) {
            primes_ = G.primes;
            frontier_.insert(Int(1));
        } else {
            next_ = 1;
        }
    }

    Int next() {
        if (frontier_.empty())
            return next_++;
        Int d = *frontier_.begin();
        frontier_.erase(frontier_.begin());
        for (const Int& p : primes_)
            frontier_.insert(d * p);
        return d;
    }

private:
    std::vector<Int> primes_;
    std::set<Int> frontier_;
    Int next_ = 0;
};

} // namespace

GroupElement round_into(const SubgroupPtr& G, const Rational& target, const Rational& lo,
                        const Rational& hi, const std::optional<Int>& max_denominator) {
    if (!(lo < hi))
        throw std::invalid_argument("round_into needs a non-empty open interval");
    if (lo < target && target < hi && contains(*G, target))
        return GroupElement::from_rational(G, target);

    // Once d*(hi-lo) > 2 an interior point is guaranteed, so the scan is
    // finite even without a user cap.
    const Rational width = hi - lo;
    DenominatorStream stream(*G);
    for (;;) {
        const Int d = stream.next();
        if (max_denominator && d > *max_denominator)
            throw DepthExhausted("round_into: denominator cap " + max_denominator->str() +
                                 " reached before finding a point");
        // integers strictly inside (lo*d, hi*d)
        Int klo = floor_rational(lo * d) + 1;
        Int khi = ceil_rational(hi * d) - 1;
        if (Rational(klo) == lo * d)
            ++klo;
        if (Rational(khi) == hi * d)
            --khi;
        if (klo > khi)
            continue;
        // nearest numerator to target*d, ties toward the smaller one
        const Rational td = target * d;
        Int k = floor_rational(td);
        if (td - k > Rational(k + 1) - td)
            ++k;
        k = std::max(klo, std::min(khi, k));
        return GroupElement::from_rational(G, make_rational(k, d));
    }
}

Enclosure eval(const GroupElement& x, const Rational& width) {
    if (width <= 0)
        throw std::invalid_argument("eval needs width > 0");
    const auto canon = x.canonical_coords();
    std::size_t irrational_terms = 0;
    for (const auto& [index, coeff] : canon)
        if (index != 1)
            ++irrational_terms;
    if (irrational_terms == 0) {
        Rational v = 0;
        auto it = canon.find(Int(1));
        if (it != canon.end())
            v = it->second;
        return Enclosure::point(v);
    }
    // Per-term budget width/terms; choose bits with |coeff| * 2^-bits small
    // enough for each term.
    Enclosure total = Enclosure::point(Rational(0));
    const Rational budget = width / Rational(irrational_terms);
    for (const auto& [index, coeff] : canon) {
        if (index == 1) {
            total = total + Enclosure::point(coeff);
            continue;
        }
        const Rational need = budget / abs(coeff); // target width for sqrt enclosure
        unsigned bits = 1;
        Int t = ceil_rational(1 / need);
        while ((Int(1) << bits) < t)
            ++bits;
        total = total + scale(coeff, sqrt_enclosure(index, bits));
    }
    return total;
}

std::size_t rational_rank(std::span<const GroupElement> xs) {
    if (xs.empty())
        return 0;
    const SubgroupPtr& g0 = xs.front().group();
    std::set<Int> basis;
    for (const auto& x : xs) {
        if (!(*x.group() == *g0))
            throw MixedDescriptors("rational_rank: inputs from different descriptors");
        for (const auto& [index, coeff] : x.canonical_coords())
            basis.insert(index);
    }
    std::vector<Int> axes(basis.begin(), basis.end());
    std::vector<std::vector<Rational>> rows;
    rows.reserve(xs.size());
    for (const auto& x : xs) {
        std::vector<Rational> row(axes.size(), Rational(0));
        const auto canon = x.canonical_coords();
        for (std::size_t j = 0; j < axes.size(); ++j) {
            auto it = canon.find(axes[j]);
            if (it != canon.end())
                row[j] = it->second;
        }
        rows.push_back(std::move(row));
    }
    // row echelon, exact
    std::size_t rank = 0;
    for (std::size_t col = 0; col < axes.size() && rank < rows.size(); ++col) {
        std::size_t pivot = rank;
        while (pivot < rows.size() && rows[pivot][col] == 0)
            ++pivot;
        if (pivot == rows.size())
            continue;
        std::swap(rows[rank], rows[pivot]);
        for (std::size_t i = rank + 1; i < rows.size(); ++i) {
            if (rows[i][col] == 0)
                continue;
            const Rational f = rows[i][col] / rows[rank][col];
            for (std::size_t j = col; j < axes.size(); ++j)
                rows[i][j] -= f * rows[rank][j];
        }
        ++rank;
    }
    return rank;
}

} // namespace momentlab
