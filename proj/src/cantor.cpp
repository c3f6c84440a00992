#include "momentlab/cantor.hpp"

#include "momentlab/errors.hpp"

#include <algorithm>
#include <cstdlib>
#include <optional>
#include <set>
#include <stdexcept>

namespace momentlab {

Rational lattice_spacing(std::string_view word) {
    Int den = 1;
    for (const char c : word) {
        if (c == '0')
            den *= 2;
        else if (c == '1')
            den *= 3;
        else
            throw std::invalid_argument("cylinder words are over {0,1}");
    }
    return make_rational(1, den);
}

CylinderFunction CylinderFunction::constant(const Rational& value) {
    CylinderFunction f;
    f.leaves_.emplace("", value);
    return f;
}

CylinderFunction CylinderFunction::from_leaves(LeafMap leaves) {
    // exact partition check: prefix-free and total mass 1 under w -> 2^-|w|
    Rational mass = 0;
    const std::string* prev = nullptr;
    for (const auto& [word, value] : leaves) {
        for (const char c : word)
            if (c != '0' && c != '1')
                throw std::invalid_argument("cylinder words are over {0,1}");
        if (prev && word.compare(0, prev->size(), *prev) == 0)
            throw std::invalid_argument("leaf words must be prefix-free");
        prev = &word;
        mass += pow_rational(Rational(1, 2), static_cast<unsigned>(word.size()));
    }
    if (mass != 1)
        throw std::invalid_argument("leaf words must partition the Cantor set");
    CylinderFunction f;
    f.leaves_ = std::move(leaves);
    return f;
}

std::size_t CylinderFunction::depth() const {
    std::size_t d = 0;
    for (const auto& [word, value] : leaves_)
        d = std::max(d, word.size());
    return d;
}

const Rational& CylinderFunction::value_on(std::string_view word) const {
    for (std::size_t len = 0; len <= word.size(); ++len) {
        const auto it = leaves_.find(std::string(word.substr(0, len)));
        if (it != leaves_.end())
            return it->second;
    }
    throw OutOfRange("word is shallower than the function's leaves on its path");
}

CylinderFunction CylinderFunction::refined_to_depth(std::size_t d) const {
    LeafMap out;
    for (const auto& [word, value] : leaves_) {
        if (word.size() >= d) {
            out.emplace(word, value);
            continue;
        }
        // expand to all descendants at depth d
        std::vector<std::string> frontier{word};
        while (!frontier.empty()) {
            std::string w = std::move(frontier.back());
            frontier.pop_back();
            if (w.size() == d) {
                out.emplace(std::move(w), value);
            } else {
                frontier.push_back(w + '0');
                frontier.push_back(w + '1');
            }
        }
    }
    return from_leaves(std::move(out));
}

CylinderFunction CylinderFunction::simplified() const {
    LeafMap cur = leaves_;
    bool changed = true;
    while (changed) {
        changed = false;
        std::vector<std::string> merges;
        for (const auto& [w, v] : cur) {
            if (w.empty() || w.back() != '0')
                continue;
            const auto sib = cur.find(w.substr(0, w.size() - 1) + '1');
            if (sib != cur.end() && sib->second == v)
                merges.push_back(w);
        }
        for (const auto& w : merges) {
            const auto it = cur.find(w);
            const Rational value = it->second;
            cur.erase(it);
            cur.erase(w.substr(0, w.size() - 1) + '1');
            cur.emplace(w.substr(0, w.size() - 1), value);
            changed = true;
        }
    }
    CylinderFunction f;
    f.leaves_ = std::move(cur);
    return f;
}

void CylinderFunction::set_leaf_value(const std::string& word, const Rational& value) {
    const auto it = leaves_.find(word);
    if (it == leaves_.end())
        throw OutOfRange("no leaf at word '" + word + "'");
    it->second = value;
}

namespace {

int env_or_default_cap(int depth_cap);

/// Lattice point of spacing sp strictly inside (lo, hi) nearest the
/// midpoint, ties toward the smaller value; nullopt when none exists.
std::optional<Rational> lattice_point_inside(const Rational& sp, const Rational& lo,
                                             const Rational& hi) {
    Int klo = floor_rational(lo / sp) + 1;
    Int khi = ceil_rational(hi / sp) - 1;
    if (Rational(klo) == lo / sp)
        ++klo;
    if (Rational(khi) == hi / sp)
        --khi;
    if (klo > khi)
        return std::nullopt;
    const Rational mid = (lo + hi) / 2 / sp;
    Int k = floor_rational(mid);
    if (mid - k > Rational(k + 1) - mid)
        ++k; // ties keep the floor, i.e. the smaller value
    k = std::max(klo, std::min(khi, k));
    return Rational(k) * sp;
}

} // namespace

CylinderFunction select_in_intervals(
    const std::map<std::string, std::pair<Rational, Rational>>& intervals, int depth_cap) {
    if (intervals.empty())
        throw std::invalid_argument("select_in_intervals needs at least one word");
    const int cap = env_or_default_cap(depth_cap);
    CylinderFunction::LeafMap out;
    std::vector<std::pair<std::string, std::pair<Rational, Rational>>> stack(intervals.begin(),
                                                                             intervals.end());
    while (!stack.empty()) {
        auto [word, window] = std::move(stack.back());
        stack.pop_back();
        const auto& [lo, hi] = window;
        if (!(lo < hi))
            throw std::invalid_argument("select_in_intervals needs non-empty open intervals");
        const auto point = lattice_point_inside(lattice_spacing(word), lo, hi);
        if (point) {
            out.emplace(std::move(word), *point);
            continue;
        }
        if (static_cast<int>(word.size()) >= cap)
            throw DepthCapExceeded("cylinder refinement exceeded depth cap " +
                                   std::to_string(cap));
        stack.emplace_back(word + '0', window);
        stack.emplace_back(word + '1', window);
    }
    return CylinderFunction::from_leaves(std::move(out));
}

std::size_t EmbeddingCertificate::depth() const {
    std::size_t d = 0;
    for (const auto& f : functions)
        d = std::max(d, f.depth());
    return d;
}

std::vector<std::pair<std::string, std::vector<Rational>>>
EmbeddingCertificate::joint_leaves() const {
    // the common refinement: words of some function with no strictly deeper
    // leaf word on the same path in any function
    std::set<std::string> all;
    for (const auto& f : functions)
        for (const auto& [word, value] : f.leaves())
            all.insert(word);
    std::vector<std::pair<std::string, std::vector<Rational>>> out;
    for (auto it = all.begin(); it != all.end(); ++it) {
        auto next = std::next(it);
        if (next != all.end() && next->compare(0, it->size(), *it) == 0)
            continue; // a descendant exists: not a joint leaf
        std::vector<Rational> values;
        values.reserve(functions.size());
        for (const auto& f : functions)
            values.push_back(f.value_on(*it));
        out.emplace_back(*it, std::move(values));
    }
    return out;
}

std::vector<InteriorCertificate>
EmbeddingCertificate::interior_certificates(std::string_view word) const {
    std::vector<Rational> values;
    values.reserve(functions.size());
    for (const auto& f : functions)
        values.push_back(f.value_on(word));
    const MomentVector v = MomentVector::from_rationals(std::move(values));
    std::vector<InteriorCertificate> out;
    for (std::size_t len = 2; len <= v.size(); ++len) {
        const MembershipResult mr = membership(v.prefix(len));
        if (mr.verdict != Verdict::Interior)
            throw NotInterior("cylinder vector is not interior at prefix length " +
                              std::to_string(len));
        out.push_back(*mr.certificate);
    }
    return out;
}

PascalTable EmbeddingCertificate::pascal_table(std::string_view word) const {
    std::vector<Rational> values;
    values.reserve(functions.size());
    for (const auto& f : functions)
        values.push_back(f.value_on(word));
    const MomentVector v = MomentVector::from_rationals(std::move(values));
    return build_table(v, v.size() - 1);
}

EmbeddingCertificate build_embedding(std::size_t N, int depth_cap) {
    const int cap = env_or_default_cap(depth_cap);
    // shared sparse tree: leaf word -> scalar vector (g_0(w), ..., g_n(w))
    std::map<std::string, std::vector<Rational>> leaves;
    leaves.emplace("", std::vector<Rational>{Rational(1)});
    for (std::size_t n = 1; n <= N; ++n) {
        std::map<std::string, std::vector<Rational>> grown;
        for (auto& [word, values] : leaves) {
            const ExtensionInterval window =
                extension_interval(MomentVector::from_rationals(values));
            // refine until the cylinder lattice admits an interior point
            std::vector<std::string> frontier{word};
            while (!frontier.empty()) {
                std::string w = std::move(frontier.back());
                frontier.pop_back();
                const auto point = lattice_point_inside(lattice_spacing(w), window.lo, window.hi);
                if (point) {
                    std::vector<Rational> next = values;
                    next.push_back(*point);
                    grown.emplace(std::move(w), std::move(next));
                    continue;
                }
                if (static_cast<int>(w.size()) >= cap)
                    throw DepthCapExceeded("cylinder refinement exceeded depth cap " +
                                           std::to_string(cap));
                frontier.push_back(w + '0');
                frontier.push_back(w + '1');
            }
        }
        leaves = std::move(grown);
    }

    EmbeddingCertificate cert;
    cert.N = N;
    for (std::size_t i = 0; i <= N; ++i) {
        CylinderFunction::LeafMap fn;
        for (const auto& [word, values] : leaves)
            fn.emplace(word, values[i]);
        cert.functions.push_back(CylinderFunction::from_leaves(std::move(fn)).simplified());
    }
    return cert;
}

namespace {

void add_violation(VerificationReport& report, std::string kind, std::string word,
                   std::string detail) {
    if (report.violations.size() < 50)
        report.violations.push_back({std::move(kind), std::move(word), std::move(detail)});
}

bool in_lattice(const Rational& value, const Rational& spacing) {
    const Rational q = value / spacing;
    return denominator(q) == 1;
}

} // namespace

VerificationReport verify_embedding(const EmbeddingCertificate& cert) {
    VerificationReport report;
    if (cert.functions.size() != cert.N + 1) {
        add_violation(report, "structure", "", "expected N+1 functions");
        return report;
    }
    for (const auto& [word, value] : cert.functions[0].leaves())
        if (value != 1)
            add_violation(report, "unit", word, "g_0 must be the constant 1");

    // lattice membership at each function's own constancy cylinders
    for (std::size_t i = 0; i < cert.functions.size(); ++i)
        for (const auto& [word, value] : cert.functions[i].leaves())
            if (!in_lattice(value, lattice_spacing(word)))
                add_violation(report, "lattice", word,
                              "g_" + std::to_string(i) + " = " + format_rational(value) +
                                  " is not a multiple of the cylinder spacing");

    if (!report.violations.empty())
        return report;

    for (const auto& [word, values] : cert.joint_leaves()) {
        const Rational spacing = lattice_spacing(word);
        if (cert.N >= 2 && !(values[2] < values[1])) {
            add_violation(report, "non-trivial", word, "g_2 < g_1 fails");
            continue;
        }
        MomentVector v = MomentVector::from_rationals(values);
        bool interior = true;
        for (std::size_t len = 2; len <= v.size() && interior; ++len)
            if (membership(v.prefix(len)).verdict != Verdict::Interior) {
                add_violation(report, "interiority", word,
                              "prefix of length " + std::to_string(len) + " is not interior");
                interior = false;
            }
        if (!interior)
            continue;
        const PascalTable table = build_table(v, cert.N);
        const auto& rows = table.rational_rows();
        for (std::size_t n = 0; n < rows.size(); ++n)
            for (std::size_t k = 0; k < rows[n].size(); ++k) {
                if (rows[n][k] <= 0)
                    add_violation(report, "pascal-positivity", word,
                                  "entry (" + std::to_string(n) + "," + std::to_string(k) +
                                      ") not strictly positive");
                else if (!in_lattice(rows[n][k], spacing))
                    add_violation(report, "lattice", word, "Pascal entry off the lattice");
            }
    }

    report.ok = report.violations.empty();
    return report;
}

namespace {

int env_or_default_cap(int depth_cap) {
    if (const char* env = std::getenv("MOMENTLAB_DEPTH_CAP")) {
        try {
            return std::max(1, std::stoi(env));
        } catch (const std::exception&) {
            // fall through to the configured cap
        }
    }
    return depth_cap;
}

} // namespace

} // namespace momentlab
