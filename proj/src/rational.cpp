#include "momentlab/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace momentlab {

Rational make_rational(Int num, Int den) {
    if (den == 0)
        throw std::invalid_argument("rational with zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    return Rational(num, den); // mpq ctor canonicalizes
}

namespace {

bool is_integer_token(const std::string& s) {
    if (s.empty())
        return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size())
        return false;
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i])))
            return false;
    return true;
}

} // namespace

Rational parse_rational(const std::string& text) {
    const auto slash = text.find('/');
    if (slash == std::string::npos) {
        if (!is_integer_token(text))
            throw std::invalid_argument("bad rational: '" + text + "'");
        return Rational(Int(text));
    }
    const std::string num = text.substr(0, slash);
    const std::string den = text.substr(slash + 1);
    if (!is_integer_token(num) || !is_integer_token(den))
        throw std::invalid_argument("bad rational: '" + text + "'");
    return make_rational(Int(num), Int(den));
}

std::string format_rational(const Rational& x) {
    std::string out = numerator(x).str();
    if (denominator(x) != 1) {
        out += '/';
        out += denominator(x).str();
    }
    return out;
}

std::vector<Rational> parse_rational_list(const std::string& text) {
    std::vector<Rational> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto comma = text.find(',', pos);
        if (comma == std::string::npos)
            comma = text.size();
        std::string tok = text.substr(pos, comma - pos);
        // tolerate surrounding spaces
        while (!tok.empty() && tok.front() == ' ')
            tok.erase(tok.begin());
        while (!tok.empty() && tok.back() == ' ')
            tok.pop_back();
        if (tok.empty())
            throw std::invalid_argument("empty entry in rational list");
        out.push_back(parse_rational(tok));
        pos = comma + 1;
        if (comma == text.size())
            break;
    }
    return out;
}

Int floor_rational(const Rational& x) {
    Int n = numerator(x);
    Int d = denominator(x);
    Int q = n / d; // truncates toward zero
    if (n % d != 0 && n < 0)
        --q;
    return q;
}

Int ceil_rational(const Rational& x) {
    return -floor_rational(-x);
}

Rational pow_rational(const Rational& base, unsigned exp) {
    Rational out(1);
    Rational b = base;
    unsigned e = exp;
    while (e > 0) {
        if (e & 1u)
            out *= b;
        b *= b;
        e >>= 1u;
    }
    return out;
}

Int binomial(unsigned n, unsigned k) {
    if (k > n)
        return 0;
    if (k > n - k)
        k = n - k;
    Int out = 1;
    for (unsigned i = 0; i < k; ++i) {
        out *= Int(n - i);
        out /= Int(i + 1);
    }
    return out;
}

Int factorial(unsigned n) {
    Int out = 1;
    for (unsigned i = 2; i <= n; ++i)
        out *= Int(i);
    return out;
}

std::pair<Int, Int> squarefree_decompose(const Int& m) {
    if (m < 1)
        throw std::invalid_argument("squarefree_decompose requires m >= 1");
    Int s = 1;
    Int d = 1;
    Int rem = m;
    for (Int f = 2; f <= 1000000 && f * f <= rem; ++f) {
        if (rem % f != 0)
            continue;
        unsigned e = 0;
        while (rem % f == 0) {
            rem /= f;
            ++e;
        }
        for (unsigned i = 0; i + 1 < e; i += 2)
            s *= f;
        if (e % 2 == 1)
            d *= f;
    }
    if (rem > 1) {
        Int r = sqrt(rem);
        if (r * r == rem)
            s *= r; // unfactored cofactor happens to be a perfect square
        else
            d *= rem; // treated as squarefree (documented limitation)
    }
    return {s, d};
}

} // namespace momentlab
