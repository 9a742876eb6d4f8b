#include "isphere/errors.hpp"
#include "isphere/pcdga.hpp"

#include <cctype>

namespace isphere::pcdga {

Exponents trim(Exponents e)
{
    while (!e.empty() && e.back() == 0)
        e.pop_back();
    return e;
}

std::size_t monomial_degree(const Exponents& e, const std::vector<std::size_t>& degrees)
{
    std::size_t d = 0;
    for (std::size_t i = 0; i < e.size(); ++i)
        d += e[i] * degrees.at(i);
    return d;
}

Polynomial Polynomial::constant(const Rational& c)
{
    Polynomial p;
    if (!isphere::is_zero(c))
        p.terms[{}] = c;
    return p;
}

Polynomial Polynomial::generator(std::size_t index)
{
    Polynomial p;
    Exponents e(index + 1, 0);
    e[index] = 1;
    p.terms[e] = 1;
    return p;
}

namespace {

void add_term(Polynomial& p, const Exponents& e, const Rational& c)
{
    if (isphere::is_zero(c))
        return;
    auto [it, inserted] = p.terms.emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (isphere::is_zero(it->second))
            p.terms.erase(it);
    }
}

Polynomial monomial(const Exponents& e, const Rational& c = 1)
{
    Polynomial p;
    add_term(p, trim(e), c);
    return p;
}

} // namespace

Polynomial Polynomial::operator+(const Polynomial& o) const
{
    Polynomial r = *this;
    for (const auto& [e, c] : o.terms)
        add_term(r, e, c);
    return r;
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + o.scaled(-1); }

Polynomial Polynomial::scaled(const Rational& c) const
{
    Polynomial r;
    if (isphere::is_zero(c))
        return r;
    for (const auto& [e, v] : terms)
        r.terms[e] = v * c;
    return r;
}

std::size_t Polynomial::span() const
{
    std::size_t s = 0;
    for (const auto& [e, c] : terms)
        s = std::max(s, e.size());
    return s;
}

Polynomial multiply(const Polynomial& a, const Polynomial& b, const std::vector<std::size_t>& degrees)
{
    Polynomial r;
    for (const auto& [ea, ca] : a.terms)
        for (const auto& [eb, cb] : b.terms) {
            const std::size_t n = std::max(ea.size(), eb.size());
            Exponents e(n, 0);
            bool vanishes = false;
            // Moving each odd factor of b left past the odd factors of a with larger index.
            unsigned long swaps = 0;
            unsigned long odd_a_after = 0;
            for (std::size_t i = n; i-- > 0;) {
                unsigned x = i < ea.size() ? ea[i] : 0;
                unsigned y = i < eb.size() ? eb[i] : 0;
                e[i] = x + y;
                bool odd = degrees.at(i) % 2 == 1;
                if (odd) {
                    if (e[i] > 1)
                        vanishes = true;
                    swaps += static_cast<unsigned long>(y) * odd_a_after;
                    odd_a_after += x;
                }
            }
            if (vanishes)
                continue;
            Rational c = ca * cb;
            if (swaps % 2)
                c = -c;
            add_term(r, trim(e), c);
        }
    return r;
}

Polynomial truncate(const Polynomial& p, const std::vector<std::size_t>& degrees, std::size_t max_degree)
{
    Polynomial r;
    for (const auto& [e, c] : p.terms)
        if (monomial_degree(e, degrees) <= max_degree)
            r.terms.emplace(e, c);
    return r;
}

Polynomial substitute(const Polynomial& p, const std::vector<Polynomial>& images,
                      const std::vector<std::size_t>& degrees)
{
    Polynomial r;
    for (const auto& [e, c] : p.terms) {
        Polynomial term = Polynomial::constant(c);
        for (std::size_t i = 0; i < e.size(); ++i)
            for (unsigned k = 0; k < e[i]; ++k)
                term = multiply(term, images.at(i), degrees);
        r = r + term;
    }
    return r;
}

Polynomial differential(const Polynomial& p, const std::vector<Polynomial>& dgen,
                        const std::vector<std::size_t>& degrees)
{
    Polynomial r;
    for (const auto& [e, c] : p.terms) {
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0)
                continue;
            Exponents prefix(e.begin(), e.begin() + static_cast<long>(i));
            Exponents power(i + 1, 0);
            power[i] = e[i] - 1;
            Exponents suffix(e.size(), 0);
            for (std::size_t j = i + 1; j < e.size(); ++j)
                suffix[j] = e[j];
            // d(g^e) = e g^{e-1} dg for even g; odd g has e = 1.
            Rational coef = c * static_cast<long>(e[i]);
            if (monomial_degree(prefix, degrees) % 2)
                coef = -coef;
            Polynomial term = multiply(monomial(prefix, coef), monomial(power), degrees);
            term = multiply(term, dgen.at(i), degrees);
            r = r + multiply(term, monomial(suffix), degrees);
        }
    }
    return r;
}

std::optional<std::size_t> homogeneous_degree(const Polynomial& p, const std::vector<std::size_t>& degrees)
{
    std::optional<std::size_t> d;
    for (const auto& [e, c] : p.terms) {
        if (e.size() > degrees.size())
            throw UsageError("polynomial uses an unknown generator");
        std::size_t k = monomial_degree(e, degrees);
        if (d && *d != k)
            throw UsageError("polynomial is not homogeneous");
        d = k;
    }
    return d;
}

namespace {

class Parser {
public:
    Parser(const std::string& text, const std::vector<std::string>& names, const std::vector<std::size_t>& degrees)
        : s_(text), names_(names), degrees_(degrees) {}

    Polynomial parse()
    {
        Polynomial r;
        skip();
        bool first = true;
        while (pos_ < s_.size()) {
            Rational sign = 1;
            if (peek() == '+' || peek() == '-') {
                if (peek() == '-')
                    sign = -1;
                ++pos_;
                skip();
            } else if (!first) {
                fail("expected + or -");
            }
            r = r + term().scaled(sign);
            first = false;
            skip();
        }
        if (first)
            fail("empty polynomial");
        return r;
    }

private:
    char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
    void skip()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
    }
    [[noreturn]] void fail(const std::string& why) const
    {
        throw UsageError("cannot parse polynomial '" + s_ + "' at position " + std::to_string(pos_) + ": " + why);
    }

    Polynomial term()
    {
        Polynomial t = factor();
        skip();
        while (peek() == '*') {
            ++pos_;
            skip();
            t = multiply(t, factor(), degrees_);
            skip();
        }
        return t;
    }

    Polynomial factor()
    {
        if (std::isdigit(static_cast<unsigned char>(peek()))) {
            std::size_t b = pos_;
            while (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '/')
                ++pos_;
            return Polynomial::constant(parse_rational(s_.substr(b, pos_ - b)));
        }
        if (!(std::isalpha(static_cast<unsigned char>(peek())) || peek() == '_'))
            fail("expected a coefficient or a generator");
        std::size_t b = pos_;
        while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_' || peek() == '.')
            ++pos_;
        std::string name = s_.substr(b, pos_ - b);
        std::size_t idx = names_.size();
        for (std::size_t i = 0; i < names_.size(); ++i)
            if (names_[i] == name)
                idx = i;
        if (idx == names_.size())
            fail("unknown generator '" + name + "'");
        unsigned power = 1;
        skip();
        if (peek() == '^') {
            ++pos_;
            skip();
            std::size_t e = pos_;
            while (std::isdigit(static_cast<unsigned char>(peek())))
                ++pos_;
            if (e == pos_)
                fail("expected an exponent");
            power = static_cast<unsigned>(std::stoul(s_.substr(e, pos_ - e)));
        }
        Polynomial r = Polynomial::constant(1);
        for (unsigned k = 0; k < power; ++k)
            r = multiply(r, Polynomial::generator(idx), degrees_);
        return r;
    }

    const std::string& s_;
    const std::vector<std::string>& names_;
    const std::vector<std::size_t>& degrees_;
    std::size_t pos_ = 0;
};

} // namespace

Polynomial parse_polynomial(const std::string& text, const std::vector<std::string>& names,
                            const std::vector<std::size_t>& degrees)
{
    return Parser(text, names, degrees).parse();
}

std::string format_monomial(const Exponents& e, const std::vector<std::string>& names)
{
    std::string out;
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0)
            continue;
        if (!out.empty())
            out += "*";
        out += names.at(i);
        if (e[i] > 1)
            out += "^" + std::to_string(e[i]);
    }
    return out.empty() ? "1" : out;
}

std::string format_polynomial(const Polynomial& p, const std::vector<std::string>& names)
{
    if (p.is_zero())
        return "0";
    std::string out;
    for (auto it = p.terms.rbegin(); it != p.terms.rend(); ++it) {
        const auto& [e, c] = *it;
        Rational a = abs(c);
        if (out.empty())
            out = sgn(c) < 0 ? "-" : "";
        else
            out += sgn(c) < 0 ? " - " : " + ";
        std::string m = format_monomial(e, names);
        if (m == "1")
            out += format_rational(a);
        else if (a == 1)
            out += m;
        else
            out += format_rational(a) + "*" + m;
    }
    return out;
}

} // namespace isphere::pcdga
