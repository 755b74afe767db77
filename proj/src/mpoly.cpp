#include "zadic/mpoly.hpp"

#include <sstream>

#include "zadic/errors.hpp"

namespace zadic::arith {

std::string var_name(Var v)
{
    switch (v) {
    case var_t:
        return "t";
    case var_X:
        return "X";
    case var_Y:
        return "Y";
    default:
        return "u" + std::to_string(v - var_u0);
    }
}

std::optional<Var> var_index(const std::string& name)
{
    if (name == "t")
        return var_t;
    if (name == "X")
        return var_X;
    if (name == "Y")
        return var_Y;
    if (name.size() >= 2 && name[0] == 'u' && name.size() <= 6) {
        unsigned i = 0;
        for (size_t k = 1; k < name.size(); ++k) {
            if (name[k] < '0' || name[k] > '9')
                return std::nullopt;
            i = i * 10 + static_cast<unsigned>(name[k] - '0');
        }
        if (name.size() > 2 && name[1] == '0')
            return std::nullopt;
        return var_u(i);
    }
    return std::nullopt;
}

void MPoly::trim(Monomial& m)
{
    while (!m.empty() && m.back() == 0)
        m.pop_back();
}

MPoly::MPoly(const Rational& c)
{
    if (c != 0)
        terms_.emplace(Monomial{}, c);
}

MPoly MPoly::var(Var v)
{
    Monomial m(v + 1, 0);
    m[v] = 1;
    return monomial(1, std::move(m));
}

MPoly MPoly::monomial(const Rational& c, Monomial m)
{
    MPoly r;
    trim(m);
    if (c != 0)
        r.terms_.emplace(std::move(m), c);
    return r;
}

MPoly MPoly::from_poly(const Poly& f, Var v)
{
    MPoly r;
    for (size_t i = 0; i < f.coeffs().size(); ++i) {
        if (f.coeffs()[i] == 0)
            continue;
        Monomial m;
        if (i > 0) {
            m.assign(v + 1, 0);
            m[v] = static_cast<unsigned>(i);
        }
        r.terms_.emplace(std::move(m), f.coeffs()[i]);
    }
    return r;
}

bool MPoly::is_constant() const
{
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
}

Rational MPoly::constant_term() const
{
    auto it = terms_.find(Monomial{});
    return it == terms_.end() ? Rational(0) : it->second;
}

unsigned MPoly::total_degree() const
{
    unsigned d = 0;
    for (const auto& [m, c] : terms_) {
        unsigned s = 0;
        for (unsigned e : m)
            s += e;
        d = std::max(d, s);
    }
    return d;
}

unsigned MPoly::degree_in(Var v) const
{
    unsigned d = 0;
    for (const auto& [m, c] : terms_)
        if (v < m.size())
            d = std::max(d, m[v]);
    return d;
}

unsigned MPoly::num_vars() const
{
    size_t n = 0;
    for (const auto& [m, c] : terms_)
        n = std::max(n, m.size());
    return static_cast<unsigned>(n);
}

std::optional<Poly> MPoly::to_poly(Var v) const
{
    std::vector<Rational> coeffs;
    for (const auto& [m, c] : terms_) {
        for (Var w = 0; w < m.size(); ++w)
            if (w != v && m[w] != 0)
                return std::nullopt;
        unsigned e = v < m.size() ? m[v] : 0;
        if (coeffs.size() <= e)
            coeffs.resize(e + 1);
        coeffs[e] += c;
    }
    return Poly(std::move(coeffs));
}

MPoly& MPoly::operator+=(const MPoly& o)
{
    for (const auto& [m, c] : o.terms_) {
        auto [it, inserted] = terms_.emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0)
                terms_.erase(it);
        }
    }
    return *this;
}

MPoly& MPoly::operator-=(const MPoly& o)
{
    return *this += -o;
}

MPoly operator*(const MPoly& a, const MPoly& b)
{
    MPoly r;
    for (const auto& [ma, ca] : a.terms_) {
        for (const auto& [mb, cb] : b.terms_) {
            Monomial m(std::max(ma.size(), mb.size()), 0);
            for (size_t i = 0; i < ma.size(); ++i)
                m[i] += ma[i];
            for (size_t i = 0; i < mb.size(); ++i)
                m[i] += mb[i];
            Rational c = ca * cb;
            auto [it, inserted] = r.terms_.emplace(std::move(m), c);
            if (!inserted) {
                it->second += c;
                if (it->second == 0)
                    r.terms_.erase(it);
            }
        }
    }
    return r;
}

MPoly operator*(MPoly a, const Rational& c)
{
    if (c == 0)
        return MPoly();
    for (auto& [m, x] : a.terms_)
        x *= c;
    return a;
}

MPoly MPoly::operator-() const
{
    return *this * Rational(-1);
}

MPoly MPoly::pow(unsigned e) const
{
    MPoly result(1);
    MPoly base = *this;
    while (e) {
        if (e & 1)
            result = result * base;
        e >>= 1;
        if (e)
            base = base * base;
    }
    return result;
}

MPoly MPoly::substitute(const std::function<MPoly(Var)>& image) const
{
    return evaluate<MPoly>(image);
}

std::map<Monomial, MPoly> MPoly::split_at(Var first) const
{
    std::map<Monomial, MPoly> out;
    for (const auto& [m, c] : terms_) {
        Monomial low(m.begin(), m.begin() + std::min<size_t>(first, m.size()));
        Monomial high;
        if (m.size() > first)
            high.assign(m.begin() + first, m.end());
        out[high] += MPoly::monomial(c, low);
    }
    return out;
}

std::string MPoly::to_string() const
{
    if (terms_.empty())
        return "0";
    std::ostringstream out;
    bool first = true;
    // Highest total degree first, then reverse lexicographic on exponents.
    std::vector<std::pair<Monomial, Rational>> ts(terms_.begin(), terms_.end());
    std::stable_sort(ts.begin(), ts.end(), [](const auto& a, const auto& b) {
        unsigned da = 0, db = 0;
        for (unsigned e : a.first)
            da += e;
        for (unsigned e : b.first)
            db += e;
        if (da != db)
            return da > db;
        return a.first > b.first;
    });
    for (const auto& [m, c] : ts) {
        Rational a = abs(c);
        if (first)
            out << (c < 0 ? "-" : "");
        else
            out << (c < 0 ? " - " : " + ");
        first = false;
        bool any_var = false;
        std::ostringstream vars;
        for (Var v = 0; v < m.size(); ++v) {
            if (!m[v])
                continue;
            if (any_var)
                vars << "*";
            vars << var_name(v);
            if (m[v] > 1)
                vars << "^" << m[v];
            any_var = true;
        }
        if (!any_var)
            out << a.get_str();
        else if (a == 1)
            out << vars.str();
        else
            out << a.get_str() << "*" << vars.str();
    }
    return out.str();
}

} // namespace zadic::arith
