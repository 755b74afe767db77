#include "zadic/parse.hpp"

#include <cctype>
#include <string>

#include "zadic/errors.hpp"

namespace zadic::arith {

namespace {

struct MPolyOps {
    using Value = MPoly;
    static Value constant(const Rational& c) { return MPoly(c); }
    static std::string variable(Var v, Value& out)
    {
        out = MPoly::var(v);
        return {};
    }
    static std::string divide(Value& a, const Value& b)
    {
        if (!b.is_constant())
            return "division by a non-constant polynomial";
        if (b.is_zero())
            return "division by zero";
        a = a * (1 / b.constant_term());
        return {};
    }
};

struct RatFuncOps {
    using Value = RatFunc;
    static Value constant(const Rational& c) { return RatFunc(c); }
    static std::string variable(Var v, Value& out)
    {
        if (v != var_t)
            return "only the variable t is allowed here";
        out = RatFunc(Poly::t());
        return {};
    }
    static std::string divide(Value& a, const Value& b)
    {
        if (b.is_zero())
            return "division by zero";
        a = a / b;
        return {};
    }
};

template <class Ops>
class Parser {
    using Value = typename Ops::Value;

public:
    explicit Parser(std::string_view s) : s_(s) {}

    Value run()
    {
        skip();
        if (pos_ == s_.size())
            fail("empty expression");
        Value v = expr();
        skip();
        if (pos_ != s_.size())
            fail(std::string("unexpected '") + s_[pos_] + "'");
        return v;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const { fail_at(pos_, msg); }

    [[noreturn]] void fail_at(size_t at, const std::string& msg) const
    {
        int line = 1, col = 1;
        for (size_t i = 0; i < at && i < s_.size(); ++i) {
            if (s_[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw ParseError(line, col, msg);
    }

    void skip()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
    }

    bool peek(char c)
    {
        skip();
        return pos_ < s_.size() && s_[pos_] == c;
    }

    bool starts_atom()
    {
        skip();
        if (pos_ >= s_.size())
            return false;
        char c = s_[pos_];
        return c == '(' || std::isalpha(static_cast<unsigned char>(c));
    }

    Value expr()
    {
        bool neg = false;
        if (peek('+') || peek('-')) {
            neg = s_[pos_] == '-';
            ++pos_;
        }
        Value v = term();
        if (neg)
            v = -v;
        for (;;) {
            if (peek('+')) {
                ++pos_;
                v = v + term();
            } else if (peek('-')) {
                ++pos_;
                v = v - term();
            } else {
                return v;
            }
        }
    }

    Value term()
    {
        Value v = power();
        for (;;) {
            if (peek('*')) {
                ++pos_;
                v = v * power();
            } else if (peek('/')) {
                ++pos_;
                size_t at = pos_;
                Value d = power();
                std::string err = Ops::divide(v, d);
                if (!err.empty())
                    fail_at(at, err);
            } else if (starts_atom()) {
                v = v * power();
            } else {
                return v;
            }
        }
    }

    Value power()
    {
        Value base = atom();
        if (!peek('^'))
            return base;
        ++pos_;
        skip();
        size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
        if (start == pos_)
            fail("expected a non-negative integer exponent");
        if (pos_ - start > 4)
            fail_at(start, "exponent too large");
        unsigned e = static_cast<unsigned>(std::stoul(std::string(s_.substr(start, pos_ - start))));
        if (e > 1000)
            fail_at(start, "exponent too large");
        Value r = Ops::constant(1);
        for (unsigned i = 0; i < e; ++i)
            r = r * base;
        return r;
    }

    Value atom()
    {
        skip();
        if (pos_ >= s_.size())
            fail("unexpected end of input");
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            Value v = expr();
            if (!peek(')'))
                fail("expected ')'");
            ++pos_;
            return v;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
                ++pos_;
            return Ops::constant(Rational(Integer(std::string(s_.substr(start, pos_ - start)))));
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            size_t start = pos_;
            while (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_])))
                ++pos_;
            std::string name(s_.substr(start, pos_ - start));
            auto v = var_index(name);
            if (!v)
                fail_at(start, "unknown variable '" + name + "'");
            Value out = Ops::constant(0);
            std::string err = Ops::variable(*v, out);
            if (!err.empty())
                fail_at(start, err + " (got '" + name + "')");
            return out;
        }
        fail(std::string("unexpected '") + c + "'");
    }

    std::string_view s_;
    size_t pos_ = 0;
};

} // namespace

MPoly parse_mpoly(std::string_view text)
{
    return Parser<MPolyOps>(text).run();
}

RatFunc parse_ratfunc(std::string_view text)
{
    return Parser<RatFuncOps>(text).run();
}

Poly parse_poly(std::string_view text)
{
    MPoly m = parse_mpoly(text);
    auto p = m.to_poly(var_t);
    if (!p)
        throw ParseError(1, 1, "expected a polynomial in t only: '" + std::string(text) + "'");
    return *p;
}

} // namespace zadic::arith
