#include "qcalc/expr.hpp"

#include <cctype>

namespace qcalc {

LinForm& LinForm::operator+=(const LinForm& o)
{
    c += o.c;
    for (auto& [u, x] : o.coeff) {
        auto& y = coeff[u];
        y += x;
        if (y.is_zero()) coeff.erase(u);
    }
    return *this;
}

LinForm& LinForm::operator-=(const LinForm& o)
{
    return *this += o.scaled(FieldElem(-1));
}

LinForm LinForm::scaled(const FieldElem& x) const
{
    LinForm r;
    if (x.is_zero()) return r;
    r.c = c * x;
    for (auto& [u, y] : coeff) r.coeff[u] = y * x;
    return r;
}

std::string LinForm::str() const
{
    std::string out;
    for (auto& [u, x] : coeff) {
        if (!out.empty()) out += " + ";
        out += "(" + x.str() + ")*A[" + std::to_string(u.first) + "," + std::to_string(u.second) + "]";
    }
    if (!c.is_zero() || out.empty()) out += (out.empty() ? "" : " + ") + c.str();
    return out;
}

namespace {

class Parser {
public:
    Parser(const std::string& s, const Bindings& b) : s_(s), b_(b) {}

    LinForm run()
    {
        LinForm v = sum();
        skip();
        if (i_ != s_.size()) fail("unexpected '" + std::string(1, s_[i_]) + "'");
        return v;
    }

private:
    const std::string& s_;
    const Bindings& b_;
    std::size_t i_ = 0;

    [[noreturn]] void fail(const std::string& why) const
    {
        throw ParseError(why + " at offset " + std::to_string(i_) + " in \"" + s_ + "\"");
    }
    void skip()
    {
        while (i_ < s_.size() && std::isspace((unsigned char)s_[i_])) ++i_;
    }
    bool eat(char c)
    {
        skip();
        if (i_ < s_.size() && s_[i_] == c) {
            ++i_;
            return true;
        }
        return false;
    }
    void expect(char c)
    {
        if (!eat(c)) fail(std::string("expected '") + c + "'");
    }
    long integer()
    {
        skip();
        bool neg = false;
        if (eat('-')) neg = true;
        else if (eat('(')) {
            long v = integer();
            expect(')');
            return v;
        }
        skip();
        if (i_ >= s_.size() || !std::isdigit((unsigned char)s_[i_])) fail("expected integer");
        long v = 0;
        while (i_ < s_.size() && std::isdigit((unsigned char)s_[i_])) v = v * 10 + (s_[i_++] - '0');
        return neg ? -v : v;
    }

    LinForm sum()
    {
        LinForm v = product();
        while (true) {
            if (eat('+')) v += product();
            else if (eat('-')) v -= product();
            else return v;
        }
    }

    LinForm product()
    {
        LinForm v = unary();
        while (true) {
            if (eat('*')) v = mul(v, unary());
            else if (eat('/')) {
                LinForm d = unary();
                if (!d.is_const()) fail("division by an unknown");
                if (d.c.is_zero()) fail("division by zero");
                v = v.scaled(d.c.inverse());
            } else
                return v;
        }
    }

    LinForm mul(const LinForm& x, const LinForm& y)
    {
        if (x.is_const()) return y.scaled(x.c);
        if (y.is_const()) return x.scaled(y.c);
        fail("product of unknowns");
    }

    LinForm unary()
    {
        if (eat('-')) return unary().scaled(FieldElem(-1));
        if (eat('+')) return unary();
        return power();
    }

    LinForm power()
    {
        LinForm v = primary();
        if (eat('^')) {
            long n = integer();
            if (!v.is_const()) fail("power of an unknown");
            if (n < 0 && v.c.is_zero()) fail("negative power of zero");
            LinForm r;
            r.c = v.c.pow(int(n));
            return r;
        }
        return v;
    }

    LinForm constant(const FieldElem& x)
    {
        LinForm r;
        r.c = x;
        return r;
    }

    LinForm primary()
    {
        skip();
        if (i_ >= s_.size()) fail("unexpected end");
        char c = s_[i_];
        if (c == '(') {
            ++i_;
            LinForm v = sum();
            expect(')');
            return v;
        }
        if (std::isdigit((unsigned char)c)) {
            std::size_t j = i_;
            while (i_ < s_.size() && std::isdigit((unsigned char)s_[i_])) ++i_;
            return constant(FieldElem(Int(s_.substr(j, i_ - j))));
        }
        ++i_;
        switch (c) {
        case 'q': return constant(b_.q);
        case 't': return constant(b_.t);
        case 'k': return constant(b_.k);
        case 's': return constant(b_.s);
        case 'r': return constant(b_.r);
        case 'A': {
            expect('[');
            int m = int(integer());
            expect(',');
            int n = int(integer());
            expect(']');
            LinForm r;
            r.coeff[{m, n}] = FieldElem(1);
            return r;
        }
        default: --i_; fail("unknown symbol");
        }
    }
};

}  // namespace

LinForm parse_linear(const std::string& text, const Bindings& b)
{
    return Parser(text, b).run();
}

FieldElem parse_field(const std::string& text, const Bindings& b)
{
    LinForm v = parse_linear(text, b);
    if (!v.is_const()) throw ParseError("unexpected unknown in \"" + text + "\"");
    return v.c;
}

Rat parse_rational(const std::string& text)
{
    FieldElem x = parse_field(text);
    if (!x.is_rational()) throw ParseError("not a rational number: \"" + text + "\"");
    return x.as_rational();
}

}  // namespace qcalc
