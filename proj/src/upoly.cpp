#include "qcalc/upoly.hpp"

#include <functional>

namespace qcalc {

UPoly::UPoly(std::vector<Rat> cs) : c(std::move(cs))
{
    while (!c.empty() && sgn(c.back()) == 0) c.pop_back();
}

UPoly UPoly::from_poly_q(const Poly& p)
{
    if (p.deg(Var::t) || p.deg(Var::k)) throw std::invalid_argument("polynomial is not univariate in q");
    std::vector<Rat> cs(p.deg(Var::q) + 1);
    for (auto& t : p.terms()) cs[t.e[Var::q]] = Rat(t.c);
    return UPoly(std::move(cs));
}

Rat UPoly::operator()(const Rat& x) const
{
    Rat v = 0;
    for (std::size_t i = c.size(); i-- > 0;) v = v * x + c[i];
    return v;
}

UPoly UPoly::derivative() const
{
    std::vector<Rat> d;
    for (std::size_t i = 1; i < c.size(); ++i) d.push_back(c[i] * int(i));
    return UPoly(std::move(d));
}

UPoly UPoly::monic() const
{
    if (c.empty()) return *this;
    UPoly m = *this;
    Rat l = lead();
    for (auto& x : m.c) x /= l;
    return m;
}

UPoly UPoly::primitive() const
{
    if (c.empty()) return *this;
    Int l = 1, g = 0;
    for (auto& x : c) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
    std::vector<Rat> out;
    for (auto& x : c) {
        Rat y = x * l;
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), y.get_num_mpz_t());
        out.push_back(y);
    }
    if (sgn(lead()) < 0) g = -g;
    for (auto& x : out) x /= g;
    return UPoly(std::move(out));
}

std::string UPoly::str() const
{
    std::vector<Poly::Term> ts;
    UPoly p = primitive();
    for (std::size_t i = 0; i < p.c.size(); ++i)
        if (sgn(p.c[i])) ts.push_back({Exp::make(unsigned(i), 0, 0), p.c[i].get_num()});
    Poly q = Poly::from_terms(std::move(ts));
    std::string out;
    for (auto& t : q.terms()) {
        unsigned d = t.e[Var::q];
        std::string m = d == 0 ? "" : d == 1 ? "q" : "q^" + std::to_string(d);
        Int a = abs(t.c);
        std::string body = m.empty() ? a.get_str() : (a == 1 ? m : a.get_str() + "*" + m);
        if (out.empty()) out = t.c < 0 ? "-" + body : body;
        else out += (t.c < 0 ? " - " : " + ") + body;
    }
    return out.empty() ? "0" : out;
}

UPoly operator+(const UPoly& a, const UPoly& b)
{
    std::vector<Rat> c(std::max(a.c.size(), b.c.size()));
    for (std::size_t i = 0; i < a.c.size(); ++i) c[i] += a.c[i];
    for (std::size_t i = 0; i < b.c.size(); ++i) c[i] += b.c[i];
    return UPoly(std::move(c));
}

UPoly operator-(const UPoly& a, const UPoly& b)
{
    std::vector<Rat> c(std::max(a.c.size(), b.c.size()));
    for (std::size_t i = 0; i < a.c.size(); ++i) c[i] += a.c[i];
    for (std::size_t i = 0; i < b.c.size(); ++i) c[i] -= b.c[i];
    return UPoly(std::move(c));
}

UPoly operator*(const UPoly& a, const UPoly& b)
{
    if (a.is_zero() || b.is_zero()) return UPoly();
    std::vector<Rat> c(a.c.size() + b.c.size() - 1);
    for (std::size_t i = 0; i < a.c.size(); ++i)
        for (std::size_t j = 0; j < b.c.size(); ++j) c[i + j] += a.c[i] * b.c[j];
    return UPoly(std::move(c));
}

void divmod(const UPoly& a, const UPoly& b, UPoly& quo, UPoly& rem)
{
    if (b.is_zero()) throw DivisionByZero("univariate division by zero");
    std::vector<Rat> r = a.c, q;
    if (a.degree() >= b.degree()) q.assign(a.c.size() - b.c.size() + 1, Rat(0));
    while (!r.empty() && r.size() >= b.c.size()) {
        std::size_t sh = r.size() - b.c.size();
        Rat f = r.back() / b.lead();
        q[sh] = f;
        for (std::size_t i = 0; i < b.c.size(); ++i) r[sh + i] -= f * b.c[i];
        r.pop_back();
        while (!r.empty() && sgn(r.back()) == 0) r.pop_back();
    }
    quo = UPoly(std::move(q));
    rem = UPoly(std::move(r));
}

UPoly gcd(UPoly a, UPoly b)
{
    while (!b.is_zero()) {
        UPoly q, r;
        divmod(a, b, q, r);
        a = std::move(b);
        b = r.primitive();
    }
    return a.primitive();
}

UPoly squarefree(const UPoly& p)
{
    if (p.degree() < 1) return p.primitive();
    UPoly g = gcd(p, p.derivative());
    UPoly q, r;
    divmod(p, g, q, r);
    return q.primitive();
}

UPoly interpolate(const std::vector<Rat>& xs, const std::vector<Rat>& ys)
{
    const std::size_t n = xs.size();
    std::vector<Rat> dd = ys;
    for (std::size_t j = 1; j < n; ++j)
        for (std::size_t i = n - 1; i >= j; --i) {
            dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - j]);
            if (i == j) break;
        }
    UPoly p;
    for (std::size_t i = n; i-- > 0;) p = p * UPoly({-xs[i], Rat(1)}) + UPoly({dd[i]});
    return p;
}

std::vector<UPoly> sturm_chain(const UPoly& p)
{
    std::vector<UPoly> ch{p, p.derivative()};
    while (!ch.back().is_zero()) {
        UPoly q, r;
        divmod(ch[ch.size() - 2], ch.back(), q, r);
        if (r.is_zero()) break;
        ch.push_back(UPoly(std::vector<Rat>{}) - r);
    }
    if (ch.back().is_zero()) ch.pop_back();
    return ch;
}

namespace {

int sign_changes(const std::vector<UPoly>& ch, const Rat& x)
{
    int n = 0, prev = 0;
    for (auto& p : ch) {
        int s = sgn(p(x));
        if (s == 0) continue;
        if (prev && s != prev) ++n;
        prev = s;
    }
    return n;
}

}  // namespace

int sturm_count(const std::vector<UPoly>& chain, const Rat& lo, const Rat& hi)
{
    return sign_changes(chain, lo) - sign_changes(chain, hi);
}

std::vector<RootInterval> isolate_roots(const UPoly& p, const Rat& lo, const Rat& hi, const Rat& width)
{
    std::vector<RootInterval> out;
    if (p.degree() < 1) return out;
    auto ch = sturm_chain(p);
    std::function<void(const Rat&, const Rat&)> go = [&](const Rat& a, const Rat& b) {
        int n = sturm_count(ch, a, b);
        if (n == 0) return;
        if (n == 1 && b - a <= width) {
            out.push_back({a, b});
            return;
        }
        Rat m = (a + b) / 2;
        go(a, m);
        go(m, b);
    };
    go(lo, hi);
    // (lo, hi] counts a root sitting exactly at hi; the domain is open
    if (!out.empty() && sgn(p(hi)) == 0 && out.back().hi == hi) out.pop_back();
    return out;
}

}  // namespace qcalc
