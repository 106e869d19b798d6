#include "qcalc/poly.hpp"

#include <algorithm>
#include <functional>

namespace qcalc {

namespace {

bool by_exp_desc(const Poly::Term& a, const Poly::Term& b) { return b.e < a.e; }

// Sort and merge equal exponents, dropping zeros.
std::vector<Poly::Term> canonical(std::vector<Poly::Term> ts)
{
    std::sort(ts.begin(), ts.end(), by_exp_desc);
    std::vector<Poly::Term> out;
    out.reserve(ts.size());
    for (auto& t : ts) {
        if (!out.empty() && out.back().e == t.e)
            out.back().c += t.c;
        else {
            if (!out.empty() && out.back().c == 0) out.pop_back();
            out.push_back(std::move(t));
        }
    }
    if (!out.empty() && out.back().c == 0) out.pop_back();
    return out;
}

}  // namespace

Poly::Poly(long c)
{
    if (c != 0) terms_.push_back({Exp{}, Int(c)});
}

Poly::Poly(const Int& c)
{
    if (c != 0) terms_.push_back({Exp{}, c});
}

Poly Poly::monomial(const Int& c, Exp e)
{
    Poly p;
    if (c != 0) p.terms_.push_back({e, c});
    return p;
}

Poly Poly::var(Var x, unsigned d)
{
    return monomial(Int(1), Exp{}.with(x, d));
}

Poly Poly::from_terms(std::vector<Term> terms)
{
    Poly p;
    p.terms_ = canonical(std::move(terms));
    return p;
}

Int Poly::const_coeff() const
{
    if (!terms_.empty() && terms_.back().e.v == 0) return terms_.back().c;
    return Int(0);
}

unsigned Poly::deg(Var x) const
{
    unsigned d = 0;
    for (auto& t : terms_) d = std::max(d, t.e[x]);
    return d;
}

unsigned Poly::min_deg(Var x) const
{
    if (terms_.empty()) return 0;
    unsigned d = terms_[0].e[x];
    for (auto& t : terms_) d = std::min(d, t.e[x]);
    return d;
}

unsigned Poly::total_deg() const
{
    unsigned d = 0;
    for (auto& t : terms_) d = std::max(d, t.e[Var::q] + t.e[Var::t] + t.e[Var::k]);
    return d;
}

Int Poly::content() const
{
    Int g = 0;
    for (auto& t : terms_) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.c.get_mpz_t());
        if (g == 1) break;
    }
    return g;
}

Poly Poly::operator-() const
{
    Poly p = *this;
    for (auto& t : p.terms_) t.c = -t.c;
    return p;
}

void Poly::add_scaled(const Poly& o, int sign)
{
    if (o.terms_.empty()) return;
    std::vector<Term> out;
    out.reserve(terms_.size() + o.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < terms_.size() || j < o.terms_.size()) {
        if (j == o.terms_.size() || (i < terms_.size() && o.terms_[j].e < terms_[i].e)) {
            out.push_back(std::move(terms_[i++]));
        } else if (i == terms_.size() || terms_[i].e < o.terms_[j].e) {
            out.push_back({o.terms_[j].e, sign > 0 ? o.terms_[j].c : Int(-o.terms_[j].c)});
            ++j;
        } else {
            Int c = sign > 0 ? Int(terms_[i].c + o.terms_[j].c) : Int(terms_[i].c - o.terms_[j].c);
            if (c != 0) out.push_back({terms_[i].e, std::move(c)});
            ++i;
            ++j;
        }
    }
    terms_ = std::move(out);
}

Poly& Poly::operator+=(const Poly& o)
{
    add_scaled(o, 1);
    return *this;
}

Poly& Poly::operator-=(const Poly& o)
{
    add_scaled(o, -1);
    return *this;
}

Poly& Poly::operator*=(const Poly& o)
{
    *this = *this * o;
    return *this;
}

Poly operator*(const Poly& a, const Poly& b)
{
    if (a.is_zero() || b.is_zero()) return Poly();
    if (a.is_monomial()) return b.shifted(a.terms_[0].e).scaled(a.terms_[0].c);
    if (b.is_monomial()) return a.shifted(b.terms_[0].e).scaled(b.terms_[0].c);
    std::vector<Poly::Term> ts;
    ts.reserve(a.terms_.size() * b.terms_.size());
    for (auto& x : a.terms_)
        for (auto& y : b.terms_) ts.push_back({x.e + y.e, x.c * y.c});
    Poly p;
    p.terms_ = canonical(std::move(ts));
    return p;
}

Poly Poly::scaled(const Int& c) const
{
    if (c == 0) return Poly();
    Poly p = *this;
    if (c != 1)
        for (auto& t : p.terms_) t.c *= c;
    return p;
}

Poly Poly::shifted(Exp e) const
{
    Poly p = *this;
    for (auto& t : p.terms_) t.e = t.e + e;
    return p;
}

Poly Poly::pow(unsigned n) const
{
    Poly r(1), b = *this;
    while (n) {
        if (n & 1) r = r * b;
        n >>= 1;
        if (n) b = b * b;
    }
    return r;
}

bool operator==(const Poly& a, const Poly& b)
{
    if (a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i)
        if (!(a.terms_[i].e == b.terms_[i].e) || a.terms_[i].c != b.terms_[i].c) return false;
    return true;
}

std::vector<Poly> Poly::coeffs_in(Var x) const
{
    std::vector<std::vector<Term>> parts(deg(x) + 1);
    for (auto& t : terms_) parts[t.e[x]].push_back({t.e.with(x, 0), t.c});
    std::vector<Poly> out(parts.size());
    for (std::size_t i = 0; i < parts.size(); ++i) {
        // removing one variable keeps the relative order of the rest
        out[i].terms_ = std::move(parts[i]);
    }
    return out;
}

Poly Poly::from_coeffs(Var x, const std::vector<Poly>& cs)
{
    std::vector<Term> ts;
    for (std::size_t i = 0; i < cs.size(); ++i)
        for (auto& t : cs[i].terms_) ts.push_back({t.e.with(x, unsigned(i)), t.c});
    return from_terms(std::move(ts));
}

Rat Poly::eval(const Rat& q, const Rat& t, const Rat& k) const
{
    if (terms_.empty()) return Rat(0);
    std::vector<Rat> pw[3];
    const Rat* base[3] = {&q, &t, &k};
    for (int v = 0; v < 3; ++v) {
        unsigned d = deg(Var(v));
        pw[v].resize(d + 1);
        pw[v][0] = 1;
        for (unsigned i = 1; i <= d; ++i) pw[v][i] = pw[v][i - 1] * *base[v];
    }
    Rat s = 0;
    for (auto& tm : terms_)
        s += Rat(tm.c) * pw[0][tm.e[Var::q]] * pw[1][tm.e[Var::t]] * pw[2][tm.e[Var::k]];
    return s;
}

Poly Poly::subst(Var x, const Int& value) const
{
    auto cs = coeffs_in(x);
    Poly r;
    for (std::size_t i = cs.size(); i-- > 0;) r = r.scaled(value) + cs[i];
    return r;
}

std::size_t Poly::hash() const
{
    std::size_t h = terms_.size();
    for (auto& t : terms_) {
        h = h * 1000003u ^ std::hash<std::uint64_t>{}(t.e.v);
        h = h * 1000003u ^ std::size_t(mpz_get_si(t.c.get_mpz_t()));
    }
    return h;
}

std::optional<Poly> try_divide(const Poly& a, const Poly& b)
{
    if (b.is_zero()) throw DivisionByZero("polynomial division by zero");
    if (a.is_zero()) return Poly();
    if (b.is_monomial()) {
        const auto& bt = b.terms()[0];
        std::vector<Poly::Term> ts;
        ts.reserve(a.size());
        for (auto& t : a.terms()) {
            if (!bt.e.divides(t.e) || !mpz_divisible_p(t.c.get_mpz_t(), bt.c.get_mpz_t()))
                return std::nullopt;
            Int c;
            mpz_divexact(c.get_mpz_t(), t.c.get_mpz_t(), bt.c.get_mpz_t());
            ts.push_back({t.e - bt.e, std::move(c)});
        }
        return Poly::from_terms(std::move(ts));
    }
    for (Var x : {Var::q, Var::t, Var::k})
        if (b.deg(x) > a.deg(x)) return std::nullopt;
    Poly r = a;
    std::vector<Poly::Term> qt;
    const auto& lb = b.terms()[0];
    while (!r.is_zero()) {
        const auto& lr = r.terms()[0];
        if (!lb.e.divides(lr.e) || !mpz_divisible_p(lr.c.get_mpz_t(), lb.c.get_mpz_t()))
            return std::nullopt;
        Int c;
        mpz_divexact(c.get_mpz_t(), lr.c.get_mpz_t(), lb.c.get_mpz_t());
        Exp e = lr.e - lb.e;
        r -= b.shifted(e).scaled(c);
        qt.push_back({e, std::move(c)});
    }
    return Poly::from_terms(std::move(qt));
}

Poly divide_exact(const Poly& a, const Poly& b)
{
    auto r = try_divide(a, b);
    if (!r) throw std::logic_error("inexact polynomial division");
    return std::move(*r);
}

Poly normalized(const Poly& p)
{
    if (!p.is_zero() && p.lc() < 0) return -p;
    return p;
}

namespace {

Poly monomial_gcd(const Poly& m, const Poly& p)
{
    const auto& mt = m.terms()[0];
    Int c = gcd(Int(abs(mt.c)), p.content());
    unsigned d[3];
    for (int v = 0; v < 3; ++v) d[v] = std::min(mt.e[Var(v)], p.min_deg(Var(v)));
    return Poly::monomial(c, Exp::make(d[0], d[1], d[2]));
}

Poly content_in(const Poly& p, Var x)
{
    auto cs = p.coeffs_in(x);
    Poly g;
    for (auto& c : cs) {
        if (c.is_zero()) continue;
        g = gcd(g, c);
        if (g.is_one()) break;
    }
    return g;
}

// Pseudo-remainder of a by b in x, up to a nonzero factor.
std::vector<Poly> prem(std::vector<Poly> a, const std::vector<Poly>& b)
{
    const std::size_t n = b.size() - 1;
    const Poly& lb = b.back();
    while (!a.empty() && a.size() - 1 >= n) {
        std::size_t d = a.size() - 1;
        Poly la = a.back();
        for (std::size_t i = 0; i < d; ++i) a[i] = a[i] * lb;
        for (std::size_t i = 0; i < n; ++i) a[d - n + i] -= la * b[i];
        a.pop_back();
        while (!a.empty() && a.back().is_zero()) a.pop_back();
    }
    return a;
}

// Images in Z/p[x], other variables at fixed points. deg gcd of images bounds
// the true degree when both leading coefficients survive.
using u64 = std::uint64_t;
constexpr u64 kP = (u64(1) << 61) - 1;

u64 mulm(u64 a, u64 b)
{
    unsigned __int128 r = (unsigned __int128)a * b;
    u64 s = u64(r & kP) + u64(r >> 61);
    return s >= kP ? s - kP : s;
}
u64 addm(u64 a, u64 b) { return a + b >= kP ? a + b - kP : a + b; }
u64 subm(u64 a, u64 b) { return a >= b ? a - b : a + kP - b; }
u64 powm(u64 a, u64 e)
{
    u64 r = 1;
    for (; e; e >>= 1, a = mulm(a, a))
        if (e & 1) r = mulm(r, a);
    return r;
}

std::vector<u64> image(const Poly& a, Var x)
{
    static const u64 pts[3] = {1000003, 2718281, 3141592};
    std::vector<u64> c(a.deg(x) + 1, 0);
    for (auto& t : a.terms()) {
        u64 v = mpz_fdiv_ui(t.c.get_mpz_t(), kP);
        for (Var y : {Var::q, Var::t, Var::k})
            if (y != x) v = mulm(v, powm(pts[int(y)], t.e[y]));
        c[t.e[x]] = addm(c[t.e[x]], v);
    }
    return c;
}

int image_gcd_degree(const Poly& a, const Poly& b, Var x)
{
    auto A = image(a, x), B = image(b, x);
    if (A.back() == 0 || B.back() == 0) return -1;
    while (!B.empty()) {
        if (A.size() < B.size()) std::swap(A, B);
        u64 il = powm(B.back(), kP - 2);
        while (A.size() >= B.size()) {
            u64 f = mulm(A.back(), il);
            std::size_t sh = A.size() - B.size();
            for (std::size_t i = 0; i < B.size(); ++i) A[sh + i] = subm(A[sh + i], mulm(f, B[i]));
            A.pop_back();
            while (!A.empty() && A.back() == 0) A.pop_back();
            if (A.empty()) break;
        }
        std::swap(A, B);
    }
    return int(A.size()) - 1;
}

Int max_norm(const Poly& p)
{
    Int m = 0;
    for (auto& t : p.terms())
        if (abs(t.c) > m) m = abs(t.c);
    return m;
}

// Symmetric xi-adic expansion of the integer coefficients of h as a polynomial in x.
Poly xi_adic(const Poly& h, Var x, const Int& xi)
{
    std::vector<Poly::Term> ts;
    Int half = xi / 2;
    for (auto& t : h.terms()) {
        Int c = t.c;
        for (unsigned i = 0; c != 0; ++i) {
            Int d;
            mpz_fdiv_r(d.get_mpz_t(), c.get_mpz_t(), xi.get_mpz_t());
            if (d > half) d -= xi;
            if (d != 0) ts.push_back({t.e.with(x, i), d});
            c = (c - d) / xi;
        }
    }
    return Poly::from_terms(std::move(ts));
}

// Heuristic gcd by evaluation at a large integer; a result is only returned
// after it divides both inputs.
std::optional<Poly> gcd_heu(const Poly& a, const Poly& b, Var x)
{
    Int ca = a.content(), cb = b.content();
    Poly pa = divide_exact(a, Poly(ca)), pb = divide_exact(b, Poly(cb));
    Int c = gcd(ca, cb);
    Int xi = 2 * std::min(max_norm(pa), max_norm(pb)) + 29;
    const std::size_t dmax = std::max(pa.deg(x), pb.deg(x));
    for (int attempt = 0; attempt < 6; ++attempt, xi = xi * 73794 / 27011) {
        if (mpz_sizeinbase(xi.get_mpz_t(), 2) * dmax > 4000000) break;
        Poly ea = pa.subst(x, xi), eb = pb.subst(x, xi);
        if (ea.is_zero() || eb.is_zero()) continue;
        Poly g = xi_adic(gcd(ea, eb), x, xi);
        if (g.is_zero()) continue;
        g = normalized(divide_exact(g, Poly(g.content())));
        if (try_divide(pa, g) && try_divide(pb, g)) return g.scaled(c);
    }
    return std::nullopt;
}

std::vector<Poly> primitive(std::vector<Poly> a)
{
    Poly g;
    for (auto& c : a) {
        if (c.is_zero()) continue;
        g = gcd(g, c);
        if (g.is_one()) return a;
    }
    for (auto& c : a) c = divide_exact(c, g);
    return a;
}

}  // namespace

Poly gcd(const Poly& a, const Poly& b)
{
    if (a.is_zero()) return normalized(b);
    if (b.is_zero()) return normalized(a);
    if (a.is_const() || b.is_const()) return Poly(gcd(a.content(), b.content()));
    if (a == b) return normalized(a);
    if (a.is_monomial()) return monomial_gcd(a, b);
    if (b.is_monomial()) return monomial_gcd(b, a);

    // monomial factors
    unsigned md[3];
    bool has_mono = false;
    for (int v = 0; v < 3; ++v) {
        md[v] = std::min(a.min_deg(Var(v)), b.min_deg(Var(v)));
        has_mono = has_mono || md[v] > 0;
    }
    if (has_mono) {
        Exp e = Exp::make(md[0], md[1], md[2]);
        Poly m = Poly::monomial(Int(1), e);
        return gcd(divide_exact(a, m), divide_exact(b, m)) * m;
    }

    {
        bool ok = true, trivial = true, b_bound = true, a_bound = true;
        for (Var v : {Var::q, Var::t, Var::k}) {
            int d = 0;
            if (a.deg(v) > 0 && b.deg(v) > 0) d = image_gcd_degree(a, b, v);
            if (d < 0) {
                ok = false;
                break;
            }
            trivial = trivial && d == 0;
            b_bound = b_bound && unsigned(d) == b.deg(v);
            a_bound = a_bound && unsigned(d) == a.deg(v);
        }
        if (ok && trivial) return Poly(gcd(a.content(), b.content()));
        if (ok && b_bound && try_divide(a, b)) return normalized(b);
        if (ok && a_bound && try_divide(b, a)) return normalized(a);
    }

    // least-degree main variable
    Var x = Var::q;
    unsigned best = ~0u;
    for (Var v : {Var::q, Var::t, Var::k}) {
        unsigned d = std::max(a.deg(v), b.deg(v));
        if (d > 0 && d < best) {
            best = d;
            x = v;
        }
    }
    if (a.deg(x) == 0) return gcd(a, content_in(b, x));
    if (b.deg(x) == 0) return gcd(content_in(a, x), b);
    if (auto h = gcd_heu(a, b, x)) return *h;

    Poly ca = content_in(a, x), cb = content_in(b, x);
    Poly c = gcd(ca, cb);
    auto A = a.coeffs_in(x), B = b.coeffs_in(x);
    if (!ca.is_one())
        for (auto& p : A) p = divide_exact(p, ca);
    if (!cb.is_one())
        for (auto& p : B) p = divide_exact(p, cb);
    if (A.size() < B.size()) std::swap(A, B);
    while (true) {
        auto R = prem(A, B);
        if (R.empty()) break;
        if (R.size() == 1) return normalized(c);
        A = std::move(B);
        B = primitive(std::move(R));
    }
    return normalized(c * Poly::from_coeffs(x, primitive(std::move(B))));
}

}  // namespace qcalc
