#include "qcalc/field.hpp"

#include <algorithm>
#include <sstream>

namespace qcalc {

BaseRat::BaseRat(Poly num, Poly den)
{
    if (den.is_zero()) throw DivisionByZero("zero denominator");
    Poly g = gcd(num, den);
    if (!g.is_one() && !num.is_zero()) {
        num = divide_exact(num, g);
        den = divide_exact(den, g);
    } else if (num.is_zero()) {
        den = Poly(1);
    }
    if (den.lc() < 0) {
        num = -num;
        den = -den;
    }
    num_ = std::move(num);
    den_ = std::move(den);
}

BaseRat operator+(const BaseRat& x, const BaseRat& y)
{
    if (x.den_ == y.den_) return BaseRat(x.num_ + y.num_, x.den_);
    return BaseRat(x.num_ * y.den_ + y.num_ * x.den_, x.den_ * y.den_);
}

BaseRat operator-(const BaseRat& x, const BaseRat& y) { return x + (-y); }

BaseRat operator*(const BaseRat& x, const BaseRat& y)
{
    return BaseRat(x.num_ * y.num_, x.den_ * y.den_);
}

BaseRat operator/(const BaseRat& x, const BaseRat& y)
{
    if (y.is_zero()) throw DivisionByZero("division by zero");
    return BaseRat(x.num_ * y.den_, x.den_ * y.num_);
}

Rat BaseRat::eval(const Rat& q, const Rat& t, const Rat& k) const
{
    Rat d = den_.eval(q, t, k);
    if (d == 0) throw EvalDenominatorZero("denominator vanishes at evaluation point");
    return num_.eval(q, t, k) / d;
}

namespace {

bool rational_sqrt(const Rat& x, Rat& out)
{
    if (x < 0) return false;
    Int n = x.get_num(), d = x.get_den();
    if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) return false;
    Int rn, rd;
    mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
    out = Rat(rn, rd);
    out.canonicalize();
    return true;
}

}  // namespace

Point Point::pythagorean(const Rat& u, const Rat& t, const Rat& k)
{
    if (u == 0) throw NonPythagoreanPoint("u must be nonzero");
    Rat q = (u * u - 1) / (2 * u), s = (u * u + 1) / (2 * u);
    return Point{q, s, t, k};
}

Point Point::at(const Rat& q, const Rat& t, const Rat& k)
{
    Rat s;
    if (!rational_sqrt(1 + q * q, s)) throw NonPythagoreanPoint("1+q^2 is not a rational square at q=" + q.get_str());
    return Point{q, s, t, k};
}

FieldElem::FieldElem(const Rat& c) : a_(Int(c.get_num())), d_(Int(c.get_den())) {}

FieldElem::FieldElem(Poly a, Poly b, Poly d) : a_(std::move(a)), b_(std::move(b)), d_(std::move(d))
{
    if (d_.is_zero()) throw DivisionByZero("zero denominator");
    normalize();
}

FieldElem::FieldElem(const BaseRat& a, const BaseRat& b)
{
    Poly g = gcd(a.den(), b.den());
    Poly ua = divide_exact(b.den(), g), ub = divide_exact(a.den(), g);
    a_ = a.num() * ua;
    b_ = b.num() * ub;
    d_ = a.den() * ua;
    normalize();
}

void FieldElem::normalize()
{
    if (a_.is_zero() && b_.is_zero()) {
        d_ = Poly(1);
        return;
    }
    if (!d_.is_one()) {
        Poly g = a_.is_zero() ? gcd(b_, d_) : gcd(a_, d_);
        if (!g.is_one() && !a_.is_zero() && !b_.is_zero()) g = gcd(g, b_);
        if (!g.is_one()) {
            if (!a_.is_zero()) a_ = divide_exact(a_, g);
            if (!b_.is_zero()) b_ = divide_exact(b_, g);
            d_ = divide_exact(d_, g);
        }
    }
    if (d_.lc() < 0) {
        a_ = -a_;
        b_ = -b_;
        d_ = -d_;
    }
}

Rat FieldElem::as_rational() const
{
    if (!is_rational()) throw std::logic_error("not a rational constant: " + str());
    Rat r(a_.const_coeff(), d_.const_coeff());
    r.canonicalize();
    return r;
}

FieldElem FieldElem::operator-() const
{
    FieldElem x = *this;
    x.a_ = -x.a_;
    x.b_ = -x.b_;
    return x;
}

FieldElem operator+(const FieldElem& x, const FieldElem& y)
{
    if (x.is_zero()) return y;
    if (y.is_zero()) return x;
    if (x.d_ == y.d_) return FieldElem(x.a_ + y.a_, x.b_ + y.b_, x.d_);
    Poly g = gcd(x.d_, y.d_);
    Poly ux = divide_exact(y.d_, g), uy = divide_exact(x.d_, g);
    return FieldElem(x.a_ * ux + y.a_ * uy, x.b_ * ux + y.b_ * uy, x.d_ * ux);
}

FieldElem operator-(const FieldElem& x, const FieldElem& y) { return x + (-y); }

FieldElem operator*(const FieldElem& x, const FieldElem& y)
{
    if (x.is_zero() || y.is_zero()) return FieldElem();
    static const Poly r = Poly::var(Var::q, 2) + Poly(1);
    Poly a = x.a_ * y.a_, b;
    if (!x.b_.is_zero() && !y.b_.is_zero()) a += x.b_ * y.b_ * r;
    if (!x.b_.is_zero()) b += x.b_ * y.a_;
    if (!y.b_.is_zero()) b += x.a_ * y.b_;
    return FieldElem(std::move(a), std::move(b), x.d_ * y.d_);
}

FieldElem FieldElem::conj() const
{
    FieldElem x = *this;
    x.b_ = -x.b_;
    return x;
}

FieldElem FieldElem::inverse() const
{
    if (is_zero()) throw DivisionByZero("inverse of zero");
    static const Poly r = Poly::var(Var::q, 2) + Poly(1);
    Poly n = a_ * a_;
    if (!b_.is_zero()) n -= b_ * b_ * r;
    return FieldElem(a_ * d_, -(b_ * d_), n);
}

FieldElem operator/(const FieldElem& x, const FieldElem& y) { return x * y.inverse(); }

FieldElem invert(const FieldElem& x) { return x.inverse(); }

FieldElem FieldElem::pow(int n) const
{
    if (n < 0) return inverse().pow(-n);
    FieldElem r(1), b = *this;
    while (n) {
        if (n & 1) r = r * b;
        n >>= 1;
        if (n) b = b * b;
    }
    return r;
}

Rat FieldElem::eval(const Point& p) const
{
    Rat d = d_.eval(p.q, p.t, p.k);
    if (d == 0) throw EvalDenominatorZero("denominator vanishes at evaluation point");
    Rat v = a_.eval(p.q, p.t, p.k);
    if (!b_.is_zero()) v += b_.eval(p.q, p.t, p.k) * p.s;
    return v / d;
}

Rat eval(const FieldElem& x, const Point& p) { return x.eval(p); }

namespace {

FieldElem horner_t(const Poly& p, const FieldElem& v)
{
    auto cs = p.coeffs_in(Var::t);
    FieldElem r;
    for (std::size_t i = cs.size(); i-- > 0;) r = r * v + FieldElem(cs[i]);
    return r;
}

struct PrintTerm {
    Exp e;
    int s;
    Int c;
};

std::string monomial_str(const PrintTerm& t)
{
    std::vector<std::string> f;
    const char* names[3] = {"q", "t", "k"};
    for (int v = 0; v < 3; ++v) {
        unsigned d = t.e[Var(v)];
        if (d == 1) f.emplace_back(names[v]);
        else if (d > 1) f.push_back(std::string(names[v]) + "^" + std::to_string(d));
    }
    if (t.s) f.emplace_back("s");
    std::string out;
    for (auto& x : f) out += (out.empty() ? "" : "*") + x;
    return out;
}

std::string terms_str(std::vector<PrintTerm> ts)
{
    std::sort(ts.begin(), ts.end(), [](const PrintTerm& x, const PrintTerm& y) {
        if (!(x.e == y.e)) return y.e < x.e;
        return x.s > y.s;
    });
    std::string out;
    for (auto& t : ts) {
        bool neg = t.c < 0;
        Int c = abs(t.c);
        std::string m = monomial_str(t);
        std::string body = m.empty() ? c.get_str() : (c == 1 ? m : c.get_str() + "*" + m);
        if (out.empty()) out = neg ? "-" + body : body;
        else out += (neg ? " - " : " + ") + body;
    }
    return out.empty() ? "0" : out;
}

}  // namespace

FieldElem FieldElem::subst_t(const FieldElem& value) const
{
    if (a_.deg(Var::t) == 0 && b_.deg(Var::t) == 0 && d_.deg(Var::t) == 0) return *this;
    return (horner_t(a_, value) + horner_t(b_, value) * s()) / horner_t(d_, value);
}

std::string FieldElem::str() const
{
    std::vector<PrintTerm> num;
    for (auto& t : a_.terms()) num.push_back({t.e, 0, t.c});
    for (auto& t : b_.terms()) num.push_back({t.e, 1, t.c});
    std::string n = terms_str(num);
    if (d_.is_one()) return n;
    std::vector<PrintTerm> den;
    for (auto& t : d_.terms()) den.push_back({t.e, 0, t.c});
    std::string d = terms_str(den);
    if (num.size() > 1) n = "(" + n + ")";
    if (den.size() > 1 || d.find('*') != std::string::npos) d = "(" + d + ")";
    return n + " / " + d;
}

}  // namespace qcalc
