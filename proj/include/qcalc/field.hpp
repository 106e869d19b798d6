#pragma once

#include "qcalc/poly.hpp"

#include <string>

namespace qcalc {

// num/den over Z[q,t,k], reduced, den with positive leading coefficient.
class BaseRat {
public:
    BaseRat() : den_(1) {}
    BaseRat(long c) : num_(c), den_(1) {}
    BaseRat(Poly num, Poly den);

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }

    friend BaseRat operator+(const BaseRat& x, const BaseRat& y);
    friend BaseRat operator-(const BaseRat& x, const BaseRat& y);
    friend BaseRat operator*(const BaseRat& x, const BaseRat& y);
    friend BaseRat operator/(const BaseRat& x, const BaseRat& y);
    BaseRat operator-() const { return BaseRat(-num_, den_, true); }
    friend bool operator==(const BaseRat& x, const BaseRat& y) { return x.num_ == y.num_ && x.den_ == y.den_; }

    Rat eval(const Rat& q, const Rat& t, const Rat& k) const;

private:
    BaseRat(Poly num, Poly den, bool) : num_(std::move(num)), den_(std::move(den)) {}
    Poly num_, den_;
};

class EvalDenominatorZero : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class NonPythagoreanPoint : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// A specialisation of (q, s, t, k) to rationals with s^2 = 1 + q^2.
struct Point {
    Rat q, s, t, k;

    // q = (u^2-1)/(2u), s = (u^2+1)/(2u); u -> -1/u flips the sign of s.
    static Point pythagorean(const Rat& u, const Rat& t, const Rat& k);
    // Rejects q with 1+q^2 not a rational square.
    static Point at(const Rat& q, const Rat& t, const Rat& k);
    Point conjugate() const { return Point{q, -s, t, k}; }
};

// Element (a + b*s)/d of Q(q,t,k)[s]/(s^2 - 1 - q^2).
// Stored with a common denominator; gcd(a, b, d) = 1 and lc(d) > 0.
class FieldElem {
public:
    FieldElem() : d_(1) {}
    FieldElem(long c) : a_(c), d_(1) {}
    FieldElem(const Int& c) : a_(c), d_(1) {}
    FieldElem(const Rat& c);
    FieldElem(const Poly& a) : a_(a), d_(1) {}
    FieldElem(Poly a, Poly b, Poly d);
    FieldElem(const BaseRat& a, const BaseRat& b);

    static FieldElem q() { return FieldElem(Poly::var(Var::q)); }
    static FieldElem t() { return FieldElem(Poly::var(Var::t)); }
    static FieldElem k() { return FieldElem(Poly::var(Var::k)); }
    static FieldElem s() { return FieldElem(Poly(), Poly(1), Poly(1)); }
    static FieldElem r() { return FieldElem(Poly::var(Var::q, 2) + Poly(1)); }

    const Poly& num_a() const { return a_; }
    const Poly& num_b() const { return b_; }
    const Poly& den() const { return d_; }
    BaseRat a() const { return BaseRat(a_, d_); }
    BaseRat b() const { return BaseRat(b_, d_); }

    bool is_zero() const { return a_.is_zero() && b_.is_zero(); }
    bool is_one() const { return b_.is_zero() && a_ == d_; }
    bool is_rational() const { return b_.is_zero() && a_.is_const() && d_.is_const(); }
    Rat as_rational() const;

    FieldElem operator-() const;
    friend FieldElem operator+(const FieldElem& x, const FieldElem& y);
    friend FieldElem operator-(const FieldElem& x, const FieldElem& y);
    friend FieldElem operator*(const FieldElem& x, const FieldElem& y);
    friend FieldElem operator/(const FieldElem& x, const FieldElem& y);
    FieldElem& operator+=(const FieldElem& y) { return *this = *this + y; }
    FieldElem& operator-=(const FieldElem& y) { return *this = *this - y; }
    FieldElem& operator*=(const FieldElem& y) { return *this = *this * y; }
    FieldElem& operator/=(const FieldElem& y) { return *this = *this / y; }
    FieldElem inverse() const;
    FieldElem conj() const;
    FieldElem pow(int n) const;

    friend bool operator==(const FieldElem& x, const FieldElem& y)
    {
        return x.a_ == y.a_ && x.b_ == y.b_ && x.d_ == y.d_;
    }
    friend bool operator!=(const FieldElem& x, const FieldElem& y) { return !(x == y); }

    Rat eval(const Point& p) const;
    FieldElem subst_t(const FieldElem& value) const;

    std::string str() const;

private:
    Poly a_, b_, d_;
    void normalize();
};

FieldElem invert(const FieldElem& x);
Rat eval(const FieldElem& x, const Point& p);

}  // namespace qcalc
