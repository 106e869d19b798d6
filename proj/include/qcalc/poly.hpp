#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qcalc {

using Int = mpz_class;
using Rat = mpq_class;

enum class Var { q = 0, t = 1, k = 2 };

// Exponents of q, t, k packed into one word; q occupies the top field so the
// natural integer order is lex order with q > t > k.
struct Exp {
    static constexpr int bits = 20;
    static constexpr std::uint64_t mask = (std::uint64_t{1} << bits) - 1;

    std::uint64_t v = 0;

    static Exp make(unsigned dq, unsigned dt, unsigned dk)
    {
        if (dq > mask || dt > mask || dk > mask) throw std::overflow_error("exponent too large");
        return Exp{(std::uint64_t(dq) << (2 * bits)) | (std::uint64_t(dt) << bits) | std::uint64_t(dk)};
    }
    unsigned operator[](Var x) const
    {
        return unsigned((v >> (bits * (2 - int(x)))) & mask);
    }
    bool divides(Exp o) const
    {
        for (Var x : {Var::q, Var::t, Var::k})
            if ((*this)[x] > o[x]) return false;
        return true;
    }
    Exp with(Var x, unsigned d) const
    {
        unsigned e[3] = {(*this)[Var::q], (*this)[Var::t], (*this)[Var::k]};
        e[int(x)] = d;
        return make(e[0], e[1], e[2]);
    }
    friend Exp operator+(Exp a, Exp b) { return Exp{a.v + b.v}; }
    friend Exp operator-(Exp a, Exp b) { return Exp{a.v - b.v}; }
    friend bool operator==(Exp a, Exp b) { return a.v == b.v; }
    friend bool operator<(Exp a, Exp b) { return a.v < b.v; }
};

class DivisionByZero : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Sparse polynomial in Z[q,t,k], terms kept in strictly decreasing lex order.
class Poly {
public:
    struct Term {
        Exp e;
        Int c;
    };

    Poly() = default;
    Poly(long c);
    Poly(const Int& c);
    static Poly monomial(const Int& c, Exp e);
    static Poly var(Var x, unsigned d = 1);
    static Poly from_terms(std::vector<Term> terms);

    bool is_zero() const { return terms_.empty(); }
    bool is_const() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].e.v == 0); }
    bool is_monomial() const { return terms_.size() == 1; }
    bool is_one() const { return is_const() && !terms_.empty() && terms_[0].c == 1; }
    std::size_t size() const { return terms_.size(); }
    const std::vector<Term>& terms() const { return terms_; }

    const Int& lc() const { return terms_.front().c; }
    Exp lexp() const { return terms_.front().e; }
    Int const_coeff() const;
    unsigned deg(Var x) const;
    unsigned min_deg(Var x) const;
    unsigned total_deg() const;
    Int content() const;

    Poly operator-() const;
    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    Poly& operator*=(const Poly& o);
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b);
    Poly scaled(const Int& c) const;
    Poly shifted(Exp e) const;
    Poly pow(unsigned n) const;

    friend bool operator==(const Poly& a, const Poly& b);
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    // Coefficients as a polynomial in x; entry i multiplies x^i.
    std::vector<Poly> coeffs_in(Var x) const;
    static Poly from_coeffs(Var x, const std::vector<Poly>& cs);

    Rat eval(const Rat& q, const Rat& t, const Rat& k) const;
    Poly subst(Var x, const Int& value) const;

    std::size_t hash() const;

private:
    std::vector<Term> terms_;
    void add_scaled(const Poly& o, int sign);
};

std::optional<Poly> try_divide(const Poly& a, const Poly& b);
Poly divide_exact(const Poly& a, const Poly& b);

// Greatest common divisor with positive leading coefficient; gcd(0,0)=0.
Poly gcd(const Poly& a, const Poly& b);

// Sign-normalised: leading coefficient positive.
Poly normalized(const Poly& p);

}  // namespace qcalc
