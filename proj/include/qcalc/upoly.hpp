#pragma once

#include "qcalc/poly.hpp"

#include <string>
#include <vector>

namespace qcalc {

// Dense univariate polynomial over Q, lowest degree first, no trailing zeros.
struct UPoly {
    std::vector<Rat> c;

    UPoly() = default;
    explicit UPoly(std::vector<Rat> cs);
    static UPoly from_poly_q(const Poly& p);

    int degree() const { return int(c.size()) - 1; }
    bool is_zero() const { return c.empty(); }
    const Rat& lead() const { return c.back(); }
    Rat operator()(const Rat& x) const;
    UPoly derivative() const;
    UPoly monic() const;
    // Integer coefficients, content removed, positive leading coefficient.
    UPoly primitive() const;
    std::string str() const;

    friend UPoly operator+(const UPoly& a, const UPoly& b);
    friend UPoly operator-(const UPoly& a, const UPoly& b);
    friend UPoly operator*(const UPoly& a, const UPoly& b);
    friend bool operator==(const UPoly& a, const UPoly& b) { return a.c == b.c; }
};

void divmod(const UPoly& a, const UPoly& b, UPoly& quo, UPoly& rem);
UPoly gcd(UPoly a, UPoly b);
UPoly squarefree(const UPoly& p);

// Lagrange/Newton interpolation through (x_i, y_i) with distinct x_i.
UPoly interpolate(const std::vector<Rat>& xs, const std::vector<Rat>& ys);

struct RootInterval {
    Rat lo, hi;
};

std::vector<UPoly> sturm_chain(const UPoly& p);
// Number of distinct real roots in (lo, hi].
int sturm_count(const std::vector<UPoly>& chain, const Rat& lo, const Rat& hi);
// Isolating intervals of the real roots of a squarefree p in (lo, hi), each
// refined to width <= width and certified by a Sturm count of one.
std::vector<RootInterval> isolate_roots(const UPoly& p, const Rat& lo, const Rat& hi, const Rat& width);

}  // namespace qcalc
