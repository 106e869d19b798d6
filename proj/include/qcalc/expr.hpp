#pragma once

#include "qcalc/field.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <utility>

namespace qcalc {

class ParseError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Values substituted for the symbols q, t, k, s, r while parsing.
struct Bindings {
    FieldElem q = FieldElem::q();
    FieldElem t = FieldElem::t();
    FieldElem k = FieldElem::k();
    FieldElem s = FieldElem::s();
    FieldElem r = FieldElem::r();

    static Bindings generic() { return {}; }
    static Bindings with_t(const FieldElem& t)
    {
        Bindings b;
        b.t = t;
        return b;
    }
};

using Unknown = std::pair<int, int>;

// c + sum_u coeff[u] * A[u]
struct LinForm {
    FieldElem c;
    std::map<Unknown, FieldElem> coeff;

    bool is_const() const { return coeff.empty(); }
    LinForm& operator+=(const LinForm& o);
    LinForm& operator-=(const LinForm& o);
    LinForm scaled(const FieldElem& x) const;
    std::string str() const;
};

// Grammar: sums, products, quotients, integer powers, parentheses, integers,
// symbols q t k s r, and unknowns A[m,n].
LinForm parse_linear(const std::string& text, const Bindings& b = Bindings::generic());
FieldElem parse_field(const std::string& text, const Bindings& b = Bindings::generic());
Rat parse_rational(const std::string& text);

}  // namespace qcalc
