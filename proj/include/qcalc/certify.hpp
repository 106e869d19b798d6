#pragma once

#include "qcalc/printed.hpp"
#include "qcalc/upoly.hpp"

#include <optional>
#include <string>
#include <vector>

namespace qcalc {

class InterpolationInconsistent : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// 64x40 coefficient matrix of (q^2 s23 + 1)(s23 + q^2) on sum A_mn nu_m (x) w_n.
// Row 16i+4j+k is the (i+1,j+1,k+1) equation, column 4(m-1)+(n-1) is A_mn.
template <class S>
Mat<S> build_constraint_system(const Calculus<S>& c);

// M == (1+q^2)^2 * embed(psym23) column by column.
template <class S>
bool constraint_identity_holds(const Calculus<S>& c, const Mat<S>& m, const Mat<S>& psym23);

inline std::size_t unknown_column(const Unknown& u) { return std::size_t(4 * (u.first - 1) + (u.second - 1)); }

LinForm generated_row(const Mat<FieldElem>& m, const Triple& row);

// value / paper written as c * t^a * k^b * s^e, with t taken from the variant.
struct UnitFactor {
    FieldElem unit;
    Rat c;
    int t_exp = 0, k_exp = 0, s_exp = 0;
};

std::optional<UnitFactor> unit_factor(const FieldElem& value, const FieldElem& stated, const FieldElem& t_binding);

struct SubsystemResult {
    std::string label;
    FieldElem value;
    std::optional<FieldElem> paper_value;
    std::optional<FieldElem> printed_det;
    std::optional<UnitFactor> unit;
    bool exact = false;
    bool match = false;  // false when there is no paper value
};

std::vector<SubsystemResult> subsystem_determinants(const Mat<FieldElem>& m,
                                                    const std::vector<PrintedSubsystem>& subs,
                                                    const FieldElem& t_binding);

struct LemmaDiff {
    Triple row{};
    std::string status;  // equal, proportional, mismatch
    std::string generated, printed, note;
    std::optional<FieldElem> factor;  // generated = factor * printed
};

std::vector<LemmaDiff> regenerate_lemmas(const Mat<FieldElem>& m, const std::vector<PrintedRow>& rows);

struct ExceptionalResult {
    Rat t0, k0;
    bool identically_zero = false;
    int degree_bound = 0;
    int points = 0;
    UPoly numerator;  // squarefree, pole factors removed
    std::vector<RootInterval> roots;
    bool certified = true;  // Sturm count one on every interval
};

// Real roots in (-1,1)\{0} of det(psym23) at t = t0, k = k0 on the s > 0 branch.
// symbolic_det, when given, is compared at control points.
ExceptionalResult exceptional_q(const Mat<FieldElem>& psym23, const std::optional<FieldElem>& symbolic_det,
                                const Rat& t0, const Rat& k0, const Rat& width = Rat(1, 1000000));

bool same_roots(const ExceptionalResult& a, const ExceptionalResult& b);

struct Property {
    std::string name;
    bool pass = false;
};

struct CertifyOptions {
    std::string variant;
    Sign sign = Sign::plus;
    Rat t0 = 2, k0 = 3;
};

struct Certificate {
    CertifyOptions opt;
    FieldElem t_binding;
    Mat<FieldElem> constraint, psym23;
    FieldElem psym23_det;
    std::vector<SubsystemResult> subsystems;
    std::vector<LemmaDiff> lemmas;
    ExceptionalResult primary, secondary;
    std::vector<Property> properties;

    bool pass() const;
};

Certificate certify(const Calculus<FieldElem>& c, const PrintedFormulas& p, const FieldElem& t_binding,
                    const CertifyOptions& opt);

nlohmann::ordered_json to_json(const Certificate& cert);

std::string rat_str(const Rat& x);

}  // namespace qcalc
