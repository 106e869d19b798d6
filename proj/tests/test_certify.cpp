#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracle.hpp"
#include "qcalc/certify.hpp"

using namespace qcalc;

namespace {

const std::string variant = "reconstructed";

const FieldElem& t_binding()
{
    static const FieldElem t = variant_t(default_table_path(), variant);
    return t;
}

const Calculus<FieldElem>& calc()
{
    static const Calculus<FieldElem> c = make_calculus(load_eigen_data(default_table_path(), variant));
    return c;
}

const PrintedFormulas& printed()
{
    static const PrintedFormulas p = load_printed(default_printed_path(), Bindings::with_t(t_binding()));
    return p;
}

const Mat<FieldElem>& constraint()
{
    static const Mat<FieldElem> m = build_constraint_system(calc());
    return m;
}

const Mat<FieldElem>& p23()
{
    static const Mat<FieldElem> m = psym23_matrix(calc());
    return m;
}

const PrintedSubsystem& sub(const std::string& label)
{
    for (auto& s : printed().subsystems)
        if (s.label == label) return s;
    throw std::runtime_error("no subsystem " + label);
}

bool proportional(const LinForm& a, const LinForm& b)
{
    if (a.coeff.size() != b.coeff.size() || a.coeff.empty()) return false;
    auto first = a.coeff.begin();
    auto it = b.coeff.find(first->first);
    if (it == b.coeff.end()) return false;
    FieldElem f = first->second / it->second;
    for (auto& [u, v] : a.coeff) {
        auto jt = b.coeff.find(u);
        if (jt == b.coeff.end() || v != f * jt->second) return false;
    }
    return true;
}

Mat<FieldElem> one(const FieldElem& x)
{
    Mat<FieldElem> m(1, 1);
    m(0, 0) = x;
    return m;
}

const FieldElem q = FieldElem::q(), t = FieldElem::t(), k = FieldElem::k(), s = FieldElem::s();

}  // namespace

TEST_CASE("determinants of the printed subsystems")
{
    // Values as stated in the source text.
    const std::vector<std::pair<std::string, std::string>> stated{
        {"131/141", "q^2*(q^2+1)^2"},
        {"223/224", "(q^2+1)^2"},
        {"413/414/431", "2*q^10 - 2*q^4 - 2*q^2 + 2"},
        {"412/421/433/443", "4*q^14 + 10*q^12 - 10*q^10 - 8*q^8 + 26*q^4 - 26*q^2 + 4"},
        {"213/214", "q^4*(q^2+1)^2"},
        {"332/342", "q^4*(q^2+1)^2"},
    };
    for (auto& [label, text] : stated) {
        CAPTURE(label);
        FieldElem want = parse_field(text);
        REQUIRE(sub(label).paper_value.has_value());
        CHECK(*sub(label).paper_value == want);
        CHECK(det(printed_matrix(sub(label))) == want);
    }
}

TEST_CASE("printed 343/312/321/333 system has the stated determinant up to sign")
{
    FieldElem want = parse_field("-2*q^2*(q-1)^2*(q+1)^2*(q^2+1)^4");
    CHECK(*sub("343/312/321/333").paper_value == want);
    CHECK(det(printed_matrix(sub("343/312/321/333"))) == -want);
}

TEST_CASE("constraint system is (1+q^2)^2 times psym23 and has trivial kernel")
{
    CHECK(constraint().rows == 64);
    CHECK(constraint().cols == 40);
    CHECK(constraint_identity_holds(calc(), constraint(), p23()));
    CHECK(rank(constraint()) == 40);
}

TEST_CASE("constraint identity at a rational point")
{
    Point p = Point::pythagorean(Rat(3), Rat(2), Rat(3));
    Calculus<Rat> c = make_calculus(evaluate(calc().data, p));
    Mat<Rat> m = build_constraint_system(c);
    CHECK(m == evaluate(constraint(), p));
    CHECK(constraint_identity_holds(c, m, psym23_matrix(c)));
}

TEST_CASE("single-unknown rows")
{
    auto only = [&](Triple row, Unknown u) {
        LinForm f = generated_row(constraint(), row);
        CHECK(f.coeff.size() == 1);
        CHECK(f.coeff.count(u) == 1);
    };
    only({1, 1, 1}, {1, 1});
    only({4, 4, 4}, {4, 4});
    only({2, 4, 4}, {8, 4});
}

TEST_CASE("row (1,2,2) is proportional to the printed equation")
{
    LinForm printed_row = parse_linear("t*A[3,2] + A[5,2] + A[10,2]*t^2*k/(q*s)", Bindings::with_t(t_binding()));
    CHECK(proportional(generated_row(constraint(), {1, 2, 2}), printed_row));
}

TEST_CASE("psym23 has full rank at q = 3/4, t = 2, k = 3")
{
    Point p = Point::at(Rat(3, 4), Rat(2), Rat(3));
    auto g = oracle::grid(evaluate(p23(), p));
    CHECK(oracle::rank(g) == 40);
    CHECK(det(p23()).eval(p) == oracle::det(g));
}

TEST_CASE("psym23 determinant is a nonzero field element")
{
    FieldElem d = det(p23());
    CHECK_FALSE(d.is_zero());
    for (int u : {2, 3, 5}) {
        Point p = Point::pythagorean(Rat(u), Rat(2), Rat(3));
        CHECK(d.eval(p) == oracle::det(oracle::grid(evaluate(p23(), p))));
    }
}

TEST_CASE("subsystem determinants of the generated system")
{
    auto res = subsystem_determinants(constraint(), printed().subsystems, t_binding());
    REQUIRE(res.size() == printed().subsystems.size());
    for (auto& r : res) {
        CAPTURE(r.label);
        if (r.exact && r.match) {
            REQUIRE(r.unit.has_value());
            CHECK((r.unit->unit == FieldElem(1) || r.unit->unit == FieldElem(-1)));
        }
        if (r.match) CHECK(r.value == r.unit->unit * *r.paper_value);
    }
    CHECK(res[0].label == "131/141");
    CHECK(res[0].value == parse_field("q^2*(q^2+1)^2"));
}

TEST_CASE("unit factor search")
{
    FieldElem paper = parse_field("q^2 + 1");
    auto u = unit_factor(FieldElem(-3) * t * t / k * s * paper, paper, t);
    REQUIRE(u.has_value());
    CHECK(u->c == -3);
    CHECK(u->t_exp == 2);
    CHECK(u->k_exp == -1);
    CHECK(u->s_exp == 1);
    CHECK_FALSE(unit_factor((q + FieldElem(1)) * paper, paper, t).has_value());
    CHECK_FALSE(unit_factor(FieldElem(), paper, t).has_value());
}

TEST_CASE("lemma regeneration reports typo rows with both versions")
{
    auto diffs = regenerate_lemmas(constraint(), printed().lemma_rows);
    CHECK(diffs.size() == 64);
    std::size_t noted = 0, mismatched = 0;
    for (auto& d : diffs) {
        CHECK_FALSE(d.generated.empty());
        CHECK_FALSE(d.printed.empty());
        if (!d.note.empty()) ++noted;
        if (d.status == "mismatch") ++mismatched;
        if (d.status == "proportional") CHECK(d.factor.has_value());
    }
    CHECK(noted == 5);
    CHECK(mismatched > 0);
}

TEST_CASE("exceptional q of a synthetic determinant")
{
    Mat<FieldElem> m(2, 2);
    m(0, 0) = q.pow(10) - q.pow(4) - q.pow(2) + FieldElem(1);
    m(1, 1) = (q * q + FieldElem(1)) / (q + FieldElem(3));
    m(0, 1) = s * t;
    ExceptionalResult r = exceptional_q(m, det(m), Rat(2), Rat(3));
    CHECK_FALSE(r.identically_zero);
    CHECK(r.certified);
    bool found = false;
    for (auto& iv : r.roots) {
        CHECK(iv.hi - iv.lo <= Rat(1, 1000000));
        if (iv.lo >= Rat(41, 50) && iv.hi <= Rat(83, 100)) found = true;
    }
    CHECK(found);
    for (auto& iv : r.roots) CHECK((iv.lo > 0 ? iv.lo < 1 : iv.hi > -1));
}

TEST_CASE("exceptional q keeps only the s > 0 branch")
{
    // s - 5/4 vanishes at q = +-3/4 with s = 5/4; s + 5/4 only on the other branch.
    auto plus = exceptional_q(one(s - FieldElem(Rat(5, 4))), std::nullopt, Rat(2), Rat(3));
    CHECK(plus.roots.size() == 2);
    auto minus = exceptional_q(one(s + FieldElem(Rat(5, 4))), std::nullopt, Rat(2), Rat(3));
    CHECK(minus.roots.empty());
}

TEST_CASE("q = 0 and q = +-1 are excluded")
{
    auto r = exceptional_q(one(q * (q * q - FieldElem(1))), std::nullopt, Rat(2), Rat(3));
    CHECK(r.roots.empty());
    CHECK(r.numerator.degree() == 0);
}

TEST_CASE("inconsistent symbolic determinant is detected")
{
    Mat<FieldElem> m = one(q * q + FieldElem(2));
    CHECK_THROWS_AS(exceptional_q(m, q * q + FieldElem(3), Rat(2), Rat(3)), InterpolationInconsistent);
}

TEST_CASE("identically zero determinant")
{
    Mat<FieldElem> m(2, 2);
    m(0, 0) = q;
    m(0, 1) = q;
    m(1, 0) = t;
    m(1, 1) = t;
    CHECK(exceptional_q(m, std::nullopt, Rat(2), Rat(3)).identically_zero);
}

TEST_CASE("root sets compared across specializations")
{
    Mat<FieldElem> fixed = one(FieldElem(4) * q * q - FieldElem(1));
    CHECK(same_roots(exceptional_q(fixed, std::nullopt, Rat(2), Rat(3)),
                     exceptional_q(fixed, std::nullopt, Rat(5), Rat(7))));
    Mat<FieldElem> moving = one(FieldElem(8) * q - t);
    auto a = exceptional_q(moving, std::nullopt, Rat(2), Rat(3)), b = exceptional_q(moving, std::nullopt, Rat(3), Rat(7));
    CHECK(a.roots.size() == 1);
    CHECK(b.roots.size() == 1);
    CHECK_FALSE(same_roots(a, b));
}
