#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracle.hpp"
#include "qcalc/connection.hpp"

using namespace qcalc;

namespace {

const Calculus<FieldElem>& calc()
{
    static const Calculus<FieldElem> c = make_calculus(load_eigen_data(default_table_path(), "reconstructed"));
    return c;
}

const std::vector<Mat<FieldElem>>& basis()
{
    static const auto b = metric_basis(calc());
    return b;
}

const ExampleMetric& example()
{
    static const ExampleMetric e = example_metric(basis());
    return e;
}

const Point pt = Point::pythagorean(Rat(2), Rat(2), Rat(3));

Calculus<Rat> calc_at(const Point& p) { return make_calculus(evaluate(calc().data, p)); }

}  // namespace

TEST_CASE("nabla0 is torsion free for both signs")
{
    for (Sign s : {Sign::plus, Sign::minus}) {
        Mat<FieldElem> n0 = build_nabla0(calc(), s);
        CHECK(n0.rows == 16);
        CHECK(n0.cols == 4);
        CHECK(torsion(calc(), n0, s).is_zero());
    }
}

TEST_CASE("nabla0 changes sign with the calculus sign")
{
    CHECK(build_nabla0(calc(), Sign::minus) == scaled(build_nabla0(calc(), Sign::plus), FieldElem(-1)));
}

TEST_CASE("torsion detects a perturbed connection")
{
    Mat<FieldElem> n0 = build_nabla0(calc(), Sign::plus);
    n0(pair_index(0, 1), 0) += FieldElem(1);
    CHECK_FALSE(torsion(calc(), n0, Sign::plus).is_zero());
    // symmetric perturbations stay torsion free
    Mat<FieldElem> n1 = build_nabla0(calc(), Sign::plus);
    for (std::size_t r = 0; r < 16; ++r) n1(r, 2) += calc().nu(r, 3);
    CHECK(torsion(calc(), n1, Sign::plus).is_zero());
}

TEST_CASE("metric basis is ten independent sigma-invariant metrics")
{
    REQUIRE(basis().size() == 10);
    Mat<FieldElem> stacked(16, 10);
    for (std::size_t i = 0; i < 10; ++i) {
        CHECK(sigma_invariant(calc(), basis()[i]));
        stacked.set_column(i, vec_of(basis()[i]));
    }
    CHECK(rank(stacked) == 10);
    CHECK(mat_of(vec_of(basis()[3])) == basis()[3]);
}

TEST_CASE("a generic metric is not sigma-invariant")
{
    Mat<FieldElem> g = Mat<FieldElem>::identity(4);
    CHECK_FALSE(sigma_invariant(calc(), g));
}

TEST_CASE("example metric is nondegenerate")
{
    CHECK_FALSE(det(example().g).is_zero());
    CHECK(sigma_invariant(calc(), example().g));
}

TEST_CASE("Levi-Civita connection for the example metric")
{
    for (Sign s : {Sign::plus, Sign::minus}) {
        auto lc = levi_civita(calc(), example().g, s);
        CHECK(lc.torsion.is_zero());
        CHECK(lc.pi0.is_zero());
        CHECK(lc.nabla == build_nabla0(calc(), s) + calc().nu * lc.correction);
    }
}

TEST_CASE("symbolic solve agrees with the solve at a rational point")
{
    auto lc = levi_civita(calc(), example().g, Sign::plus);
    Calculus<Rat> c = calc_at(pt);
    auto lr = levi_civita(c, evaluate(example().g, pt), Sign::plus);
    CHECK(evaluate(lc.nabla, pt) == lr.nabla);
    CHECK(lr.torsion.is_zero());
    CHECK(lr.pi0.is_zero());
}

TEST_CASE("compat_linear is the linear part of pi0")
{
    Calculus<Rat> c = calc_at(pt);
    Mat<Rat> g = evaluate(example().g, pt);
    Mat<Rat> psi = compat_linear(c, g), n0 = build_nabla0(c, Sign::plus);
    std::mt19937 rng(17);
    std::uniform_int_distribution<int> v(-4, 4);
    for (int it = 0; it < 5; ++it) {
        Mat<Rat> l(10, 4);
        Vec<Rat> lv(40);
        for (std::size_t a = 0; a < 10; ++a)
            for (std::size_t k = 0; k < 4; ++k) lv[4 * a + k] = l(a, k) = v(rng);
        Mat<Rat> diff = (pi0(c, n0 + c.nu * l, g) - pi0(c, n0, g)) * c.nu;
        Vec<Rat> want = psi * lv;
        for (std::size_t x = 0; x < 4; ++x)
            for (std::size_t cc = 0; cc < 10; ++cc) CHECK(diff(x, cc) == want[10 * x + cc]);
    }
}

TEST_CASE("phi_g factors through psym23 and is invertible")
{
    Calculus<Rat> c = calc_at(pt);
    Mat<Rat> g = evaluate(example().g, pt);
    Mat<Rat> p23 = psym23_matrix(c), ph = phi_g(c, p23, g), psi = compat_linear(c, g);
    CHECK(oracle::rank(oracle::grid(ph)) == 40);
    CHECK(oracle::rank(oracle::grid(psi)) == 40);
    CHECK(inverse(ph) * ph == Mat<Rat>::identity(40));
    Vec<Rat> y(40);
    for (std::size_t i = 0; i < 40; ++i) y[i] = Rat(long(i) - 7) / 3;
    CHECK(ph * solve(ph, y) == y);
}

TEST_CASE("psym23 maps into the w (x) nu basis")
{
    Mat<FieldElem> p23 = psym23_matrix(calc());
    CHECK(p23.rows == 40);
    CHECK(p23.cols == 40);
    Calculus<Rat> c = calc_at(pt);
    CHECK(evaluate(p23, pt) == psym23_matrix(c));
}

TEST_CASE("no sigma-invariant metric leaves nabla0 compatible")
{
    for (Sign s : {Sign::plus, Sign::minus}) {
        Mat<FieldElem> n0 = build_nabla0(calc(), s), a(64, 10);
        for (std::size_t i = 0; i < 10; ++i) {
            Mat<FieldElem> p = pi0(calc(), n0, basis()[i]);
            for (std::size_t r = 0; r < 64; ++r) a(r, i) = p.a[r];
        }
        CHECK(kernel(a).empty());
    }
}

TEST_CASE("singular metrics are rejected")
{
    Mat<FieldElem> g = basis()[0];
    REQUIRE(det(g).is_zero());
    CHECK_THROWS_AS(levi_civita(calc(), g, Sign::plus), SingularMetric);
    CHECK_THROWS_AS(phi_g(calc(), psym23_matrix(calc()), g), SingularMetric);
}
