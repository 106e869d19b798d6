#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracle.hpp"
#include "qcalc/linalg.hpp"
#include "qcalc/upoly.hpp"

using namespace qcalc;

namespace {

Mat<FieldElem> random_mat(std::mt19937& rng, std::size_t n, std::size_t m, int zero_pct = 30)
{
    std::uniform_int_distribution<int> pct(0, 99);
    Mat<FieldElem> a(n, m);
    for (auto& x : a.a)
        if (pct(rng) >= zero_pct) x = oracle::random_elem(rng);
    return a;
}

Mat<Rat> random_rat(std::mt19937& rng, std::size_t n, std::size_t m)
{
    std::uniform_int_distribution<int> v(-5, 5);
    Mat<Rat> a(n, m);
    for (auto& x : a.a) x = Rat(v(rng)) / (1 + (v(rng) & 3));
    return a;
}

UPoly up(std::vector<long> cs)
{
    std::vector<Rat> r;
    for (long c : cs) r.push_back(c);
    return UPoly(r);
}

}  // namespace

TEST_CASE("det is multiplicative")
{
    std::mt19937 rng(1);
    for (int it = 0; it < 4; ++it) {
        auto a = random_mat(rng, 3, 3), b = random_mat(rng, 3, 3);
        CHECK(det(a * b) == det(a) * det(b));
    }
    for (int it = 0; it < 10; ++it) {
        auto a = random_rat(rng, 6, 6), b = random_rat(rng, 6, 6);
        CHECK(det(a * b) == det(a) * det(b));
    }
}

TEST_CASE("det agrees with the reference elimination")
{
    std::mt19937 rng(2);
    for (int it = 0; it < 10; ++it) {
        auto a = random_rat(rng, 7, 7);
        CHECK(det(a) == oracle::det(oracle::grid(a)));
        CHECK(det_gauss(a) == det(a));
    }
    for (int it = 0; it < 4; ++it) {
        auto a = random_mat(rng, 4, 4, 50);
        FieldElem d = det(a);
        CHECK(d == det_gauss(a));
        Point p = Point::pythagorean(Rat(3), Rat(2), Rat(5));
        try {
            CHECK(d.eval(p) == oracle::det(oracle::grid(evaluate(a, p))));
        } catch (const EvalDenominatorZero&) {
        }
    }
}

TEST_CASE("det of block structured matrices")
{
    Mat<FieldElem> m(4, 4);
    FieldElem q = FieldElem::q(), s = FieldElem::s();
    m(0, 2) = q;
    m(2, 0) = s;
    m(1, 1) = q + FieldElem(1);
    m(3, 3) = FieldElem(2);
    m(1, 3) = q * s;
    CHECK(det(m) == det_gauss(m));
    CHECK(det(m) == -(q * s) * (q + FieldElem(1)) * FieldElem(2));
}

TEST_CASE("kernel vectors are annihilated and rank-nullity holds")
{
    std::mt19937 rng(3);
    for (int it = 0; it < 4; ++it) {
        auto a = random_mat(rng, 3, 5, 40);
        auto ker = kernel(a);
        CHECK(rank(a) + ker.size() == 5);
        for (auto& v : ker) CHECK(vec_is_zero(a * v));
    }
    auto r = random_rat(rng, 4, 7);
    CHECK(rank(r) == oracle::rank(oracle::grid(r)));
}

TEST_CASE("solve and inverse round trip")
{
    std::mt19937 rng(4);
    for (int it = 0; it < 3; ++it) {
        auto a = random_mat(rng, 3, 3, 45);
        if (det(a).is_zero()) continue;
        Vec<FieldElem> x{oracle::random_elem(rng), oracle::random_elem(rng), oracle::random_elem(rng)};
        CHECK(solve(a, a * x) == x);
        CHECK(inverse(a) * a == Mat<FieldElem>::identity(3));
    }
    Mat<Rat> z(2, 2);
    z(0, 0) = 1;
    CHECK_THROWS_AS(solve(z, Vec<Rat>{1, 1}), SingularMatrix);
}

TEST_CASE("matrix JSON round trip")
{
    std::mt19937 rng(5);
    auto a = random_mat(rng, 2, 3);
    a.row_labels = {"a", "b"};
    a.col_labels = {"x", "y", "z"};
    auto j = to_json(a);
    CHECK(j["dimensions"][0] == 2);
    CHECK(mat_from_json(nlohmann::json::parse(j.dump()), Bindings::generic()) == Mat<FieldElem>(a));
}

TEST_CASE("interpolation recovers a polynomial")
{
    UPoly p = up({3, 0, -2, 5, 1});
    std::vector<Rat> xs, ys;
    for (int i = 0; i < 5; ++i) {
        xs.push_back(Rat(i) / 3);
        ys.push_back(p(xs.back()));
    }
    CHECK(interpolate(xs, ys) == p);
}

TEST_CASE("division, gcd and squarefree part")
{
    UPoly a = up({-1, 0, 1}), b = up({1, 0, 1});
    UPoly p = a * a * b, quo, rem;
    divmod(p, b, quo, rem);
    CHECK(rem.is_zero());
    CHECK(quo == a * a);
    CHECK(gcd(p, a * up({2, 1})) == a);
    CHECK(squarefree(p) == (a * b).primitive());
}

TEST_CASE("q^10 - q^4 - q^2 + 1 = (q^2 - 1)(q^8 + q^6 + q^4 - 1)")
{
    std::vector<long> f{-1, 0, 0, 0, 1, 0, 1, 0, 1}, g{-1, 0, 1}, want{1, 0, -1, 0, -1, 0, 0, 0, 0, 0, 1};
    std::vector<long> prod(f.size() + g.size() - 1, 0);
    for (std::size_t i = 0; i < f.size(); ++i)
        for (std::size_t j = 0; j < g.size(); ++j) prod[i + j] += f[i] * g[j];
    CHECK(prod == want);
    UPoly quo, rem;
    divmod(up(want), up(g), quo, rem);
    CHECK(rem.is_zero());
    CHECK(quo == up(f));
}

TEST_CASE("q^8 + q^6 + q^4 - 1 has a certified root in (0.82, 0.83)")
{
    std::vector<long> f{-1, 0, 0, 0, 1, 0, 1, 0, 1};
    Rat lo(41, 50), hi(83, 100);
    CHECK(sgn(oracle::horner(f, lo)) < 0);
    CHECK(sgn(oracle::horner(f, hi)) > 0);
    auto roots = isolate_roots(up(f), Rat(0), Rat(1), Rat(1, 1000000));
    REQUIRE(roots.size() == 1);
    CHECK(roots[0].lo >= lo);
    CHECK(roots[0].hi <= hi);
    CHECK(roots[0].hi - roots[0].lo <= Rat(1, 1000000));
    CHECK(sturm_count(sturm_chain(up(f)), roots[0].lo, roots[0].hi) == 1);
    CHECK(sgn(oracle::horner(f, roots[0].lo)) != sgn(oracle::horner(f, roots[0].hi)));
}

TEST_CASE("Sturm counts match known roots")
{
    UPoly p = up({-6, 11, -6, 1});  // roots 1, 2, 3
    auto ch = sturm_chain(p);
    CHECK(sturm_count(ch, Rat(0), Rat(4)) == 3);
    CHECK(sturm_count(ch, Rat(3, 2), Rat(5, 2)) == 1);
    CHECK(sturm_count(ch, Rat(4), Rat(10)) == 0);
    CHECK(isolate_roots(p, Rat(0), Rat(4), Rat(1, 100)).size() == 3);
}
