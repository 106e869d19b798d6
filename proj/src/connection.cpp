#include "qcalc/connection.hpp"

#include <algorithm>
#include <random>

namespace qcalc {

template <class S>
Mat<S> build_nabla0(const Calculus<S>& c, Sign sign)
{
    Mat<S> d = d_basis(c.br, sign, c.data.q, c.data.s);
    Mat<S> n(16, 4);
    for (std::size_t i = 0; i < 4; ++i) {
        Vec<S> v = wedge_embed(c.br, d.column(i));
        for (auto& x : v) x = -x;
        n.set_column(i, v);
    }
    n.row_labels = pair_labels();
    n.col_labels = e_labels();
    return n;
}

template <class S>
Mat<S> torsion(const Calculus<S>& c, const Mat<S>& nabla, Sign sign)
{
    Mat<S> t = d_basis(c.br, sign, c.data.q, c.data.s);
    for (std::size_t i = 0; i < 4; ++i) {
        Vec<S> w = wedge_rep(c.br, nabla.column(i));
        for (std::size_t a = 0; a < 6; ++a) t(a, i) += w[a];
    }
    return t;
}

template <class S>
Vec<S> vec_of(const Mat<S>& g)
{
    Vec<S> v(16);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) v[pair_index(i, j)] = g(i, j);
    return v;
}

template <class S>
Mat<S> mat_of(const Vec<S>& v)
{
    Mat<S> g(4, 4);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) g(i, j) = v[pair_index(i, j)];
    g.row_labels = g.col_labels = e_labels();
    return g;
}

template <class S>
bool sigma_invariant(const Calculus<S>& c, const Mat<S>& g)
{
    Vec<S> v = vec_of(g);
    return c.br.sigma.transpose() * v == v;
}

template <class S>
std::vector<Mat<S>> metric_basis(const Calculus<S>& c)
{
    Mat<S> m = c.br.sigma.transpose();
    for (std::size_t i = 0; i < 16; ++i) m(i, i) -= S(1);
    std::vector<Mat<S>> out;
    for (auto& v : kernel(m)) out.push_back(mat_of(v));
    return out;
}

ExampleMetric example_metric(const std::vector<Mat<FieldElem>>& basis, std::uint32_t seed)
{
    std::mt19937 rng(seed);
    std::uniform_int_distribution<long> pick(1, 2);
    std::uniform_int_distribution<int> flip(0, 1);
    const std::size_t n = basis.size();
    for (std::size_t support = 1; support <= n; ++support)
        for (int attempt = 0; attempt < 200; ++attempt) {
            std::vector<std::size_t> idx(n);
            for (std::size_t i = 0; i < n; ++i) idx[i] = i;
            std::shuffle(idx.begin(), idx.end(), rng);
            ExampleMetric e;
            e.coeffs.assign(n, 0);
            e.g = Mat<FieldElem>(4, 4);
            for (std::size_t i = 0; i < support; ++i) {
                long x = pick(rng) * (flip(rng) ? 1 : -1);
                e.coeffs[idx[i]] = x;
                e.g = e.g + scaled(basis[idx[i]], FieldElem(x));
            }
            if (!is_zero(det(e.g))) {
                e.g.row_labels = e.g.col_labels = e_labels();
                return e;
            }
        }
    throw SingularMetric("no nondegenerate metric found in the search range");
}

template <class S>
Mat<S> pi0(const Calculus<S>& c, const Mat<S>& nabla, const Mat<S>& g)
{
    Mat<S> y = c.br.sigma * nabla;
    Mat<S> z(4, 16);
    for (std::size_t m = 0; m < 4; ++m)
        for (std::size_t n = 0; n < 4; ++n)
            for (std::size_t e = 0; e < 4; ++e) {
                const S& ye = y(pair_index(m, n), e);
                if (is_zero(ye)) continue;
                for (std::size_t f = 0; f < 4; ++f)
                    if (!is_zero(g(n, f))) z(m, pair_index(e, f)) += ye * g(n, f);
            }
    Mat<S> p = scaled(z * c.psym, S(2));
    p.row_labels = e_labels();
    p.col_labels = pair_labels();
    return p;
}

template <class S>
Mat<S> compat_linear(const Calculus<S>& c, const Mat<S>& g)
{
    // h[a][x][l] = sum_y nu_a[x,y] g[y][l]
    std::vector<S> h(10 * 16, S(0));
    for (std::size_t a = 0; a < 10; ++a)
        for (std::size_t x = 0; x < 4; ++x)
            for (std::size_t y = 0; y < 4; ++y) {
                const S& v = c.nu(pair_index(x, y), a);
                if (is_zero(v)) continue;
                for (std::size_t l = 0; l < 4; ++l)
                    if (!is_zero(g(y, l))) h[a * 16 + x * 4 + l] += v * g(y, l);
            }
    Mat<S> psi(40, 40);
    for (std::size_t a = 0; a < 10; ++a)
        for (std::size_t x = 0; x < 4; ++x)
            for (std::size_t l = 0; l < 4; ++l) {
                const S& hv = h[a * 16 + x * 4 + l];
                if (is_zero(hv)) continue;
                for (std::size_t cc = 0; cc < 10; ++cc)
                    for (std::size_t k = 0; k < 4; ++k) {
                        const S& nv = c.nu(pair_index(k, l), cc);
                        if (!is_zero(nv)) psi(x * 10 + cc, a * 4 + k) += S(2) * hv * nv;
                    }
            }
    return psi;
}

template <class S>
Mat<S> psym23_matrix(const Calculus<S>& c)
{
    Mat<S> lift = lift23(c.psym);
    Mat<S> out(40, 40);
    for (std::size_t a = 0; a < 10; ++a)
        for (std::size_t j = 0; j < 4; ++j) {
            Vec<S> v(64, S(0));
            for (std::size_t x = 0; x < 4; ++x)
                for (std::size_t y = 0; y < 4; ++y) v[triple_index(x, y, j)] = c.nu(pair_index(x, y), a);
            Vec<S> w = lift * v;
            for (std::size_t i = 0; i < 4; ++i) {
                Vec<S> part(w.begin() + 16 * i, w.begin() + 16 * i + 16);
                Vec<S> coeff = c.nu_inv * part;
                if (c.nu * coeff != part)
                    throw BasisChangeFailure("image of nu" + std::to_string(a + 1) + "*w" + std::to_string(j + 1) +
                                             " leaves the w (x) nu span");
                for (std::size_t b = 0; b < 10; ++b) out(10 * i + b, 4 * a + j) = coeff[b];
            }
        }
    for (std::size_t a = 0; a < 10; ++a)
        for (std::size_t j = 0; j < 4; ++j)
            out.col_labels.push_back("nu" + std::to_string(a + 1) + "*w" + std::to_string(j + 1));
    for (std::size_t j = 0; j < 4; ++j)
        for (std::size_t b = 0; b < 10; ++b)
            out.row_labels.push_back("w" + std::to_string(j + 1) + "*nu" + std::to_string(b + 1));
    return out;
}

template <class S>
Vec<S> embed_w_nu(const Calculus<S>& c, const Vec<S>& y)
{
    Vec<S> v(64, S(0));
    for (std::size_t j = 0; j < 4; ++j)
        for (std::size_t b = 0; b < 10; ++b) {
            const S& yb = y[10 * j + b];
            if (is_zero(yb)) continue;
            for (std::size_t p = 0; p < 16; ++p)
                if (!is_zero(c.nu(p, b))) v[16 * j + p] += yb * c.nu(p, b);
        }
    return v;
}

template <class S>
Mat<S> g2_grid(const Calculus<S>& c, const Mat<S>& g)
{
    Mat<S> w(10, 10);
    for (std::size_t b = 0; b < 10; ++b)
        for (std::size_t cc = 0; cc < 10; ++cc)
            for (std::size_t p = 0; p < 16; ++p) {
                const S& vb = c.nu(p, b);
                if (is_zero(vb)) continue;
                std::size_t e1 = p / 4, e2 = p % 4;
                for (std::size_t r = 0; r < 16; ++r) {
                    const S& vc = c.nu(r, cc);
                    if (is_zero(vc)) continue;
                    std::size_t e3 = r / 4, e4 = r % 4;
                    S f = g(e2, e3) * g(e1, e4);
                    if (!is_zero(f)) w(b, cc) += vb * vc * f;
                }
            }
    w.row_labels = w.col_labels = nu_labels();
    return w;
}

template <class S>
Mat<S> phi_g(const Calculus<S>& c, const Mat<S>& psym23, const Mat<S>& g)
{
    if (is_zero(det(g))) throw SingularMetric("metric matrix is singular");
    Mat<S> gi = inverse(g);
    Mat<S> left(40, 40), right(40, 40);
    for (std::size_t a = 0; a < 10; ++a)
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t l = 0; l < 4; ++l) right(4 * a + i, 4 * a + l) = gi(l, i);
    Mat<S> w = g2_grid(c, g);
    for (std::size_t j = 0; j < 4; ++j)
        for (std::size_t b = 0; b < 10; ++b)
            for (std::size_t cc = 0; cc < 10; ++cc) left(10 * j + cc, 10 * j + b) = w(b, cc);
    return left * (psym23 * right);
}

template <class S>
LeviCivita<S> levi_civita(const Calculus<S>& c, const Mat<S>& g, Sign sign)
{
    if (g.rows != 4 || g.cols != 4 || is_zero(det(g))) throw SingularMetric("metric matrix is singular");
    LeviCivita<S> lc;
    Mat<S> n0 = build_nabla0(c, sign);
    Mat<S> k0 = pi0(c, n0, g) * c.nu;
    Vec<S> rhs(40);
    for (std::size_t x = 0; x < 4; ++x)
        for (std::size_t cc = 0; cc < 10; ++cc) rhs[10 * x + cc] = -k0(x, cc);
    Vec<S> l;
    try {
        l = solve(compat_linear(c, g), rhs);
    } catch (const SingularMatrix& e) {
        throw PhiSingular(std::string("compatibility map is singular: ") + e.what());
    }
    lc.correction = Mat<S>(10, 4);
    for (std::size_t a = 0; a < 10; ++a)
        for (std::size_t k = 0; k < 4; ++k) lc.correction(a, k) = l[4 * a + k];
    lc.correction.row_labels = nu_labels();
    lc.correction.col_labels = e_labels();
    lc.nabla = n0 + c.nu * lc.correction;
    lc.nabla.row_labels = pair_labels();
    lc.nabla.col_labels = e_labels();
    lc.torsion = torsion(c, lc.nabla, sign);
    lc.pi0 = pi0(c, lc.nabla, g);
    return lc;
}

#define QCALC_INSTANTIATE(S)                                                   \
    template Mat<S> build_nabla0(const Calculus<S>&, Sign);                    \
    template Mat<S> torsion(const Calculus<S>&, const Mat<S>&, Sign);          \
    template Vec<S> vec_of(const Mat<S>&);                                     \
    template Mat<S> mat_of(const Vec<S>&);                                     \
    template bool sigma_invariant(const Calculus<S>&, const Mat<S>&);          \
    template std::vector<Mat<S>> metric_basis(const Calculus<S>&);             \
    template Mat<S> pi0(const Calculus<S>&, const Mat<S>&, const Mat<S>&);     \
    template Mat<S> compat_linear(const Calculus<S>&, const Mat<S>&);          \
    template Mat<S> psym23_matrix(const Calculus<S>&);                         \
    template Vec<S> embed_w_nu(const Calculus<S>&, const Vec<S>&);             \
    template Mat<S> g2_grid(const Calculus<S>&, const Mat<S>&);                \
    template Mat<S> phi_g(const Calculus<S>&, const Mat<S>&, const Mat<S>&);   \
    template LeviCivita<S> levi_civita(const Calculus<S>&, const Mat<S>&, Sign);

QCALC_INSTANTIATE(FieldElem)
QCALC_INSTANTIATE(Rat)

}  // namespace qcalc
