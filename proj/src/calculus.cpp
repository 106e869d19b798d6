#include "qcalc/calculus.hpp"

namespace qcalc {

std::vector<std::string> e_labels() { return {"w1", "w2", "w3", "w4"}; }

std::vector<std::string> pair_labels()
{
    std::vector<std::string> out;
    for (int i = 1; i <= 4; ++i)
        for (int j = 1; j <= 4; ++j) out.push_back("w" + std::to_string(i) + "*w" + std::to_string(j));
    return out;
}

std::vector<std::string> triple_labels()
{
    std::vector<std::string> out;
    for (int i = 1; i <= 4; ++i)
        for (int j = 1; j <= 4; ++j)
            for (int k = 1; k <= 4; ++k)
                out.push_back("w" + std::to_string(i) + "*w" + std::to_string(j) + "*w" + std::to_string(k));
    return out;
}

std::vector<std::string> nu_labels()
{
    std::vector<std::string> out;
    for (int i = 1; i <= 10; ++i) out.push_back("nu" + std::to_string(i));
    return out;
}

std::vector<std::string> wedge_labels()
{
    return {"m1", "m2", "m3", "i1", "i2", "i3"};
}

namespace {

const char* table_name(std::size_t col)
{
    static const char* names[16] = {"eigen_1[0]", "eigen_1[1]", "eigen_1[2]", "eigen_1[3]",
                                    "eigen_1[4]", "eigen_1[5]", "eigen_1[6]", "eigen_1[7]",
                                    "eigen_1[8]", "eigen_1[9]", "eigen_minus_q2[0]", "eigen_minus_q2[1]",
                                    "eigen_minus_q2[2]", "eigen_minus_qm2[0]", "eigen_minus_qm2[1]", "eigen_minus_qm2[2]"};
    return col < 16 ? names[col] : "?";
}

template <class S>
Mat<S> shifted_identity(const Mat<S>& m, const S& c)
{
    Mat<S> r = m;
    for (std::size_t i = 0; i < m.rows; ++i) r(i, i) += c;
    return r;
}

template <class S>
Mat<S> labelled(Mat<S> m, std::vector<std::string> rl, std::vector<std::string> cl)
{
    m.row_labels = std::move(rl);
    m.col_labels = std::move(cl);
    return m;
}

}  // namespace

template <class S>
Braiding<S> build_sigma(const EigenData<S>& d)
{
    Braiding<S> b;
    std::vector<Vec<S>> cols;
    for (auto* group : {&d.ev1, &d.evm, &d.evi})
        for (auto& v : *group) cols.push_back(v);
    b.basis = Mat<S>::from_columns(cols);
    {
        Mat<S> w = b.basis;
        auto piv = rref(w, w.cols);
        for (std::size_t c = 0; c < 16; ++c)
            if (c >= piv.size() || piv[c] != c)
                throw DependentEigenvectors(std::string("eigenvector ") + table_name(c) +
                                            " depends on the preceding table vectors");
    }
    b.basis_inv = inverse(b.basis);
    S one(1), mq2 = -(d.q * d.q), mqm2 = -inv(d.q * d.q);
    b.eigenvalues.assign(16, one);
    for (std::size_t i = 10; i < 13; ++i) b.eigenvalues[i] = mq2;
    for (std::size_t i = 13; i < 16; ++i) b.eigenvalues[i] = mqm2;
    auto conj = [&](auto pick) {
        Mat<S> m = b.basis;
        for (std::size_t j = 0; j < 16; ++j) {
            S f = pick(j);
            for (std::size_t i = 0; i < 16; ++i)
                if (!is_zero(m(i, j))) m(i, j) *= f;
        }
        return labelled(m * b.basis_inv, pair_labels(), pair_labels());
    };
    b.sigma = conj([&](std::size_t j) { return b.eigenvalues[j]; });
    b.p1 = conj([&](std::size_t j) { return j < 10 ? S(1) : S(0); });
    b.p2 = conj([&](std::size_t j) { return j >= 10 && j < 13 ? S(1) : S(0); });
    b.p3 = conj([&](std::size_t j) { return j >= 13 ? S(1) : S(0); });
    return b;
}

template <class S>
Mat<S> build_psym(const Mat<S>& sigma, const S& q)
{
    S q2 = q * q, qm2 = inv(q2);
    Mat<S> m = shifted_identity(sigma, q2) * shifted_identity(sigma, qm2);
    return labelled(scaled(m, inv((S(1) + q2) * (S(1) + qm2))), pair_labels(), pair_labels());
}

template <class S>
MinimalPolynomialCheck check_minimal_polynomial(const Mat<S>& sigma, const S& q)
{
    MinimalPolynomialCheck c;
    S q2 = q * q, qm2 = inv(q2);
    Mat<S> a = shifted_identity(sigma, S(-1)), b = shifted_identity(sigma, q2), d = shifted_identity(sigma, qm2);
    Mat<S> ab = a * b;
    c.annihilates = (ab * d).is_zero();
    c.drop_minus_q2_survives = !(a * d).is_zero();
    c.drop_minus_qm2_survives = !ab.is_zero();
    c.drop_one_survives = !(b * d).is_zero();
    c.dims = {16 - rank(a), 16 - rank(b), 16 - rank(d)};
    return c;
}

template <class S>
Mat<S> lift12(const Mat<S>& m)
{
    Mat<S> out(64, 64);
    for (std::size_t p = 0; p < 16; ++p)
        for (std::size_t r = 0; r < 16; ++r) {
            if (is_zero(m(r, p))) continue;
            for (std::size_t k = 0; k < 4; ++k) out(4 * r + k, 4 * p + k) = m(r, p);
        }
    return out;
}

template <class S>
Mat<S> lift23(const Mat<S>& m)
{
    Mat<S> out(64, 64);
    for (std::size_t p = 0; p < 16; ++p)
        for (std::size_t r = 0; r < 16; ++r) {
            if (is_zero(m(r, p))) continue;
            for (std::size_t i = 0; i < 4; ++i) out(16 * i + r, 16 * i + p) = m(r, p);
        }
    return out;
}

template <class S>
BraidResult braid_check(const Mat<S>& sigma)
{
    Mat<S> s12 = lift12(sigma), s23 = lift23(sigma);
    Mat<S> lhs = s23 * (s12 * s23), rhs = s12 * (s23 * s12);
    BraidResult r;
    for (std::size_t c = 0; c < 64 && r.pass; ++c)
        for (std::size_t i = 0; i < 64; ++i)
            if (lhs(i, c) != rhs(i, c)) {
                r.pass = false;
                r.witness = std::array<int, 3>{int(c / 16) + 1, int(c / 4 % 4) + 1, int(c % 4) + 1};
                break;
            }
    return r;
}

template <class S>
Vec<S> wedge_rep(const Braiding<S>& b, const Vec<S>& x)
{
    Vec<S> y = b.basis_inv * x;
    return Vec<S>(y.begin() + 10, y.end());
}

template <class S>
Vec<S> wedge_embed(const Braiding<S>& b, const Vec<S>& y)
{
    Vec<S> full(16, S(0));
    for (std::size_t a = 0; a < 6; ++a) full[10 + a] = y[a];
    return b.basis * full;
}

template <class S>
Mat<S> d_basis(const Braiding<S>& b, Sign sign, const S& q, const S& s)
{
    S e(sign_value(sign));
    auto unit = [](std::size_t i, std::size_t j) {
        Vec<S> v(16, S(0));
        v[pair_index(i, j)] = S(1);
        return v;
    };
    auto times = [](Vec<S> v, const S& c) {
        for (auto& x : v)
            if (!is_zero(x)) x *= c;
        return v;
    };
    Mat<S> d(6, 4);
    d.set_column(0, times(wedge_rep(b, unit(0, 2)), e * s));
    d.set_column(1, times(wedge_rep(b, unit(1, 2)), -e * s * inv(q * q)));
    d.set_column(2, times(wedge_rep(b, unit(0, 1)), e * s * inv(q)));
    return labelled(d, wedge_labels(), e_labels());
}

template <class S>
Calculus<S> make_calculus(const EigenData<S>& d)
{
    Calculus<S> c;
    c.data = d;
    c.br = build_sigma(d);
    c.psym = build_psym(c.br.sigma, d.q);
    c.nu = labelled(Mat<S>::from_columns(d.nu), pair_labels(), nu_labels());
    Mat<S> coords = c.br.basis_inv * c.nu;
    for (std::size_t i = 10; i < 16; ++i)
        for (std::size_t j = 0; j < 10; ++j)
            if (!is_zero(coords(i, j)))
                throw DataValidationError("nu" + std::to_string(j + 1) + " is not in the eigenvalue-1 span");
    std::vector<std::size_t> top{0, 1, 2, 3, 4, 5, 6, 7, 8, 9}, all16;
    for (std::size_t i = 0; i < 16; ++i) all16.push_back(i);
    Mat<S> t = coords.submatrix(top, top);
    if (rank(t) != 10) throw DataValidationError("nu vectors do not span the eigenvalue-1 space");
    c.nu_inv = labelled(inverse(t) * c.br.basis_inv.submatrix(top, all16), nu_labels(), pair_labels());
    return c;
}

#define QCALC_INSTANTIATE(S)                                                              \
    template Braiding<S> build_sigma(const EigenData<S>&);                                \
    template Mat<S> build_psym(const Mat<S>&, const S&);                                  \
    template MinimalPolynomialCheck check_minimal_polynomial(const Mat<S>&, const S&);    \
    template Mat<S> lift12(const Mat<S>&);                                                \
    template Mat<S> lift23(const Mat<S>&);                                                \
    template BraidResult braid_check(const Mat<S>&);                                      \
    template Vec<S> wedge_rep(const Braiding<S>&, const Vec<S>&);                         \
    template Vec<S> wedge_embed(const Braiding<S>&, const Vec<S>&);                       \
    template Mat<S> d_basis(const Braiding<S>&, Sign, const S&, const S&);                \
    template Calculus<S> make_calculus(const EigenData<S>&);

QCALC_INSTANTIATE(FieldElem)
QCALC_INSTANTIATE(Rat)

}  // namespace qcalc
