#include "qcalc/linalg.hpp"

#include <numeric>

namespace qcalc {

namespace {

struct Dsu {
    std::vector<std::size_t> p;
    explicit Dsu(std::size_t n) : p(n) { std::iota(p.begin(), p.end(), 0); }
    std::size_t find(std::size_t x) { return p[x] == x ? x : p[x] = find(p[x]); }
    void join(std::size_t a, std::size_t b) { p[find(a)] = find(b); }
};

int perm_sign(const std::vector<std::size_t>& perm)
{
    std::vector<bool> seen(perm.size(), false);
    int s = 1;
    for (std::size_t i = 0; i < perm.size(); ++i) {
        if (seen[i]) continue;
        std::size_t len = 0;
        for (std::size_t j = i; !seen[j]; j = perm[j]) {
            seen[j] = true;
            ++len;
        }
        if (len % 2 == 0) s = -s;
    }
    return s;
}

// Element of Z[q,t,k][s]/(s^2 - 1 - q^2).
struct ZS {
    Poly a, b;
    bool zero() const { return a.is_zero() && b.is_zero(); }
};

const Poly& r_poly()
{
    static const Poly r = Poly::var(Var::q, 2) + Poly(1);
    return r;
}

ZS mul(const ZS& x, const ZS& y)
{
    ZS z;
    z.a = x.a * y.a;
    if (!x.b.is_zero() && !y.b.is_zero()) z.a += x.b * y.b * r_poly();
    if (!x.b.is_zero()) z.b += x.b * y.a;
    if (!y.b.is_zero()) z.b += x.a * y.b;
    return z;
}

ZS sub(const ZS& x, const ZS& y) { return ZS{x.a - y.a, x.b - y.b}; }

ZS divide(const ZS& x, const ZS& y)
{
    if (y.b.is_zero()) return ZS{divide_exact(x.a, y.a), divide_exact(x.b, y.a)};
    Poly n = y.a * y.a - y.b * y.b * r_poly();
    ZS c = mul(x, ZS{y.a, -y.b});
    return ZS{divide_exact(c.a, n), divide_exact(c.b, n)};
}

// Bareiss on an integral-domain matrix; returns det.
template <class R, class Mul, class Sub, class Div, class Zero, class Neg>
R bareiss(std::vector<std::vector<R>> m, R one, Mul mulf, Sub subf, Div divf, Zero zerof, Neg negf)
{
    const std::size_t n = m.size();
    if (n == 0) return one;
    R prev = one;
    int sign = 1;
    for (std::size_t c = 0; c + 1 < n; ++c) {
        std::size_t p = c;
        while (p < n && zerof(m[p][c])) ++p;
        if (p == n) return R{};
        if (p != c) {
            std::swap(m[p], m[c]);
            sign = -sign;
        }
        for (std::size_t i = c + 1; i < n; ++i) {
            for (std::size_t j = c + 1; j < n; ++j) {
                R v = subf(mulf(m[i][j], m[c][c]), mulf(m[i][c], m[c][j]));
                m[i][j] = divf(v, prev);
            }
            m[i][c] = R{};
        }
        prev = m[c][c];
    }
    R d = m[n - 1][n - 1];
    return sign < 0 ? negf(d) : d;
}

FieldElem det_block(const Mat<FieldElem>& m)
{
    const std::size_t n = m.rows;
    if (n == 1) return m(0, 0);
    std::vector<std::vector<ZS>> z(n, std::vector<ZS>(n));
    Poly scale(1);
    for (std::size_t i = 0; i < n; ++i) {
        Poly l(1);
        for (std::size_t j = 0; j < n; ++j) {
            const Poly& d = m(i, j).den();
            if (d.is_one()) continue;
            l = l * divide_exact(d, gcd(l, d));
        }
        scale = scale * l;
        for (std::size_t j = 0; j < n; ++j) {
            if (m(i, j).is_zero()) continue;
            Poly u = divide_exact(l, m(i, j).den());
            z[i][j] = ZS{m(i, j).num_a() * u, m(i, j).num_b() * u};
        }
    }
    ZS d = bareiss<ZS>(
        std::move(z), ZS{Poly(1), Poly()}, mul, sub, divide, [](const ZS& x) { return x.zero(); },
        [](const ZS& x) { return ZS{-x.a, -x.b}; });
    return FieldElem(d.a, d.b, scale);
}

Rat det_block(const Mat<Rat>& m)
{
    const std::size_t n = m.rows;
    if (n == 1) return m(0, 0);
    std::vector<std::vector<Int>> z(n, std::vector<Int>(n));
    Int scale = 1;
    for (std::size_t i = 0; i < n; ++i) {
        Int l = 1;
        for (std::size_t j = 0; j < n; ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).get_den_mpz_t());
        scale *= l;
        for (std::size_t j = 0; j < n; ++j) z[i][j] = m(i, j).get_num() * (l / m(i, j).get_den());
    }
    Int d = bareiss<Int>(
        std::move(z), Int(1), [](const Int& x, const Int& y) { return Int(x * y); },
        [](const Int& x, const Int& y) { return Int(x - y); },
        [](const Int& x, const Int& y) {
            Int r;
            mpz_divexact(r.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
            return r;
        },
        [](const Int& x) { return x == 0; }, [](const Int& x) { return Int(-x); });
    Rat r(d, scale);
    r.canonicalize();
    return r;
}

template <class S>
S det_split(const Mat<S>& m)
{
    if (m.rows != m.cols) throw std::invalid_argument("det of non-square matrix");
    if (m.rows == 0) return S(1);
    BlockSplit sp = split_blocks(m);
    if (sp.singular) return S(0);
    S d(sp.sign);
    for (auto& b : sp.blocks) {
        S x = det_block(m.submatrix(b.rows, b.cols));
        if (is_zero(x)) return S(0);
        d *= x;
    }
    return d;
}

}  // namespace

template <class S>
BlockSplit split_blocks(const Mat<S>& m)
{
    BlockSplit out;
    const std::size_t R = m.rows, C = m.cols;
    Dsu u(R + C);
    std::vector<bool> row_hit(R, false), col_hit(C, false);
    for (std::size_t i = 0; i < R; ++i)
        for (std::size_t j = 0; j < C; ++j)
            if (!is_zero(m(i, j))) {
                u.join(i, R + j);
                row_hit[i] = col_hit[j] = true;
            }
    for (std::size_t i = 0; i < R; ++i)
        if (!row_hit[i]) out.singular = true;
    for (std::size_t j = 0; j < C; ++j)
        if (!col_hit[j]) out.singular = true;
    std::vector<std::size_t> id(R + C, SIZE_MAX);
    for (std::size_t x = 0; x < R + C; ++x) {
        std::size_t root = u.find(x);
        if (id[root] == SIZE_MAX) {
            id[root] = out.blocks.size();
            out.blocks.emplace_back();
        }
        if (x < R) out.blocks[id[root]].rows.push_back(x);
        else out.blocks[id[root]].cols.push_back(x - R);
    }
    std::vector<std::size_t> rp, cp;
    for (auto& b : out.blocks) {
        if (b.rows.size() != b.cols.size()) out.singular = true;
        rp.insert(rp.end(), b.rows.begin(), b.rows.end());
        cp.insert(cp.end(), b.cols.begin(), b.cols.end());
    }
    if (!out.singular) out.sign = perm_sign(rp) * perm_sign(cp);
    return out;
}

template BlockSplit split_blocks(const Mat<FieldElem>&);
template BlockSplit split_blocks(const Mat<Rat>&);

FieldElem det(const Mat<FieldElem>& m) { return det_split(m); }
Rat det(const Mat<Rat>& m) { return det_split(m); }

Mat<Rat> evaluate(const Mat<FieldElem>& m, const Point& p)
{
    Mat<Rat> out(m.rows, m.cols);
    for (std::size_t i = 0; i < m.a.size(); ++i)
        if (!m.a[i].is_zero()) out.a[i] = m.a[i].eval(p);
    out.row_labels = m.row_labels;
    out.col_labels = m.col_labels;
    return out;
}

Vec<Rat> evaluate(const Vec<FieldElem>& v, const Point& p)
{
    Vec<Rat> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        if (!v[i].is_zero()) out[i] = v[i].eval(p);
    return out;
}

nlohmann::ordered_json to_json(const Mat<FieldElem>& m)
{
    nlohmann::ordered_json j;
    j["dimensions"] = {m.rows, m.cols};
    j["row_basis"] = m.row_labels;
    j["col_basis"] = m.col_labels;
    auto rows = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < m.rows; ++i) {
        auto row = nlohmann::ordered_json::array();
        for (std::size_t c = 0; c < m.cols; ++c) row.push_back(m(i, c).str());
        rows.push_back(std::move(row));
    }
    j["entries"] = std::move(rows);
    return j;
}

Mat<FieldElem> mat_from_json(const nlohmann::json& j, const Bindings& b)
{
    const nlohmann::json& g = j.is_object() ? j.at("entries") : j;
    if (!g.is_array() || g.empty()) throw ParseError("matrix must be a non-empty array of rows");
    Mat<FieldElem> m(g.size(), g[0].size());
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (!g[i].is_array() || g[i].size() != m.cols) throw ParseError("ragged matrix rows");
        for (std::size_t c = 0; c < m.cols; ++c) {
            const auto& e = g[i][c];
            m(i, c) = e.is_string() ? parse_field(e.get<std::string>(), b)
                                    : e.is_number_integer() ? FieldElem(e.get<long>())
                                                            : throw ParseError("matrix entries must be strings or integers");
        }
    }
    return m;
}

}  // namespace qcalc
