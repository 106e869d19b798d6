#pragma once

#include "qcalc/expr.hpp"
#include "qcalc/field.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace qcalc {

inline bool is_zero(const FieldElem& x) { return x.is_zero(); }
inline bool is_zero(const Rat& x) { return sgn(x) == 0; }
inline FieldElem inv(const FieldElem& x) { return x.inverse(); }
inline Rat inv(const Rat& x)
{
    if (sgn(x) == 0) throw DivisionByZero("inverse of zero");
    return 1 / x;
}

// Pivot preference in rref; zero cost means first nonzero wins.
inline std::size_t pivot_cost(const FieldElem& x) { return x.num_a().size() + x.num_b().size() + x.den().size(); }
inline std::size_t pivot_cost(const Rat&) { return 0; }

template <class S>
using Vec = std::vector<S>;

template <class S>
struct Mat {
    std::size_t rows = 0, cols = 0;
    std::vector<S> a;
    std::vector<std::string> row_labels, col_labels;

    Mat() = default;
    Mat(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, S(0)) {}

    S& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    const S& operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

    static Mat identity(std::size_t n)
    {
        Mat m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = S(1);
        return m;
    }
    static Mat from_columns(const std::vector<Vec<S>>& cs)
    {
        Mat m(cs.empty() ? 0 : cs[0].size(), cs.size());
        for (std::size_t j = 0; j < cs.size(); ++j)
            for (std::size_t i = 0; i < m.rows; ++i) m(i, j) = cs[j][i];
        return m;
    }
    Vec<S> column(std::size_t j) const
    {
        Vec<S> v(rows);
        for (std::size_t i = 0; i < rows; ++i) v[i] = (*this)(i, j);
        return v;
    }
    void set_column(std::size_t j, const Vec<S>& v)
    {
        for (std::size_t i = 0; i < rows; ++i) (*this)(i, j) = v[i];
    }
    bool is_zero() const
    {
        for (auto& x : a)
            if (!qcalc::is_zero(x)) return false;
        return true;
    }
    std::size_t nonzeros() const
    {
        std::size_t n = 0;
        for (auto& x : a) n += !qcalc::is_zero(x);
        return n;
    }
    Mat transpose() const
    {
        Mat m(cols, rows);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) m(j, i) = (*this)(i, j);
        m.row_labels = col_labels;
        m.col_labels = row_labels;
        return m;
    }
    Mat submatrix(const std::vector<std::size_t>& rs, const std::vector<std::size_t>& cs) const
    {
        Mat m(rs.size(), cs.size());
        for (std::size_t i = 0; i < rs.size(); ++i)
            for (std::size_t j = 0; j < cs.size(); ++j) m(i, j) = (*this)(rs[i], cs[j]);
        return m;
    }
    friend bool operator==(const Mat& x, const Mat& y)
    {
        return x.rows == y.rows && x.cols == y.cols && x.a == y.a;
    }
    friend bool operator!=(const Mat& x, const Mat& y) { return !(x == y); }
};

template <class S>
Mat<S> operator*(const Mat<S>& x, const Mat<S>& y)
{
    if (x.cols != y.rows) throw std::invalid_argument("matrix shape mismatch");
    Mat<S> m(x.rows, y.cols);
    for (std::size_t i = 0; i < x.rows; ++i)
        for (std::size_t l = 0; l < x.cols; ++l) {
            const S& v = x(i, l);
            if (is_zero(v)) continue;
            for (std::size_t j = 0; j < y.cols; ++j)
                if (!is_zero(y(l, j))) m(i, j) += v * y(l, j);
        }
    return m;
}

template <class S>
Vec<S> operator*(const Mat<S>& x, const Vec<S>& v)
{
    if (x.cols != v.size()) throw std::invalid_argument("matrix/vector shape mismatch");
    Vec<S> out(x.rows, S(0));
    for (std::size_t l = 0; l < x.cols; ++l) {
        if (is_zero(v[l])) continue;
        for (std::size_t i = 0; i < x.rows; ++i)
            if (!is_zero(x(i, l))) out[i] += x(i, l) * v[l];
    }
    return out;
}

template <class S>
Mat<S> operator+(Mat<S> x, const Mat<S>& y)
{
    for (std::size_t i = 0; i < x.a.size(); ++i) x.a[i] += y.a[i];
    return x;
}

template <class S>
Mat<S> operator-(Mat<S> x, const Mat<S>& y)
{
    for (std::size_t i = 0; i < x.a.size(); ++i) x.a[i] -= y.a[i];
    return x;
}

template <class S>
Mat<S> scaled(Mat<S> x, const S& c)
{
    for (auto& v : x.a)
        if (!is_zero(v)) v *= c;
    return x;
}

template <class S>
bool vec_is_zero(const Vec<S>& v)
{
    for (auto& x : v)
        if (!is_zero(x)) return false;
    return true;
}

class SingularMatrix : public std::domain_error {
public:
    explicit SingularMatrix(std::size_t col)
        : std::domain_error("singular matrix: no pivot in column " + std::to_string(col)), column(col)
    {
    }
    std::size_t column;
};

// Reduced row echelon form in place; returns pivot columns.
template <class S>
std::vector<std::size_t> rref(Mat<S>& m, std::size_t ncols)
{
    std::vector<std::size_t> piv;
    std::size_t r = 0;
    for (std::size_t c = 0; c < ncols && r < m.rows; ++c) {
        std::size_t p = m.rows, best = SIZE_MAX;
        for (std::size_t i = r; i < m.rows; ++i) {
            if (is_zero(m(i, c))) continue;
            std::size_t cost = pivot_cost(m(i, c));
            if (cost < best) {
                best = cost;
                p = i;
            }
            if (cost == 0) break;
        }
        if (p == m.rows) continue;
        if (p != r)
            for (std::size_t j = 0; j < m.cols; ++j) std::swap(m(p, j), m(r, j));
        S f = inv(m(r, c));
        for (std::size_t j = c; j < m.cols; ++j)
            if (!is_zero(m(r, j))) m(r, j) *= f;
        for (std::size_t i = 0; i < m.rows; ++i) {
            if (i == r || is_zero(m(i, c))) continue;
            S g = m(i, c);
            for (std::size_t j = c; j < m.cols; ++j)
                if (!is_zero(m(r, j))) m(i, j) -= g * m(r, j);
        }
        piv.push_back(c);
        ++r;
    }
    return piv;
}

template <class S>
std::size_t rank(Mat<S> m)
{
    return rref(m, m.cols).size();
}

template <class S>
std::vector<Vec<S>> kernel(const Mat<S>& m)
{
    Mat<S> w = m;
    auto piv = rref(w, w.cols);
    std::vector<bool> is_piv(m.cols, false);
    for (auto c : piv) is_piv[c] = true;
    std::vector<Vec<S>> out;
    for (std::size_t f = 0; f < m.cols; ++f) {
        if (is_piv[f]) continue;
        Vec<S> v(m.cols, S(0));
        v[f] = S(1);
        for (std::size_t i = 0; i < piv.size(); ++i)
            if (!is_zero(w(i, f))) v[piv[i]] = -w(i, f);
        out.push_back(std::move(v));
    }
    return out;
}

template <class S>
Mat<S> solve(const Mat<S>& m, const Mat<S>& rhs)
{
    if (m.rows != m.cols || rhs.rows != m.rows) throw std::invalid_argument("solve: shape mismatch");
    const std::size_t n = m.rows;
    Mat<S> w(n, n + rhs.cols);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) w(i, j) = m(i, j);
        for (std::size_t j = 0; j < rhs.cols; ++j) w(i, n + j) = rhs(i, j);
    }
    auto piv = rref(w, n);
    for (std::size_t i = 0; i < n; ++i)
        if (i >= piv.size() || piv[i] != i) throw SingularMatrix(i);
    Mat<S> x(n, rhs.cols);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < rhs.cols; ++j) x(i, j) = w(i, n + j);
    return x;
}

template <class S>
Vec<S> solve(const Mat<S>& m, const Vec<S>& rhs)
{
    Mat<S> b(rhs.size(), 1);
    b.set_column(0, rhs);
    return solve(m, b).column(0);
}

template <class S>
Mat<S> inverse(const Mat<S>& m)
{
    return solve(m, Mat<S>::identity(m.rows));
}

// Connected components of the nonzero pattern, rows and columns together.
struct BlockSplit {
    struct Block {
        std::vector<std::size_t> rows, cols;
    };
    std::vector<Block> blocks;
    int sign = 1;
    bool singular = false;
};

template <class S>
BlockSplit split_blocks(const Mat<S>& m);

FieldElem det(const Mat<FieldElem>& m);
Rat det(const Mat<Rat>& m);

// det over the fraction field without block splitting or fraction-free steps;
// kept as an independent cross-check.
template <class S>
S det_gauss(Mat<S> m)
{
    if (m.rows != m.cols) throw std::invalid_argument("det of non-square matrix");
    S d(1);
    const std::size_t n = m.rows;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && is_zero(m(p, c))) ++p;
        if (p == n) return S(0);
        if (p != c) {
            for (std::size_t j = 0; j < n; ++j) std::swap(m(p, j), m(c, j));
            d = -d;
        }
        d *= m(c, c);
        S f = inv(m(c, c));
        for (std::size_t i = c + 1; i < n; ++i) {
            if (is_zero(m(i, c))) continue;
            S g = m(i, c) * f;
            for (std::size_t j = c; j < n; ++j)
                if (!is_zero(m(c, j))) m(i, j) -= g * m(c, j);
        }
    }
    return d;
}

Mat<Rat> evaluate(const Mat<FieldElem>& m, const Point& p);
Vec<Rat> evaluate(const Vec<FieldElem>& v, const Point& p);

nlohmann::ordered_json to_json(const Mat<FieldElem>& m);
Mat<FieldElem> mat_from_json(const nlohmann::json& j, const Bindings& b);

}  // namespace qcalc
