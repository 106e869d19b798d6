#pragma once

// Plain fraction arithmetic used as an independent reference in the tests.

#include "qcalc/field.hpp"

#include <random>
#include <utility>
#include <vector>

namespace oracle {

using qcalc::Rat;
using Grid = std::vector<std::vector<Rat>>;

inline std::pair<std::size_t, Rat> eliminate(Grid m)
{
    std::size_t rows = m.size(), cols = rows ? m[0].size() : 0, r = 0;
    Rat d = 1;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && m[p][c] == 0) ++p;
        if (p == rows) {
            d = 0;
            continue;
        }
        if (p != r) {
            std::swap(m[p], m[r]);
            d = -d;
        }
        d *= m[r][c];
        for (std::size_t i = r + 1; i < rows; ++i) {
            if (m[i][c] == 0) continue;
            Rat f = m[i][c] / m[r][c];
            for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        ++r;
    }
    if (r < rows) d = 0;
    return {r, d};
}

inline std::size_t rank(const Grid& m) { return eliminate(m).first; }
inline Rat det(const Grid& m) { return eliminate(m).second; }

template <class M>
Grid grid(const M& m)
{
    Grid g(m.rows, std::vector<Rat>(m.cols));
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = 0; j < m.cols; ++j) g[i][j] = m(i, j);
    return g;
}

inline Rat horner(const std::vector<long>& coeffs_low_first, const Rat& x)
{
    Rat v = 0;
    for (std::size_t i = coeffs_low_first.size(); i-- > 0;) v = v * x + coeffs_low_first[i];
    return v;
}

// Random element of Z[q,t,k][s] with small coefficients and degrees.
inline qcalc::FieldElem random_elem(std::mt19937& rng, bool with_s = true)
{
    std::uniform_int_distribution<int> coef(-3, 3), deg(0, 2), terms(1, 3);
    qcalc::FieldElem q = qcalc::FieldElem::q(), t = qcalc::FieldElem::t(), k = qcalc::FieldElem::k();
    auto poly = [&] {
        qcalc::FieldElem p;
        int n = terms(rng);
        for (int i = 0; i < n; ++i) p += qcalc::FieldElem(long(coef(rng))) * q.pow(deg(rng)) * t.pow(deg(rng)) * k.pow(deg(rng));
        return p;
    };
    qcalc::FieldElem x = poly();
    if (with_s) x += poly() * qcalc::FieldElem::s();
    return x;
}

}  // namespace oracle
