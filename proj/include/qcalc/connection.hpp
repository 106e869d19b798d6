#pragma once

#include "qcalc/calculus.hpp"

#include <cstdint>

namespace qcalc {

class SingularMetric : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class PhiSingular : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class BasisChangeFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// 16x4: column j is nabla_0(w_{j+1}) in pair coordinates.
template <class S>
Mat<S> build_nabla0(const Calculus<S>& c, Sign sign);

// 6x4: wedge_rep(nabla(w_i)) + d(w_i).
template <class S>
Mat<S> torsion(const Calculus<S>& c, const Mat<S>& nabla, Sign sign);

// vec(G)[4i+j] = G[i][j]
template <class S>
Vec<S> vec_of(const Mat<S>& g);
template <class S>
Mat<S> mat_of(const Vec<S>& v);

template <class S>
bool sigma_invariant(const Calculus<S>& c, const Mat<S>& g);

template <class S>
std::vector<Mat<S>> metric_basis(const Calculus<S>& c);

struct ExampleMetric {
    Mat<FieldElem> g;
    std::vector<long> coeffs;  // combination of metric_basis
};

// Small-integer combination of the basis with det != 0, found by a seeded search.
ExampleMetric example_metric(const std::vector<Mat<FieldElem>>& basis, std::uint32_t seed = 20200317);

// 4x16 matrix of 2 (id x g)(sigma x id)(nabla x id) P_sym.
template <class S>
Mat<S> pi0(const Calculus<S>& c, const Mat<S>& nabla, const Mat<S>& g);

// Linear part of L -> pi0(nu L, g) restricted to the nu basis.
// Domain index 4a+k (L = sum L_{a,k} nu_a (x) w_k^*), codomain index 10x+c.
template <class S>
Mat<S> compat_linear(const Calculus<S>& c, const Mat<S>& g);

// 40x40 matrix of id (x) P_sym on legs 2,3 from {nu_a (x) w_j} (index 4a+j)
// to {w_j (x) nu_b} (index 10j+b).
template <class S>
Mat<S> psym23_matrix(const Calculus<S>& c);

// Embeds a vector in the {w_j (x) nu_b} basis into triple coordinates.
template <class S>
Vec<S> embed_w_nu(const Calculus<S>& c, const Vec<S>& y);

// g(e1 (x) g(e2 (x) e3) e4) on nu_b (x) nu_c.
template <class S>
Mat<S> g2_grid(const Calculus<S>& c, const Mat<S>& g);

// Composite (id x V_g2) o (P_sym)_23 o (id x V_g^-1), same index conventions as compat_linear.
template <class S>
Mat<S> phi_g(const Calculus<S>& c, const Mat<S>& psym23, const Mat<S>& g);

template <class S>
struct LeviCivita {
    Mat<S> nabla;       // 16x4
    Mat<S> correction;  // 10x4 coefficients in the nu basis
    Mat<S> torsion;
    Mat<S> pi0;
};

template <class S>
LeviCivita<S> levi_civita(const Calculus<S>& c, const Mat<S>& g, Sign sign);

}  // namespace qcalc
