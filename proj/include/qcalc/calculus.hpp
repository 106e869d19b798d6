#pragma once

#include "qcalc/linalg.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace qcalc {

enum class Sign { plus, minus };

inline int sign_value(Sign s) { return s == Sign::plus ? 1 : -1; }
inline const char* sign_name(Sign s) { return s == Sign::plus ? "plus" : "minus"; }

// 0-based: w_i (x) w_j -> 4i+j; w_i (x) w_j (x) w_k -> 16i+4j+k.
constexpr std::size_t pair_index(std::size_t i, std::size_t j) { return 4 * i + j; }
constexpr std::size_t triple_index(std::size_t i, std::size_t j, std::size_t k) { return 16 * i + 4 * j + k; }

std::vector<std::string> e_labels();
std::vector<std::string> pair_labels();
std::vector<std::string> triple_labels();
std::vector<std::string> nu_labels();
std::vector<std::string> wedge_labels();
// "wI*wJ" -> (I-1, J-1)
std::pair<std::size_t, std::size_t> parse_pair_label(const std::string& key);

class DataValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DependentEigenvectors : public DataValidationError {
public:
    using DataValidationError::DataValidationError;
};

template <class S>
struct EigenData {
    std::string variant;
    S q, s;
    std::vector<Vec<S>> ev1, evm, evi;  // eigenvalues 1, -q^2, -q^-2
    std::vector<Vec<S>> nu;
};

std::string default_table_path();
std::vector<std::string> table_variants(const std::string& path);
// Binding used for the symbol t in a variant ("t" itself when free).
FieldElem variant_t(const std::string& path, const std::string& variant);
EigenData<FieldElem> load_eigen_data(const std::string& path, const std::string& variant);
EigenData<Rat> evaluate(const EigenData<FieldElem>& d, const Point& p);

template <class S>
struct Braiding {
    Mat<S> sigma;
    Mat<S> basis, basis_inv;
    Mat<S> p1, p2, p3;
    Vec<S> eigenvalues;
};

template <class S>
Braiding<S> build_sigma(const EigenData<S>& d);

// (sigma + q^2)(sigma + q^-2) / ((1 + q^2)(1 + q^-2))
template <class S>
Mat<S> build_psym(const Mat<S>& sigma, const S& q);

struct MinimalPolynomialCheck {
    bool annihilates = false;
    bool drop_minus_q2_survives = false;   // (x-1)(x+q^-2) alone does not annihilate
    bool drop_minus_qm2_survives = false;  // (x-1)(x+q^2)
    bool drop_one_survives = false;        // (x+q^2)(x+q^-2)
    std::array<std::size_t, 3> dims{};
    bool pass() const
    {
        return annihilates && drop_minus_q2_survives && drop_minus_qm2_survives && drop_one_survives && dims[0] == 10 &&
               dims[1] == 3 && dims[2] == 3;
    }
};

template <class S>
MinimalPolynomialCheck check_minimal_polynomial(const Mat<S>& sigma, const S& q);

struct BraidResult {
    bool pass = true;
    std::optional<std::array<int, 3>> witness;  // 1-based (i,j,k)
};

// Lift of a 16x16 operator on legs (1,2) or (2,3) to the 64-dim space.
template <class S>
Mat<S> lift12(const Mat<S>& m);
template <class S>
Mat<S> lift23(const Mat<S>& m);

template <class S>
BraidResult braid_check(const Mat<S>& sigma);

// Coordinates of (I - P_sym)x in the six -q^2 / -q^-2 eigenvectors.
template <class S>
Vec<S> wedge_rep(const Braiding<S>& b, const Vec<S>& x);

// 6x4: column i is d(w_{i+1}) in the wedge model.
template <class S>
Mat<S> d_basis(const Braiding<S>& b, Sign sign, const S& q, const S& s);

// Embeds a wedge-model vector back into the -q^2 / -q^-2 eigenspaces.
template <class S>
Vec<S> wedge_embed(const Braiding<S>& b, const Vec<S>& y);

// Everything derived from one table variant.
template <class S>
struct Calculus {
    EigenData<S> data;
    Braiding<S> br;
    Mat<S> psym;
    Mat<S> nu;      // 16x10
    Mat<S> nu_inv;  // 10x16, coordinates in the nu basis on the symmetric part
};

template <class S>
Calculus<S> make_calculus(const EigenData<S>& d);

}  // namespace qcalc
