#pragma once

#include "qsplit/states.hpp"

namespace qsplit {

/// The three structure matrices of a family: D couples the full states,
/// G the theta-only targets, H the sigma(phi) ancilla targets.
struct GramTriple {
    ComplexMatrix D;  // Hermitian, unit diagonal
    ComplexMatrix G;  // real symmetric, unit diagonal
    ComplexMatrix H;  // Hermitian, unit diagonal

    std::size_t n() const { return D.rows(); }
};

/// D(i,j) = cos(ti/2)cos(tj/2) + sin(ti/2)sin(tj/2) e^{i(pj-pi)}
ComplexMatrix build_D(const StateFamily& family);

/// G(i,j) = cos((ti-tj)/2), purely real.
ComplexMatrix build_G(const StateFamily& family);

/// H(i,j) = (1 + e^{i(pj-pi)})/2
ComplexMatrix build_H(const StateFamily& family);

GramTriple build_triple(const StateFamily& family);

struct IndependenceVerdict {
    bool independent = false;
    double min_eig = 0.0;
};

/// The family is linearly independent iff D is positive definite.
IndependenceVerdict linear_independence(const StateFamily& family, double tol);

}  // namespace qsplit
