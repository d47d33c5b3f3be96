#pragma once

#include <string>
#include <vector>

#include "qsplit/gram.hpp"

namespace qsplit {

/// The two readings of the coupling between G and H in the feasibility
/// equation D = sqrt(G) K sqrt(G) + C C^dagger:
///   MatrixProduct - K is the literal matrix product G*H;
///   TensorGram    - K(i,j) = G(i,j)*H(i,j), the Gram matrix of the actual
///                   tensor-product target states.
enum class ProductMode {
    MatrixProduct,
    TensorGram,
};

std::string to_string(ProductMode mode);
ProductMode product_mode_from_string(const std::string& name);

/// Per-state success probabilities, the diagonal of the efficiency matrix.
struct EfficiencyVector {
    std::vector<double> gammas;

    static EfficiencyVector uniform(std::size_t n, double value);
    static EfficiencyVector zeros(std::size_t n) { return uniform(n, 0.0); }

    std::size_t size() const { return gammas.size(); }
    double operator[](std::size_t i) const { return gammas[i]; }
    double total() const;
};

/// Everything the feasibility analysis measures for one (family, Gamma, mode).
struct FeasibilityReport {
    bool independent = false;
    double min_eig_d = 0.0;
    double kernel_hermiticity_defect = 0.0;
    double residual_hermiticity_defect = 0.0;
    double residual_min_eig = 0.0;
    // Diagnostics of the literal matrix-product coupling matrix L at Gamma:
    std::vector<double> reality_defects;        // |Im L_ii| per state
    std::vector<bool> diagonal_positive;        // L_ii real and > 0 per state
    double hermitian_part_min_eig = 0.0;        // min eig of (L + L^dagger)/2
    bool feasible = false;
};

/// K = G*H (MatrixProduct) or the entrywise product G.H (TensorGram).
ComplexMatrix kernel(const GramTriple& triple, ProductMode mode);

/// R(i,j) = D(i,j) - sqrt(gamma_i * gamma_j) * K(i,j).
ComplexMatrix residual(const GramTriple& triple, const EfficiencyVector& gammas, ProductMode mode);

/// defect_i = |sum_{j != i} G(i,j) * Im H(j,i)|. All zeros is necessary for
/// the matrix-product coupling to have a real diagonal.
std::vector<double> reality_defects(const GramTriple& triple);

/// True iff D is positive definite and the residual at Gamma is Hermitian PSD
/// within tol.
bool feasible(const GramTriple& triple, const EfficiencyVector& gammas, ProductMode mode,
              double tol);

/// Largest uniform gamma in [0, 1] that stays feasible, by bisection to
/// absolute width 1e-10. Zero means only the trivial Gamma is admissible.
double max_uniform_gamma(const GramTriple& triple, ProductMode mode, double tol);

/// Deterministic coordinate-wise maximization of the per-state probabilities:
/// starts from the maximal uniform Gamma, then sweeps states in order, each
/// time bisecting for the largest feasible single-coordinate increase, until a
/// full sweep improves the total by less than 1e-9. The result is feasible and
/// coordinate-wise maximal; for a dependent family it is all zeros.
EfficiencyVector maximize_gammas(const GramTriple& triple, ProductMode mode, double tol);

/// Full diagnostic report at the given Gamma. The kernel/residual entries use
/// the requested mode; the diagonal-positivity and Hermitian-part entries
/// always evaluate the literal matrix-product coupling matrix.
FeasibilityReport analyze(const GramTriple& triple, const EfficiencyVector& gammas,
                          ProductMode mode, double tol);

}  // namespace qsplit
