#pragma once

#include "qsplit/feasibility.hpp"

namespace qsplit {

/// Orthonormal failure states of the composite AB system, one per family
/// member (fixed to the first n computational basis states).
struct FailureStates {
    std::vector<ComplexVector> phis;
};

/// The explicit unitary-reduction machine: U acts on A (qubit) x B (qubit) x
/// probe (n+1 levels); measuring the probe in state 0 flags a successful
/// split. C is the Hermitian PSD failure-amplitude factor with
/// C C^dagger == residual(D, G, H, Gamma, mode).
struct SplittingMachine {
    StateFamily family;
    EfficiencyVector gammas;
    ProductMode mode = ProductMode::TensorGram;
    std::size_t dim_a = 2;
    std::size_t dim_b = 2;
    std::size_t dim_probe = 0;  // n + 1
    ComplexMatrix U;            // (4*(n+1)) x (4*(n+1))
    ComplexMatrix C;            // n x n

    std::size_t n() const { return family.n(); }
    std::size_t total_dim() const { return dim_a * dim_b * dim_probe; }
};

struct MachineReport {
    double unitarity_defect = 0.0;
    std::vector<double> action_defects;
    double gram_defect = 0.0;
    bool ok = false;
};

FailureStates default_failure_states(std::size_t n);

/// Input vector |psi_i(theta_i, phi_i)> (x) |Sigma> (x) |probe 0> in the full
/// AB-probe space of a machine with the given probe dimension.
ComplexVector build_input_vector(std::size_t dim_probe, const BlochAngles& a);

/// Target output superposition for member i:
/// sqrt(gamma_i) |psi(theta_i)>|Sigma(phi_i)>|probe 0>
///   + sum_j conj(C(i,j)) |phi_j>|probe j+1>.
/// The conjugate on the Hermitian factor C is what makes the output Gram
/// reproduce C C^dagger == residual under the first-slot-conjugate inner
/// product; the row norm then closes to one.
ComplexVector build_output_vector(const StateFamily& family, std::size_t i,
                                  const EfficiencyVector& gammas, const ComplexMatrix& C,
                                  const FailureStates& failure);

/// Builds the machine for a feasible (family, Gamma, mode): factors the
/// residual, forms inputs and outputs, checks their Grams agree, and completes
/// both orthonormal systems to assemble U. Throws RankDeficient for dependent
/// families, Infeasible when the residual is not Hermitian PSD, and
/// GramMismatch when the requested kernel disagrees with the Gram of the
/// constructed outputs (the matrix-product reading does, whenever it differs
/// from the entrywise one).
SplittingMachine construct_machine(const StateFamily& family, const EfficiencyVector& gammas,
                                   ProductMode mode, double tol);

/// Recomputes unitarity, per-state action, and Gram defects from scratch.
MachineReport verify_machine(const SplittingMachine& m, double tol);

}  // namespace qsplit
