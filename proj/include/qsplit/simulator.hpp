#pragma once

#include <cstdint>

#include "qsplit/machine.hpp"

namespace qsplit {

/// Result of one splitting attempt: apply U, measure the probe, post-select
/// on outcome 0.
struct SplitOutcome {
    double success_prob = 0.0;
    bool post_state_defined = false;
    ComplexVector post_state;       // AB sector, normalized (when defined)
    double fidelity_target = 0.0;   // against |psi(theta_i)>|Sigma(phi_i)>
    std::vector<double> branch_probs;  // per probe level, sums to 1
};

/// Linearity witness: feed a superposition of family members through the
/// machine and compare the post-selected branch with the ideal split of the
/// superposed state.
struct WitnessResult {
    std::vector<cplx> coefficients;
    double recovered_theta = 0.0;
    double recovered_phi = 0.0;
    double success_prob = 0.0;
    ComplexVector ideal_target;   // full-space ideal success branch, scaled by sqrt(p)
    ComplexVector propagated;     // U applied to the superposed input
    double fidelity = 0.0;        // of the probe-0-conditioned parts
    double distance = 0.0;        // phase-aligned Euclidean distance of the same
};

SplitOutcome run_split(const SplittingMachine& m, std::size_t i);

/// Empirical success frequency over `shots` seeded Bernoulli draws against the
/// exact probability from run_split.
double sample_measurement(const SplittingMachine& m, std::size_t i, std::size_t shots,
                          std::uint64_t seed);

/// Arbiter for the two kernel readings: the Gram matrix of the explicitly
/// constructed output vectors versus the prediction sqrt(G) K sqrt(G) +
/// C C^dagger under each kernel.
struct OutputGramOracle {
    ComplexMatrix constructed;
    ComplexMatrix matrix_mode_prediction;
    ComplexMatrix tensor_mode_prediction;
    double matrix_mode_deviation = 0.0;
    double tensor_mode_deviation = 0.0;
};

OutputGramOracle oracle_output_gram(const StateFamily& family, const EfficiencyVector& gammas,
                                    ProductMode mode, double tol);

WitnessResult nogo_witness(const SplittingMachine& m, const std::vector<cplx>& d);

/// Bloch angles of a normalized qubit state, global phase removed.
/// At the poles phi is fixed to 0 by convention.
BlochAngles bloch_angles_of(const ComplexVector& qubit);

}  // namespace qsplit
