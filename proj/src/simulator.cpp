#include "qsplit/simulator.hpp"

#include <cmath>
#include <numbers>

#include "qsplit/rng.hpp"

namespace qsplit {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Amplitudes of one probe level; flat layout is AB-major (probe fastest).
ComplexVector probe_sector(const ComplexVector& state, std::size_t dim_probe,
                           std::size_t level) {
    ComplexVector out(4);
    for (std::size_t ab = 0; ab < 4; ++ab) out[ab] = state[ab * dim_probe + level];
    return out;
}

}  // namespace

SplitOutcome run_split(const SplittingMachine& m, std::size_t i) {
    if (i >= m.n()) throw Error(ErrorCode::IndexOutOfRange, "state index");

    const ComplexVector evolved = m.U * build_input_vector(m.dim_probe, m.family.member(i));

    SplitOutcome outcome;
    outcome.branch_probs.resize(m.dim_probe);
    for (std::size_t level = 0; level < m.dim_probe; ++level) {
        const double p = std::pow(probe_sector(evolved, m.dim_probe, level).norm(), 2);
        outcome.branch_probs[level] = p;
    }

    ComplexVector success = probe_sector(evolved, m.dim_probe, 0);
    outcome.success_prob = outcome.branch_probs[0];
    if (outcome.success_prob > 1e-12) {
        success *= 1.0 / success.norm();
        outcome.post_state = success;
        outcome.post_state_defined = true;
        const BlochAngles& a = m.family.member(i);
        outcome.fidelity_target =
            fidelity_up_to_phase(outcome.post_state, tensor(ket_theta(a.theta), ket_sigma(a.phi)));
    }
    return outcome;
}

double sample_measurement(const SplittingMachine& m, std::size_t i, std::size_t shots,
                          std::uint64_t seed) {
    if (shots == 0) throw Error(ErrorCode::LengthMismatch, "shots must be at least 1");
    const double p = run_split(m, i).success_prob;
    Lcg64 rng(seed);
    std::size_t hits = 0;
    for (std::size_t s = 0; s < shots; ++s)
        if (rng.uniform() < p) ++hits;
    return static_cast<double>(hits) / static_cast<double>(shots);
}

OutputGramOracle oracle_output_gram(const StateFamily& family, const EfficiencyVector& gammas,
                                    ProductMode mode, double tol) {
    const GramTriple triple = build_triple(family);
    const ComplexMatrix res = residual(triple, gammas, mode);
    if (!is_psd(res, tol))
        throw Error(ErrorCode::Infeasible, "residual is not PSD in the chosen mode");
    const ComplexMatrix c = psd_sqrt_factor(res, tol);

    const FailureStates failure = default_failure_states(family.n());
    std::vector<ComplexVector> outputs;
    for (std::size_t i = 0; i < family.n(); ++i)
        outputs.push_back(build_output_vector(family, i, gammas, c, failure));

    OutputGramOracle oracle;
    oracle.constructed = gram(outputs);

    const std::size_t n = family.n();
    const ComplexMatrix cc = c * adjoint(c);
    auto predict = [&](ProductMode kernel_mode) {
        const ComplexMatrix k = kernel(triple, kernel_mode);
        ComplexMatrix out(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                out(i, j) = std::sqrt(gammas[i] * gammas[j]) * k(i, j) + cc(i, j);
        return out;
    };
    oracle.matrix_mode_prediction = predict(ProductMode::MatrixProduct);
    oracle.tensor_mode_prediction = predict(ProductMode::TensorGram);
    oracle.matrix_mode_deviation = max_abs_diff(oracle.constructed, oracle.matrix_mode_prediction);
    oracle.tensor_mode_deviation = max_abs_diff(oracle.constructed, oracle.tensor_mode_prediction);
    return oracle;
}

BlochAngles bloch_angles_of(const ComplexVector& qubit) {
    if (qubit.dim() != 2) throw Error(ErrorCode::DimMismatch, "bloch angles of a non-qubit");
    const double a0 = std::abs(qubit[0]);
    const double a1 = std::abs(qubit[1]);
    BlochAngles out;
    out.theta = 2.0 * std::acos(std::min(1.0, std::max(0.0, a0)));
    if (a0 < 1e-12 || a1 < 1e-12) {
        out.phi = 0.0;
    } else {
        double phi = std::arg(qubit[1]) - std::arg(qubit[0]);
        phi = std::fmod(phi, kTwoPi);
        if (phi < 0.0) phi += kTwoPi;
        if (phi >= kTwoPi) phi = 0.0;
        out.phi = phi;
    }
    return out;
}

WitnessResult nogo_witness(const SplittingMachine& m, const std::vector<cplx>& d) {
    if (d.size() != m.n())
        throw Error(ErrorCode::LengthMismatch, "coefficient count does not match family size");

    ComplexVector psi(2);
    for (std::size_t i = 0; i < m.n(); ++i) psi += d[i] * ket_input(m.family.member(i));
    const double psi_norm = psi.norm();
    if (psi_norm <= 1e-9)
        throw Error(ErrorCode::ZeroSuperposition, "the superposition vanishes");
    psi *= 1.0 / psi_norm;

    WitnessResult result;
    result.coefficients = d;
    const BlochAngles recovered = bloch_angles_of(psi);
    result.recovered_theta = recovered.theta;
    result.recovered_phi = recovered.phi;

    const ComplexVector input = tensor(tensor(psi, blank_ancilla()),
                                       ComplexVector::basis(m.dim_probe, 0));
    result.propagated = m.U * input;

    const ComplexVector success = probe_sector(result.propagated, m.dim_probe, 0);
    const double sqrt_p = success.norm();
    result.success_prob = sqrt_p * sqrt_p;

    const ComplexVector ideal_ab =
        tensor(ket_theta(recovered.theta), ket_sigma(recovered.phi));
    result.ideal_target =
        sqrt_p * tensor(ideal_ab, ComplexVector::basis(m.dim_probe, 0));

    if (result.success_prob <= 1e-12) {
        result.fidelity = 0.0;
        result.distance = std::sqrt(2.0);
        return result;
    }
    const ComplexVector conditioned = (1.0 / sqrt_p) * success;
    const double overlap = std::abs(inner(ideal_ab, conditioned));
    result.fidelity = overlap * overlap;
    result.distance = std::sqrt(std::max(0.0, 2.0 - 2.0 * overlap));
    return result;
}

}  // namespace qsplit
