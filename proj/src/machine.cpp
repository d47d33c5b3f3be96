#include "qsplit/machine.hpp"

#include <cmath>

namespace qsplit {

namespace {

// Completion candidates in probe-major order: probe level outermost, AB
// computational index innermost. Flat layout is AB-major (probe fastest).
std::vector<ComplexVector> probe_major_candidates(std::size_t dim_probe) {
    std::vector<ComplexVector> out;
    const std::size_t total = 4 * dim_probe;
    out.reserve(total);
    for (std::size_t p = 0; p < dim_probe; ++p)
        for (std::size_t ab = 0; ab < 4; ++ab)
            out.push_back(ComplexVector::basis(total, ab * dim_probe + p));
    return out;
}

ComplexVector probe_level(std::size_t dim_probe, std::size_t level) {
    return ComplexVector::basis(dim_probe, level);
}

}  // namespace

FailureStates default_failure_states(std::size_t n) {
    if (n > 4)
        throw Error(ErrorCode::DimMismatch, "AB holds at most 4 orthonormal failure states");
    FailureStates f;
    for (std::size_t j = 0; j < n; ++j) f.phis.push_back(ComplexVector::basis(4, j));
    return f;
}

ComplexVector build_input_vector(std::size_t dim_probe, const BlochAngles& a) {
    return tensor(tensor(ket_input(a), blank_ancilla()), probe_level(dim_probe, 0));
}

ComplexVector build_output_vector(const StateFamily& family, std::size_t i,
                                  const EfficiencyVector& gammas, const ComplexMatrix& C,
                                  const FailureStates& failure) {
    const std::size_t n = family.n();
    if (i >= n) throw Error(ErrorCode::IndexOutOfRange, "family index");
    if (gammas.size() != n || C.rows() != n || C.cols() != n || failure.phis.size() != n)
        throw Error(ErrorCode::LengthMismatch, "output vector ingredients");

    const std::size_t dim_probe = n + 1;
    const BlochAngles& a = family.member(i);
    const ComplexVector target = tensor(ket_theta(a.theta), ket_sigma(a.phi));

    ComplexVector out =
        std::sqrt(gammas[i]) * tensor(target, probe_level(dim_probe, 0));
    for (std::size_t j = 0; j < n; ++j)
        out += std::conj(C(i, j)) * tensor(failure.phis[j], probe_level(dim_probe, j + 1));
    return out;
}

SplittingMachine construct_machine(const StateFamily& family, const EfficiencyVector& gammas,
                                   ProductMode mode, double tol) {
    const std::size_t n = family.n();
    if (gammas.size() != n)
        throw Error(ErrorCode::LengthMismatch, "gamma count does not match family size");
    for (double g : gammas.gammas)
        if (!(g >= 0.0 && g <= 1.0))
            throw Error(ErrorCode::Infeasible, "gamma outside [0, 1]");

    const GramTriple triple = build_triple(family);
    if (!linear_independence(family, tol).independent)
        throw Error(ErrorCode::RankDeficient, "family is linearly dependent");
    if (!feasible(triple, gammas, mode, tol))
        throw Error(ErrorCode::Infeasible, "residual is not Hermitian PSD at this Gamma");

    const ComplexMatrix res = residual(triple, gammas, mode);
    const ComplexMatrix c = psd_sqrt_factor(res, tol);
    const FailureStates failure = default_failure_states(n);
    const std::size_t dim_probe = n + 1;
    const std::size_t total = 4 * dim_probe;

    std::vector<ComplexVector> inputs, outputs;
    for (std::size_t i = 0; i < n; ++i) {
        inputs.push_back(build_input_vector(dim_probe, family.member(i)));
        outputs.push_back(build_output_vector(family, i, gammas, c, failure));
    }

    const double gram_defect = max_abs_diff(gram(inputs), gram(outputs));
    if (gram_defect > tol)
        throw Error(ErrorCode::GramMismatch,
                    "input and output Grams differ by " + std::to_string(gram_defect) +
                        "; the requested kernel does not match the constructed states");

    const std::vector<ComplexVector> candidates = probe_major_candidates(dim_probe);
    const OrthonormalExtension in_basis = orthonormal_extension(inputs, tol, candidates);
    const OrthonormalExtension out_basis = orthonormal_extension(outputs, tol, candidates);
    if (in_basis.rank != n || out_basis.rank != n)
        throw Error(ErrorCode::RankDeficient, "constructed vectors lost rank");

    // U = sum_k |out_k><in_k| over the two completed bases.
    ComplexMatrix u(total, total);
    for (std::size_t k = 0; k < total; ++k) {
        const ComplexVector& bin = in_basis.basis[k];
        const ComplexVector& bout = out_basis.basis[k];
        for (std::size_t r = 0; r < total; ++r) {
            if (bout[r] == cplx{0.0, 0.0}) continue;
            for (std::size_t col = 0; col < total; ++col)
                u(r, col) += bout[r] * std::conj(bin[col]);
        }
    }

    SplittingMachine machine{family, gammas, mode, 2, 2, dim_probe, std::move(u), c};
    const MachineReport report = verify_machine(machine, tol);
    if (!report.ok)
        throw Error(ErrorCode::Numerical, "constructed machine failed verification");
    return machine;
}

MachineReport verify_machine(const SplittingMachine& m, double tol) {
    MachineReport report;
    const std::size_t total = m.total_dim();

    const ComplexMatrix gramian = adjoint(m.U) * m.U;
    report.unitarity_defect = max_abs_diff(gramian, ComplexMatrix::identity(total));

    const FailureStates failure = default_failure_states(m.n());
    std::vector<ComplexVector> inputs, outputs;
    for (std::size_t i = 0; i < m.n(); ++i) {
        inputs.push_back(build_input_vector(m.dim_probe, m.family.member(i)));
        outputs.push_back(build_output_vector(m.family, i, m.gammas, m.C, failure));
    }
    for (std::size_t i = 0; i < m.n(); ++i)
        report.action_defects.push_back((m.U * inputs[i] - outputs[i]).norm());
    report.gram_defect = max_abs_diff(gram(inputs), gram(outputs));

    report.ok = report.unitarity_defect <= tol && report.gram_defect <= tol;
    for (double d : report.action_defects) report.ok = report.ok && d <= 10.0 * tol;
    return report;
}

}  // namespace qsplit
