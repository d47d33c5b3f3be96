#include "qsplit/states.hpp"

#include <cmath>
#include <numbers>

namespace qsplit {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_theta(double theta) {
    if (!(theta >= 0.0 && theta <= kPi))
        throw Error(ErrorCode::AngleOutOfRange, "theta must lie in [0, pi]");
}

void check_phi(double phi) {
    if (!(phi >= 0.0 && phi < kTwoPi))
        throw Error(ErrorCode::AngleOutOfRange, "phi must lie in [0, 2*pi)");
}

}  // namespace

StateFamily::StateFamily(std::vector<BlochAngles> members) : members_(std::move(members)) {
    if (members_.empty()) throw Error(ErrorCode::EmptyFamily, "a family needs at least one state");
    for (const BlochAngles& a : members_) {
        check_theta(a.theta);
        check_phi(a.phi);
    }
    for (std::size_t i = 0; i < members_.size(); ++i)
        for (std::size_t j = i + 1; j < members_.size(); ++j)
            if (std::abs(members_[i].theta - members_[j].theta) <= 1e-12 &&
                std::abs(members_[i].phi - members_[j].phi) <= 1e-12)
                throw Error(ErrorCode::DuplicateState,
                            "members " + std::to_string(i) + " and " + std::to_string(j) +
                                " coincide");
}

ComplexVector ket_input(const BlochAngles& a) {
    check_theta(a.theta);
    check_phi(a.phi);
    const double half = a.theta / 2.0;
    return ComplexVector{cplx{std::cos(half), 0.0},
                         std::sin(half) * cplx{std::cos(a.phi), std::sin(a.phi)}};
}

ComplexVector ket_theta(double theta) {
    check_theta(theta);
    const double half = theta / 2.0;
    return ComplexVector{cplx{std::cos(half), 0.0}, cplx{std::sin(half), 0.0}};
}

ComplexVector ket_sigma(double phi) {
    check_phi(phi);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    return ComplexVector{cplx{inv_sqrt2, 0.0},
                         inv_sqrt2 * cplx{std::cos(phi), std::sin(phi)}};
}

ComplexVector blank_ancilla() { return ComplexVector{cplx{1.0, 0.0}, cplx{0.0, 0.0}}; }

ComplexVector tensor(const ComplexVector& a, const ComplexVector& b) {
    ComplexVector out(a.dim() * b.dim());
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < b.dim(); ++j) out[i * b.dim() + j] = a[i] * b[j];
    return out;
}

double fidelity_up_to_phase(const ComplexVector& a, const ComplexVector& b) {
    if (a.dim() != b.dim()) throw Error(ErrorCode::DimMismatch, "fidelity");
    if (std::abs(a.norm() - 1.0) > 1e-9 || std::abs(b.norm() - 1.0) > 1e-9)
        throw Error(ErrorCode::NotNormalized, "fidelity expects unit vectors");
    return std::norm(inner(a, b));
}

}  // namespace qsplit
