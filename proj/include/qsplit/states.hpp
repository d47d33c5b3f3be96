#pragma once

#include <vector>

#include "qsplit/numerics.hpp"

namespace qsplit {

/// A pure qubit state as a point on the Bloch sphere.
struct BlochAngles {
    double theta = 0.0;  // polar angle, [0, pi]
    double phi = 0.0;    // azimuth, [0, 2*pi)
};

/// Ordered family of distinct input states.
class StateFamily {
public:
    explicit StateFamily(std::vector<BlochAngles> members);

    std::size_t n() const { return members_.size(); }
    const BlochAngles& member(std::size_t i) const { return members_[i]; }
    const std::vector<BlochAngles>& members() const { return members_; }

private:
    std::vector<BlochAngles> members_;
};

/// cos(theta/2)|0> + sin(theta/2) e^{i phi}|1>
ComplexVector ket_input(const BlochAngles& a);

/// cos(theta/2)|0> + sin(theta/2)|1>
ComplexVector ket_theta(double theta);

/// (|0> + e^{i phi}|1>)/sqrt(2)
ComplexVector ket_sigma(double phi);

/// The fixed blank-ancilla state |0>.
ComplexVector blank_ancilla();

/// Kronecker product; entry[i*dim(b)+j] == a[i]*b[j].
ComplexVector tensor(const ComplexVector& a, const ComplexVector& b);

/// |<a|b>|^2 for normalized vectors; 1 iff equal up to a global phase.
double fidelity_up_to_phase(const ComplexVector& a, const ComplexVector& b);

}  // namespace qsplit
