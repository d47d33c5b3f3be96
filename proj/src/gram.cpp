#include "qsplit/gram.hpp"

#include <cmath>

namespace qsplit {

// Closed forms are the primary path; the ket-based inner products serve as a
// cross-check oracle in the tests. Upper triangles are mirrored so the
// structure claims (Hermitian, real symmetric, unit diagonal) hold exactly.

ComplexMatrix build_D(const StateFamily& family) {
    const std::size_t n = family.n();
    ComplexMatrix d(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        d(i, i) = 1.0;
        const BlochAngles& a = family.member(i);
        for (std::size_t j = i + 1; j < n; ++j) {
            const BlochAngles& b = family.member(j);
            const double dphi = b.phi - a.phi;
            const cplx value =
                std::cos(a.theta / 2.0) * std::cos(b.theta / 2.0) +
                std::sin(a.theta / 2.0) * std::sin(b.theta / 2.0) *
                    cplx{std::cos(dphi), std::sin(dphi)};
            d(i, j) = value;
            d(j, i) = std::conj(value);
        }
    }
    return d;
}

ComplexMatrix build_G(const StateFamily& family) {
    const std::size_t n = family.n();
    ComplexMatrix g(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        g(i, i) = 1.0;
        for (std::size_t j = i + 1; j < n; ++j) {
            const double value =
                std::cos((family.member(i).theta - family.member(j).theta) / 2.0);
            g(i, j) = value;
            g(j, i) = value;
        }
    }
    return g;
}

ComplexMatrix build_H(const StateFamily& family) {
    const std::size_t n = family.n();
    ComplexMatrix h(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        h(i, i) = 1.0;
        for (std::size_t j = i + 1; j < n; ++j) {
            const double dphi = family.member(j).phi - family.member(i).phi;
            const cplx value = 0.5 * cplx{1.0 + std::cos(dphi), std::sin(dphi)};
            h(i, j) = value;
            h(j, i) = std::conj(value);
        }
    }
    return h;
}

GramTriple build_triple(const StateFamily& family) {
    return GramTriple{build_D(family), build_G(family), build_H(family)};
}

IndependenceVerdict linear_independence(const StateFamily& family, double tol) {
    const ComplexMatrix d = build_D(family);
    const EigenSystem es = eigen_hermitian(d, 1e-12);
    return IndependenceVerdict{es.values.front() > tol, es.values.front()};
}

}  // namespace qsplit
