#include "qsplit/feasibility.hpp"

#include <cmath>
#include <numeric>

namespace qsplit {

namespace {

constexpr double kBisectionWidth = 1e-10;
constexpr int kBisectionIterations = 60;
constexpr double kSweepImprovement = 1e-9;
constexpr int kMaxSweeps = 100;

void check_sizes(const GramTriple& triple, const EfficiencyVector& gammas) {
    if (gammas.size() != triple.n())
        throw Error(ErrorCode::LengthMismatch, "gamma count does not match family size");
}

}  // namespace

std::string to_string(ProductMode mode) {
    return mode == ProductMode::MatrixProduct ? "matrix" : "tensor";
}

ProductMode product_mode_from_string(const std::string& name) {
    if (name == "matrix") return ProductMode::MatrixProduct;
    if (name == "tensor") return ProductMode::TensorGram;
    throw Error(ErrorCode::Parse, "unknown product mode '" + name + "'");
}

EfficiencyVector EfficiencyVector::uniform(std::size_t n, double value) {
    return EfficiencyVector{std::vector<double>(n, value)};
}

double EfficiencyVector::total() const {
    return std::accumulate(gammas.begin(), gammas.end(), 0.0);
}

ComplexMatrix kernel(const GramTriple& triple, ProductMode mode) {
    if (mode == ProductMode::MatrixProduct) return triple.G * triple.H;
    const std::size_t n = triple.n();
    ComplexMatrix k(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) k(i, j) = triple.G(i, j) * triple.H(i, j);
    return k;
}

ComplexMatrix residual(const GramTriple& triple, const EfficiencyVector& gammas,
                       ProductMode mode) {
    check_sizes(triple, gammas);
    const std::size_t n = triple.n();
    const ComplexMatrix k = kernel(triple, mode);
    std::vector<double> roots(n);
    for (std::size_t i = 0; i < n; ++i) roots[i] = std::sqrt(gammas[i]);

    ComplexMatrix r(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            r(i, j) = triple.D(i, j) - roots[i] * roots[j] * k(i, j);
    return r;
}

std::vector<double> reality_defects(const GramTriple& triple) {
    const std::size_t n = triple.n();
    std::vector<double> defects(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double sum = 0.0;
        for (std::size_t j = 0; j < n; ++j)
            if (j != i) sum += triple.G(i, j).real() * triple.H(j, i).imag();
        defects[i] = std::abs(sum);
    }
    return defects;
}

bool feasible(const GramTriple& triple, const EfficiencyVector& gammas, ProductMode mode,
              double tol) {
    check_sizes(triple, gammas);
    const EigenSystem d_eigen = eigen_hermitian(triple.D, 1e-12);
    if (d_eigen.values.front() <= tol) return false;
    return is_psd(residual(triple, gammas, mode), tol);
}

namespace {

// Largest value in [lo, 1] for which `ok` holds, assuming the admissible set
// is a closed interval containing lo. Bisection to absolute width 1e-10.
template <typename Predicate>
double bisect_upper(double lo, Predicate ok) {
    if (ok(1.0)) return 1.0;
    double hi = 1.0;
    for (int it = 0; it < kBisectionIterations && hi - lo > kBisectionWidth; ++it) {
        const double mid = 0.5 * (lo + hi);
        (ok(mid) ? lo : hi) = mid;
    }
    return lo;
}

}  // namespace

double max_uniform_gamma(const GramTriple& triple, ProductMode mode, double tol) {
    const std::size_t n = triple.n();
    auto ok = [&](double g) {
        return feasible(triple, EfficiencyVector::uniform(n, g), mode, tol);
    };
    if (!ok(0.0)) return 0.0;
    return bisect_upper(0.0, ok);
}

EfficiencyVector maximize_gammas(const GramTriple& triple, ProductMode mode, double tol) {
    const std::size_t n = triple.n();
    EfficiencyVector gammas = EfficiencyVector::zeros(n);
    if (!feasible(triple, gammas, mode, tol)) return gammas;

    // Uniform start keeps swap-symmetric families at symmetric optima; the
    // admissible set of each coordinate (others fixed) is an interval, so the
    // per-coordinate bisection is exact.
    gammas = EfficiencyVector::uniform(n, max_uniform_gamma(triple, mode, tol));

    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        double improvement = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            auto ok = [&](double g) {
                EfficiencyVector trial = gammas;
                trial.gammas[i] = g;
                return feasible(triple, trial, mode, tol);
            };
            const double best = bisect_upper(gammas[i], ok);
            improvement += best - gammas[i];
            gammas.gammas[i] = best;
        }
        if (improvement < kSweepImprovement) break;
    }
    return gammas;
}

FeasibilityReport analyze(const GramTriple& triple, const EfficiencyVector& gammas,
                          ProductMode mode, double tol) {
    check_sizes(triple, gammas);
    const std::size_t n = triple.n();

    FeasibilityReport report;
    const EigenSystem d_eigen = eigen_hermitian(triple.D, 1e-12);
    report.min_eig_d = d_eigen.values.front();
    report.independent = report.min_eig_d > tol;
    report.kernel_hermiticity_defect = hermiticity_defect(kernel(triple, mode));

    const ComplexMatrix r = residual(triple, gammas, mode);
    report.residual_hermiticity_defect = hermiticity_defect(r);
    if (report.residual_hermiticity_defect <= tol) {
        report.residual_min_eig = eigen_hermitian(r, tol).values.front();
        report.feasible = report.independent && report.residual_min_eig >= -tol;
    } else {
        // Fall back to the Hermitian part; the defect itself already rules the
        // residual out.
        report.residual_min_eig =
            eigen_hermitian(0.5 * (r + adjoint(r)), 1e-12).values.front();
        report.feasible = false;
    }

    // Literal coupling matrix L = D - sqrt(G) G H sqrt(G) at this Gamma.
    const ComplexMatrix l = residual(triple, gammas, ProductMode::MatrixProduct);
    report.reality_defects.resize(n);
    report.diagonal_positive.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        report.reality_defects[i] = std::abs(l(i, i).imag());
        report.diagonal_positive[i] =
            report.reality_defects[i] <= tol && l(i, i).real() > 0.0;
    }
    report.hermitian_part_min_eig =
        eigen_hermitian(0.5 * (l + adjoint(l)), 1e-12).values.front();
    return report;
}

}  // namespace qsplit
