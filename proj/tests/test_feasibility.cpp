#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qsplit/feasibility.hpp"
#include "test_helpers.hpp"

using namespace qsplit;
using namespace qsplit::testing;

namespace {

constexpr double pi = std::numbers::pi;
constexpr double tol = 1e-9;

GramTriple triple_of(std::initializer_list<BlochAngles> members) {
    return build_triple(StateFamily(members));
}

// Independent check for 2x2 Hermitian PSD-ness via trace and determinant.
bool psd_2x2(const ComplexMatrix& m, double eps) {
    if (hermiticity_defect(m) > eps) return false;
    const double a = m(0, 0).real(), d = m(1, 1).real();
    const double det = a * d - std::norm(m(0, 1));
    return a >= -eps && d >= -eps && det >= -eps * (1.0 + a + d);
}

}  // namespace

TEST_CASE("kernel modes") {
    const GramTriple poles = triple_of({BlochAngles{0.0, 0.0}, BlochAngles{pi, pi / 2}});
    // G is the identity: the matrix product collapses to H, the entrywise
    // product kills the off-diagonal.
    CHECK(max_abs_diff(kernel(poles, ProductMode::MatrixProduct), poles.H) <= 1e-15);
    CHECK(max_abs_diff(kernel(poles, ProductMode::TensorGram), ComplexMatrix::identity(2)) <=
          1e-15);

    const GramTriple equator = triple_of({BlochAngles{pi / 2, 0.0}, BlochAngles{pi / 2, pi / 2}});
    const ComplexMatrix km = kernel(equator, ProductMode::MatrixProduct);
    CHECK(std::abs(km(0, 0) - cplx{1.5, -0.5}) <= 1e-15);  // (3 - i)/2, complex diagonal
    CHECK(hermiticity_defect(km) > 0.5);
    CHECK(max_abs_diff(kernel(equator, ProductMode::TensorGram), equator.H) <= 1e-15);

    const GramTriple single = triple_of({BlochAngles{1.0, 1.0}});
    CHECK(std::abs(kernel(single, ProductMode::MatrixProduct)(0, 0) - 1.0) <= 1e-15);
    CHECK(std::abs(kernel(single, ProductMode::TensorGram)(0, 0) - 1.0) <= 1e-15);
}

TEST_CASE("residual") {
    const GramTriple poles = triple_of({BlochAngles{0.0, 0.0}, BlochAngles{pi, pi}});
    SUBCASE("zero gammas reproduce D exactly") {
        const ComplexMatrix r =
            residual(poles, EfficiencyVector::zeros(2), ProductMode::MatrixProduct);
        CHECK(max_abs_diff(r, poles.D) == 0.0);
    }
    SUBCASE("unit gammas on the orthogonal family vanish in both modes") {
        const EfficiencyVector ones = EfficiencyVector::uniform(2, 1.0);
        CHECK(residual(poles, ones, ProductMode::MatrixProduct).max_abs() <= 1e-15);
        CHECK(residual(poles, ones, ProductMode::TensorGram).max_abs() <= 1e-15);
    }
    SUBCASE("tensor mode with orthogonal targets") {
        const GramTriple quarter = triple_of({BlochAngles{0.0, 0.0}, BlochAngles{pi, pi / 2}});
        const ComplexMatrix r =
            residual(quarter, EfficiencyVector::uniform(2, 1.0), ProductMode::TensorGram);
        CHECK(r.max_abs() <= 1e-15);
    }
    SUBCASE("length mismatch") {
        CHECK_THROWS_AS(residual(poles, EfficiencyVector::zeros(3), ProductMode::TensorGram),
                        Error);
    }
}

TEST_CASE("reality defects") {
    const GramTriple same_phi =
        triple_of({BlochAngles{0.3, 1.0}, BlochAngles{1.1, 1.0}, BlochAngles{2.0, 1.0}});
    for (double d : reality_defects(same_phi)) CHECK(d <= 1e-15);

    const GramTriple poles = triple_of({BlochAngles{0.0, 0.0}, BlochAngles{pi, 2.2}});
    for (double d : reality_defects(poles)) CHECK(d <= 1e-15);

    const GramTriple equator = triple_of({BlochAngles{pi / 2, 0.0}, BlochAngles{pi / 2, pi / 2}});
    const std::vector<double> defects = reality_defects(equator);
    CHECK(defects[0] == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(defects[1] == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("feasible") {
    const GramTriple dependent = triple_of(
        {BlochAngles{0.0, 0.0}, BlochAngles{pi, 0.0}, BlochAngles{pi / 2, 0.0}});
    CHECK_FALSE(feasible(dependent, EfficiencyVector::uniform(3, 0.1),
                         ProductMode::TensorGram, tol));
    CHECK_FALSE(feasible(dependent, EfficiencyVector::zeros(3), ProductMode::TensorGram, tol));

    const GramTriple poles = triple_of({BlochAngles{0.0, 0.0}, BlochAngles{pi, pi}});
    CHECK(feasible(poles, EfficiencyVector::uniform(2, 1.0), ProductMode::MatrixProduct, tol));
    CHECK(feasible(poles, EfficiencyVector::uniform(2, 1.0), ProductMode::TensorGram, tol));

    const GramTriple equator = triple_of({BlochAngles{pi / 2, 0.0}, BlochAngles{pi / 2, pi / 2}});
    CHECK_FALSE(
        feasible(equator, EfficiencyVector::uniform(2, 0.5), ProductMode::MatrixProduct, tol));
}

TEST_CASE("max uniform gamma: frozen cases") {
    const GramTriple poles = triple_of({BlochAngles{0.0, 0.0}, BlochAngles{pi, pi}});
    CHECK(max_uniform_gamma(poles, ProductMode::MatrixProduct, tol) ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(max_uniform_gamma(poles, ProductMode::TensorGram, tol) ==
          doctest::Approx(1.0).epsilon(1e-12));

    // Orthogonal inputs, quarter-turned ancilla targets: the matrix-product
    // kernel equals H with top eigenvalue 1 + sqrt(2)/2, so the ceiling is
    // 1/(1 + sqrt(2)/2) = 2 - sqrt(2).
    const GramTriple quarter = triple_of({BlochAngles{0.0, 0.0}, BlochAngles{pi, pi / 2}});
    CHECK(std::abs(max_uniform_gamma(quarter, ProductMode::MatrixProduct, tol) -
                   (2.0 - std::sqrt(2.0))) <= 1e-9);
    CHECK(max_uniform_gamma(quarter, ProductMode::TensorGram, tol) ==
          doctest::Approx(1.0).epsilon(1e-12));

    const GramTriple equator = triple_of({BlochAngles{pi / 2, 0.0}, BlochAngles{pi / 2, pi / 2}});
    CHECK(max_uniform_gamma(equator, ProductMode::MatrixProduct, tol) == 0.0);
    CHECK(max_uniform_gamma(equator, ProductMode::TensorGram, tol) ==
          doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("max uniform gamma: monotone boundary and independent 2x2 oracle") {
    Lcg64 rng(307);
    for (int trial = 0; trial < 100; ++trial) {
        const StateFamily family = random_family(rng, 2);
        const GramTriple triple = build_triple(family);
        const ProductMode mode =
            trial % 2 == 0 ? ProductMode::TensorGram : ProductMode::MatrixProduct;
        const double star = max_uniform_gamma(triple, mode, tol);

        if (star > 1e-6) {
            CHECK(feasible(triple, EfficiencyVector::uniform(2, star / 2), mode, tol));
            CHECK(feasible(triple, EfficiencyVector::uniform(2, star * (1 - 1e-6)), mode, tol));
        }
        if (star < 1.0 - 1e-6)
            CHECK_FALSE(feasible(triple, EfficiencyVector::uniform(2, star * 1.01 + 1e-9), mode,
                                 tol));

        // Independent oracle: bisection with closed-form 2x2 PSD checks.
        const ComplexMatrix k = kernel(triple, mode);
        double lo = 0.0, hi = 1.0;
        auto oracle_ok = [&](double g) {
            EfficiencyVector gv = EfficiencyVector::uniform(2, g);
            return psd_2x2(residual(triple, gv, mode), 1e-9);
        };
        if (!oracle_ok(0.0)) {
            lo = 0.0;
        } else if (oracle_ok(1.0)) {
            lo = 1.0;
        } else {
            while (hi - lo > 1e-11) {
                const double mid = 0.5 * (lo + hi);
                (oracle_ok(mid) ? lo : hi) = mid;
            }
        }
        CHECK(std::abs(star - lo) <= 1e-8);
        (void)k;
    }
}

TEST_CASE("theorem: no nonzero uniform gamma for three qubit states") {
    Lcg64 rng(311);
    for (int trial = 0; trial < 200; ++trial) {
        const GramTriple triple = build_triple(random_family(rng, 3));
        CHECK(max_uniform_gamma(triple, ProductMode::TensorGram, tol) <= 1e-8);
        CHECK(max_uniform_gamma(triple, ProductMode::MatrixProduct, tol) <= 1e-8);
    }
}

TEST_CASE("tensor kernel is PSD on random families") {
    Lcg64 rng(313);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 2 + static_cast<std::size_t>(rng.uniform() * 3.0);
        const GramTriple triple = build_triple(random_family(rng, n));
        CHECK(is_psd(kernel(triple, ProductMode::TensorGram), 1e-10));
    }
}

TEST_CASE("maximize_gammas") {
    const GramTriple single = triple_of({BlochAngles{0.7, 2.0}});
    CHECK(maximize_gammas(single, ProductMode::TensorGram, tol).gammas[0] ==
          doctest::Approx(1.0).epsilon(1e-12));

    const GramTriple poles = triple_of({BlochAngles{0.0, 0.0}, BlochAngles{pi, pi}});
    const EfficiencyVector best = maximize_gammas(poles, ProductMode::TensorGram, tol);
    CHECK(best.gammas[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(best.gammas[1] == doctest::Approx(1.0).epsilon(1e-12));

    const GramTriple dependent = triple_of(
        {BlochAngles{0.0, 0.0}, BlochAngles{pi, 0.0}, BlochAngles{pi / 2, 0.0}});
    CHECK(maximize_gammas(dependent, ProductMode::TensorGram, tol).total() == 0.0);

    SUBCASE("result is feasible and coordinate-wise maximal") {
        Lcg64 rng(317);
        for (int trial = 0; trial < 40; ++trial) {
            const GramTriple triple = build_triple(random_family(rng, 2));
            const EfficiencyVector best =
                maximize_gammas(triple, ProductMode::TensorGram, tol);
            CHECK(feasible(triple, best, ProductMode::TensorGram, tol));
            for (std::size_t i = 0; i < 2; ++i) {
                if (best[i] >= 1.0 - 1e-9) continue;
                EfficiencyVector bumped = best;
                bumped.gammas[i] = std::min(1.0, best[i] + 1e-6);
                CHECK_FALSE(feasible(triple, bumped, ProductMode::TensorGram, tol));
            }
        }
    }
    SUBCASE("swap-symmetric families get equal gammas") {
        Lcg64 rng(331);
        for (int trial = 0; trial < 40; ++trial) {
            const double theta = rng.uniform() * pi;
            const double phi = rng.uniform() * pi;  // second state offset by the same phi
            const StateFamily family(
                {BlochAngles{theta, 0.5}, BlochAngles{theta, 0.5 + phi + 1e-3}});
            const GramTriple triple = build_triple(family);
            const EfficiencyVector best =
                maximize_gammas(triple, ProductMode::TensorGram, tol);
            CHECK(std::abs(best[0] - best[1]) <= 1e-8);
        }
    }
}

TEST_CASE("analyze report") {
    const GramTriple equator = triple_of({BlochAngles{pi / 2, 0.0}, BlochAngles{pi / 2, pi / 2}});
    const FeasibilityReport bad =
        analyze(equator, EfficiencyVector::uniform(2, 0.5), ProductMode::MatrixProduct, tol);
    CHECK(bad.independent);
    CHECK_FALSE(bad.feasible);
    CHECK(bad.reality_defects[0] == doctest::Approx(0.25).epsilon(1e-12));  // gamma * 1/2
    CHECK(bad.kernel_hermiticity_defect > 0.5);

    const GramTriple poles = triple_of({BlochAngles{0.0, 0.0}, BlochAngles{pi, pi}});
    const FeasibilityReport boundary =
        analyze(poles, EfficiencyVector::uniform(2, 1.0), ProductMode::TensorGram, tol);
    CHECK(boundary.feasible);
    CHECK(std::abs(boundary.residual_min_eig) <= 1e-12);
    CHECK(std::abs(boundary.hermitian_part_min_eig) <= 1e-12);

    // Small gamma on an all-equal-phi family: every diagonal entry positive.
    const GramTriple same_phi = triple_of({BlochAngles{0.4, 1.0}, BlochAngles{1.9, 1.0}});
    const FeasibilityReport smooth =
        analyze(same_phi, EfficiencyVector::uniform(2, 0.05), ProductMode::MatrixProduct, tol);
    for (bool positive : smooth.diagonal_positive) CHECK(positive);
}
