#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qsplit/states.hpp"
#include "test_helpers.hpp"

using namespace qsplit;
using namespace qsplit::testing;

namespace {
constexpr double pi = std::numbers::pi;
const cplx I{0.0, 1.0};
}  // namespace

TEST_CASE("adjoint basics") {
    CHECK(max_abs_diff(adjoint(ComplexMatrix::identity(2)), ComplexMatrix::identity(2)) == 0.0);

    ComplexMatrix m(2, 2);
    m(0, 1) = I;
    const ComplexMatrix a = adjoint(m);
    CHECK(a(0, 1) == cplx{0.0, 0.0});
    CHECK(a(1, 0) == -I);

    Lcg64 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        const ComplexMatrix r = random_matrix(rng, 5);
        CHECK(max_abs_diff(adjoint(adjoint(r)), r) == 0.0);
    }
}

TEST_CASE("hermiticity defect") {
    CHECK(hermiticity_defect(ComplexMatrix::identity(3)) == 0.0);

    ComplexMatrix m(2, 2);
    m(0, 0) = 1.0;
    m(1, 1) = 1.0;
    m(0, 1) = I;
    m(1, 0) = I;
    CHECK(hermiticity_defect(m) == doctest::Approx(2.0).epsilon(1e-15));

    CHECK_THROWS_AS(hermiticity_defect(ComplexMatrix(2, 3)), Error);

    // M + adjoint(M) is Hermitian exactly.
    Lcg64 rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        const ComplexMatrix r = random_matrix(rng, 4);
        CHECK(hermiticity_defect(r + adjoint(r)) <= 1e-15);
    }
}

TEST_CASE("hermitian eigenvalues: frozen cases") {
    const Spectrum id = eigenvalues_hermitian(ComplexMatrix::identity(4), 1e-12);
    for (double v : id.eigenvalues) CHECK(v == doctest::Approx(1.0).epsilon(1e-13));

    ComplexMatrix m(2, 2);
    m(0, 0) = 2.0;
    m(1, 1) = 2.0;
    m(0, 1) = 1.0;
    m(1, 0) = 1.0;
    const Spectrum s = eigenvalues_hermitian(m, 1e-12);
    CHECK(s.eigenvalues[0] == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(s.eigenvalues[1] == doctest::Approx(3.0).epsilon(1e-13));

    // H for phi = (0, pi/2): eigenvalues 1 -+ sqrt(2)/2 from the 2x2 closed
    // form 1 +- |H01|, |H01| = |1 + i|/2.
    const StateFamily family({BlochAngles{pi / 2, 0.0}, BlochAngles{pi / 2, pi / 2}});
    const Spectrum h = eigenvalues_hermitian(build_H(family), 1e-12);
    CHECK(h.eigenvalues[0] == doctest::Approx(1.0 - std::sqrt(2.0) / 2.0).epsilon(1e-12));
    CHECK(h.eigenvalues[1] == doctest::Approx(1.0 + std::sqrt(2.0) / 2.0).epsilon(1e-12));

    ComplexMatrix bad(2, 2);
    bad(0, 1) = 1.0;
    CHECK_THROWS_AS(eigenvalues_hermitian(bad, 1e-12), Error);
}

TEST_CASE("hermitian eigenvalues: trace and determinant identities") {
    Lcg64 rng(23);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 2 + static_cast<std::size_t>(rng.uniform() * 3.0);
        const ComplexMatrix m = random_hermitian(rng, n);
        const Spectrum s = eigenvalues_hermitian(m, 1e-12);

        double sum = 0.0, product = 1.0;
        for (double v : s.eigenvalues) {
            sum += v;
            product *= v;
        }
        CHECK(std::abs(sum - m.trace().real()) <= 1e-9);
        const cplx det = determinant(m);
        CHECK(std::abs(det.imag()) <= 1e-8);
        CHECK(std::abs(product - det.real()) <= 1e-8);
    }
}

TEST_CASE("is_psd") {
    CHECK(is_psd(ComplexMatrix::identity(2), 1e-9));

    ComplexMatrix neg(2, 2);
    neg(0, 0) = 1.0;
    neg(1, 1) = -0.5;
    CHECK_FALSE(is_psd(neg, 1e-9));

    ComplexMatrix nonherm(2, 2);
    nonherm(0, 1) = 1.0;
    CHECK_FALSE(is_psd(nonherm, 1e-9));

    // Gram of a linearly dependent coplanar triple: PSD with a zero eigenvalue.
    const StateFamily triple(
        {BlochAngles{0.0, 0.0}, BlochAngles{pi, 0.0}, BlochAngles{pi / 2, 0.0}});
    const ComplexMatrix d = build_D(triple);
    CHECK(is_psd(d, 1e-9));
    const Spectrum s = eigenvalues_hermitian(d, 1e-12);
    CHECK(std::abs(s.eigenvalues.front()) <= 1e-12);
}

TEST_CASE("psd_sqrt_factor: frozen cases") {
    CHECK(max_abs_diff(psd_sqrt_factor(ComplexMatrix::identity(2), 1e-9),
                       ComplexMatrix::identity(2)) <= 1e-13);
    CHECK(psd_sqrt_factor(ComplexMatrix::zero(3), 1e-9).max_abs() <= 1e-13);

    ComplexMatrix diag(2, 2);
    diag(0, 0) = 2.0;
    diag(1, 1) = 8.0;
    const ComplexMatrix c = psd_sqrt_factor(diag, 1e-9);
    CHECK(std::abs(c(0, 0) - std::sqrt(2.0)) <= 1e-12);
    CHECK(std::abs(c(1, 1) - 2.0 * std::sqrt(2.0)) <= 1e-12);
    CHECK(std::abs(c(0, 1)) <= 1e-12);

    ComplexMatrix neg(2, 2);
    neg(0, 0) = -1.0;
    neg(1, 1) = 1.0;
    CHECK_THROWS_AS(psd_sqrt_factor(neg, 1e-9), Error);
}

TEST_CASE("psd_sqrt_factor: round trip on random PSD matrices") {
    Lcg64 rng(31);
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t n = 1 + static_cast<std::size_t>(rng.uniform() * 6.0);
        const ComplexMatrix m = random_psd(rng, n);
        const ComplexMatrix c = psd_sqrt_factor(m, 1e-9);
        CHECK(hermiticity_defect(c) == 0.0);
        CHECK(max_abs_diff(c * adjoint(c), m) <= 1e-9);
    }
}

TEST_CASE("gram") {
    std::vector<ComplexVector> basis;
    for (std::size_t k = 0; k < 3; ++k) basis.push_back(ComplexVector::basis(3, k));
    CHECK(max_abs_diff(gram(basis), ComplexMatrix::identity(3)) == 0.0);

    const double r = 1.0 / std::sqrt(2.0);
    const std::vector<ComplexVector> pair = {ComplexVector{1.0, 0.0}, ComplexVector{r, r}};
    const ComplexMatrix g = gram(pair);
    CHECK(std::abs(g(0, 1) - r) <= 1e-15);
    CHECK(std::abs(g(1, 0) - r) <= 1e-15);

    CHECK_THROWS_AS(gram({ComplexVector(2), ComplexVector(3)}), Error);

    Lcg64 rng(41);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<ComplexVector> vs;
        const std::size_t count = 1 + static_cast<std::size_t>(rng.uniform() * 4.0);
        for (std::size_t k = 0; k < count; ++k) vs.push_back(random_vector(rng, 6));
        CHECK(is_psd(gram(vs), 1e-10));
    }
}

TEST_CASE("gram matches build_D on random families") {
    Lcg64 rng(43);
    for (int trial = 0; trial < 500; ++trial) {
        const std::size_t n = 1 + static_cast<std::size_t>(rng.uniform() * 4.0);
        const StateFamily family = random_family(rng, n);
        std::vector<ComplexVector> kets;
        for (std::size_t i = 0; i < n; ++i) kets.push_back(ket_input(family.member(i)));
        CHECK(max_abs_diff(gram(kets), build_D(family)) <= 1e-12);
    }
}

TEST_CASE("orthonormal extension") {
    SUBCASE("single basis vector in dim 2") {
        const OrthonormalExtension ext =
            orthonormal_extension({ComplexVector::basis(2, 0)}, 1e-9);
        CHECK(ext.rank == 1);
        CHECK(ext.basis.size() == 2);
        CHECK(std::abs(ext.basis[1][1]) == doctest::Approx(1.0).epsilon(1e-14));
    }
    SUBCASE("exact duplicate collapses rank") {
        const OrthonormalExtension ext = orthonormal_extension(
            {ComplexVector::basis(2, 0), ComplexVector::basis(2, 0)}, 1e-9);
        CHECK(ext.rank == 1);
    }
    SUBCASE("random independent vectors") {
        Lcg64 rng(53);
        for (int trial = 0; trial < 50; ++trial) {
            std::vector<ComplexVector> vs;
            for (int k = 0; k < 3; ++k) vs.push_back(random_vector(rng, 5));
            const OrthonormalExtension ext = orthonormal_extension(vs, 1e-9);
            CHECK(ext.rank == 3);
            CHECK(max_abs_diff(gram(ext.basis), ComplexMatrix::identity(5)) <= 1e-10);
            for (std::size_t i = 0; i < vs.size(); ++i) {
                ComplexVector rebuilt(5);
                for (std::size_t k = 0; k < ext.basis.size(); ++k)
                    rebuilt += ext.coeffs(k, i) * ext.basis[k];
                CHECK((rebuilt - vs[i]).norm() <= 1e-10);
            }
        }
    }
}

TEST_CASE("eigenvector reconstruction on random hermitian matrices") {
    Lcg64 rng(61);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 1 + static_cast<std::size_t>(rng.uniform() * 8.0);
        const ComplexMatrix m = random_hermitian(rng, n);
        const EigenSystem es = eigen_hermitian(m, 1e-12);
        for (std::size_t k = 0; k + 1 < es.values.size(); ++k)
            CHECK(es.values[k] <= es.values[k + 1]);
        // V diag(values) V^dagger == m
        ComplexMatrix lambda(n, n);
        for (std::size_t k = 0; k < n; ++k) lambda(k, k) = es.values[k];
        CHECK(max_abs_diff(es.vectors * lambda * adjoint(es.vectors), m) <= 1e-10);
        CHECK(max_abs_diff(adjoint(es.vectors) * es.vectors, ComplexMatrix::identity(n)) <=
              1e-12);
    }
}
