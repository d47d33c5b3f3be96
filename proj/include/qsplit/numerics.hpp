#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <vector>

#include "qsplit/error.hpp"

namespace qsplit {

using cplx = std::complex<double>;

/// Dense complex vector with value semantics. All entries must stay finite.
class ComplexVector {
public:
    ComplexVector() = default;
    explicit ComplexVector(std::size_t dim) : entries_(dim, cplx{0.0, 0.0}) {}
    ComplexVector(std::initializer_list<cplx> init) : entries_(init) {}

    static ComplexVector basis(std::size_t dim, std::size_t k);

    std::size_t dim() const { return entries_.size(); }
    cplx& operator[](std::size_t i) { return entries_[i]; }
    const cplx& operator[](std::size_t i) const { return entries_[i]; }

    double norm() const;

    ComplexVector& operator+=(const ComplexVector& other);
    ComplexVector& operator-=(const ComplexVector& other);
    ComplexVector& operator*=(cplx scale);

    const std::vector<cplx>& entries() const { return entries_; }

private:
    std::vector<cplx> entries_;
};

ComplexVector operator+(ComplexVector a, const ComplexVector& b);
ComplexVector operator-(ComplexVector a, const ComplexVector& b);
ComplexVector operator*(cplx scale, ComplexVector v);

/// Inner product, conjugate-linear in the first argument.
cplx inner(const ComplexVector& a, const ComplexVector& b);

/// Dense row-major complex matrix with value semantics.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), entries_(rows * cols, cplx{0.0, 0.0}) {}

    static ComplexMatrix identity(std::size_t n);
    static ComplexMatrix zero(std::size_t n) { return ComplexMatrix(n, n); }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    cplx& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
    const cplx& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

    ComplexVector row(std::size_t i) const;
    ComplexVector col(std::size_t j) const;

    /// Largest |entry|.
    double max_abs() const;
    cplx trace() const;

    ComplexMatrix& operator+=(const ComplexMatrix& other);
    ComplexMatrix& operator-=(const ComplexMatrix& other);
    ComplexMatrix& operator*=(cplx scale);

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cplx> entries_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(cplx scale, ComplexMatrix m);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexVector operator*(const ComplexMatrix& m, const ComplexVector& v);

/// Largest |a - b| over entries; matrices must have equal shape.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

/// Conjugate transpose.
ComplexMatrix adjoint(const ComplexMatrix& m);

/// max over (i,j) of |M[i][j] - conj(M[j][i])|; zero iff M is Hermitian.
double hermiticity_defect(const ComplexMatrix& m);

/// Real eigenvalues in ascending order.
struct Spectrum {
    std::vector<double> eigenvalues;

    double min() const { return eigenvalues.front(); }
    double max() const { return eigenvalues.back(); }
};

/// Full Hermitian eigendecomposition: m == vectors * diag(values) * vectors^dagger.
/// Eigenvalues ascend; column k of `vectors` is the eigenvector for values[k].
struct EigenSystem {
    std::vector<double> values;
    ComplexMatrix vectors;
};

/// Cyclic-Jacobi eigendecomposition of a Hermitian matrix. The input must be
/// square with hermiticity defect at most `tol`; sweeps run until the
/// off-diagonal Frobenius mass drops below 1e-14 (relative to the matrix scale).
EigenSystem eigen_hermitian(const ComplexMatrix& m, double tol);

/// Eigenvalues only, with the reconstruction residual checked internally.
Spectrum eigenvalues_hermitian(const ComplexMatrix& m, double tol);

/// True iff m is Hermitian within tol and its minimum eigenvalue is >= -tol.
bool is_psd(const ComplexMatrix& m, double tol);

/// Hermitian PSD square root: returns C with C*C^dagger == m (eigenvalues within
/// -tol clamped to zero). Throws NotPsd when the input is not PSD within tol.
ComplexMatrix psd_sqrt_factor(const ComplexMatrix& m, double tol);

/// Gram matrix of a vector list: result(i,j) == <v_i|v_j>.
ComplexMatrix gram(const std::vector<ComplexVector>& vectors);

/// Result of completing a vector list to a full orthonormal basis.
/// vectors[i] == sum_k coeffs(k, i) * basis[k]; the first `rank` basis members
/// span the input list.
struct OrthonormalExtension {
    std::vector<ComplexVector> basis;
    ComplexMatrix coeffs;
    std::size_t rank = 0;
};

OrthonormalExtension orthonormal_extension(const std::vector<ComplexVector>& vectors, double tol);

/// Same, but draws completion candidates from `candidates` (must span the
/// remainder) instead of the standard basis.
OrthonormalExtension orthonormal_extension(const std::vector<ComplexVector>& vectors, double tol,
                                           const std::vector<ComplexVector>& candidates);

}  // namespace qsplit
