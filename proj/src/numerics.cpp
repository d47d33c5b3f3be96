#include "qsplit/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qsplit {

const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::NonSquare: return "non-square";
        case ErrorCode::NotHermitian: return "not-hermitian";
        case ErrorCode::NotPsd: return "not-psd";
        case ErrorCode::DimMismatch: return "dim-mismatch";
        case ErrorCode::LengthMismatch: return "length-mismatch";
        case ErrorCode::AngleOutOfRange: return "angle-out-of-range";
        case ErrorCode::NotNormalized: return "not-normalized";
        case ErrorCode::IndexOutOfRange: return "index-out-of-range";
        case ErrorCode::DuplicateState: return "duplicate-state";
        case ErrorCode::EmptyFamily: return "empty-family";
        case ErrorCode::Infeasible: return "infeasible";
        case ErrorCode::GramMismatch: return "gram-mismatch";
        case ErrorCode::RankDeficient: return "rank-deficient";
        case ErrorCode::ZeroSuperposition: return "zero-superposition";
        case ErrorCode::Parse: return "parse";
        case ErrorCode::Io: return "io";
        case ErrorCode::Numerical: return "numerical";
    }
    return "unknown";
}

ComplexVector ComplexVector::basis(std::size_t dim, std::size_t k) {
    ComplexVector v(dim);
    v[k] = 1.0;
    return v;
}

double ComplexVector::norm() const {
    double sum = 0.0;
    for (const cplx& e : entries_) sum += std::norm(e);
    return std::sqrt(sum);
}

ComplexVector& ComplexVector::operator+=(const ComplexVector& other) {
    if (other.dim() != dim()) throw Error(ErrorCode::DimMismatch, "vector addition");
    for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += other[i];
    return *this;
}

ComplexVector& ComplexVector::operator-=(const ComplexVector& other) {
    if (other.dim() != dim()) throw Error(ErrorCode::DimMismatch, "vector subtraction");
    for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= other[i];
    return *this;
}

ComplexVector& ComplexVector::operator*=(cplx scale) {
    for (cplx& e : entries_) e *= scale;
    return *this;
}

ComplexVector operator+(ComplexVector a, const ComplexVector& b) { return a += b; }
ComplexVector operator-(ComplexVector a, const ComplexVector& b) { return a -= b; }
ComplexVector operator*(cplx scale, ComplexVector v) { return v *= scale; }

cplx inner(const ComplexVector& a, const ComplexVector& b) {
    if (a.dim() != b.dim()) throw Error(ErrorCode::DimMismatch, "inner product");
    cplx sum{0.0, 0.0};
    for (std::size_t i = 0; i < a.dim(); ++i) sum += std::conj(a[i]) * b[i];
    return sum;
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

ComplexVector ComplexMatrix::row(std::size_t i) const {
    ComplexVector v(cols_);
    for (std::size_t j = 0; j < cols_; ++j) v[j] = (*this)(i, j);
    return v;
}

ComplexVector ComplexMatrix::col(std::size_t j) const {
    ComplexVector v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
}

double ComplexMatrix::max_abs() const {
    double best = 0.0;
    for (const cplx& e : entries_) best = std::max(best, std::abs(e));
    return best;
}

cplx ComplexMatrix::trace() const {
    cplx sum{0.0, 0.0};
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) sum += (*this)(i, i);
    return sum;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
    if (other.rows() != rows_ || other.cols() != cols_)
        throw Error(ErrorCode::DimMismatch, "matrix addition");
    for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += other.entries_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
    if (other.rows() != rows_ || other.cols() != cols_)
        throw Error(ErrorCode::DimMismatch, "matrix subtraction");
    for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= other.entries_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx scale) {
    for (cplx& e : entries_) e *= scale;
    return *this;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
ComplexMatrix operator*(cplx scale, ComplexMatrix m) { return m *= scale; }

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows()) throw Error(ErrorCode::DimMismatch, "matrix product");
    ComplexMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const cplx aik = a(i, k);
            if (aik == cplx{0.0, 0.0}) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
        }
    }
    return out;
}

ComplexVector operator*(const ComplexMatrix& m, const ComplexVector& v) {
    if (m.cols() != v.dim()) throw Error(ErrorCode::DimMismatch, "matrix-vector product");
    ComplexVector out(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        cplx sum{0.0, 0.0};
        for (std::size_t j = 0; j < m.cols(); ++j) sum += m(i, j) * v[j];
        out[i] = sum;
    }
    return out;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw Error(ErrorCode::DimMismatch, "matrix comparison");
    double best = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            best = std::max(best, std::abs(a(i, j) - b(i, j)));
    return best;
}

ComplexMatrix adjoint(const ComplexMatrix& m) {
    ComplexMatrix out(m.cols(), m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out(j, i) = std::conj(m(i, j));
    return out;
}

double hermiticity_defect(const ComplexMatrix& m) {
    if (!m.square()) throw Error(ErrorCode::NonSquare, "hermiticity defect");
    double defect = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = i; j < m.cols(); ++j)
            defect = std::max(defect, std::abs(m(i, j) - std::conj(m(j, i))));
    return defect;
}

namespace {

double off_diagonal_frobenius(const ComplexMatrix& a) {
    double sum = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (i != j) sum += std::norm(a(i, j));
    return std::sqrt(sum);
}

// One two-sided Jacobi rotation in the (p, q) plane, annihilating a(p, q).
// The rotation J has J(p,p)=J(q,q)=c, J(q,p)=s, J(p,q)=-conj(s) with real c.
void jacobi_rotate(ComplexMatrix& a, ComplexMatrix& v, std::size_t p, std::size_t q) {
    const cplx apq = a(p, q);
    const double r = std::abs(apq);
    if (r == 0.0) return;
    const double app = a(p, p).real();
    const double aqq = a(q, q).real();
    // Small-magnitude root of t^2 - 2*tau*t - 1 = 0.
    const double tau = (aqq - app) / (2.0 * r);
    const double t = (tau >= 0.0) ? -1.0 / (tau + std::sqrt(1.0 + tau * tau))
                                  : 1.0 / (-tau + std::sqrt(1.0 + tau * tau));
    const double c = 1.0 / std::sqrt(1.0 + t * t);
    const cplx phase = apq / r;
    const cplx s = (t * c) * std::conj(phase);

    const std::size_t n = a.rows();
    for (std::size_t i = 0; i < n; ++i) {  // A <- A J
        const cplx aip = a(i, p), aiq = a(i, q);
        a(i, p) = c * aip + s * aiq;
        a(i, q) = -std::conj(s) * aip + c * aiq;
    }
    for (std::size_t j = 0; j < n; ++j) {  // A <- J^dagger A
        const cplx apj = a(p, j), aqj = a(q, j);
        a(p, j) = c * apj + std::conj(s) * aqj;
        a(q, j) = -s * apj + c * aqj;
    }
    for (std::size_t i = 0; i < n; ++i) {  // V <- V J
        const cplx vip = v(i, p), viq = v(i, q);
        v(i, p) = c * vip + s * viq;
        v(i, q) = -std::conj(s) * vip + c * viq;
    }
    // Annihilated pair and diagonals are exactly real/zero by construction.
    a(p, q) = 0.0;
    a(q, p) = 0.0;
    a(p, p) = a(p, p).real();
    a(q, q) = a(q, q).real();
}

}  // namespace

EigenSystem eigen_hermitian(const ComplexMatrix& m, double tol) {
    if (!m.square()) throw Error(ErrorCode::NonSquare, "hermitian eigendecomposition");
    if (hermiticity_defect(m) > tol)
        throw Error(ErrorCode::NotHermitian, "hermitian eigendecomposition");

    const std::size_t n = m.rows();
    // Work on the Hermitian part so defects within tol cannot skew the sweep.
    ComplexMatrix a(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            a(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));

    ComplexMatrix v = ComplexMatrix::identity(n);
    const double threshold = 1e-14 * std::max(1.0, a.max_abs());
    constexpr int max_sweeps = 100;

    int sweep = 0;
    for (; sweep < max_sweeps; ++sweep) {
        if (off_diagonal_frobenius(a) < threshold) break;
        for (std::size_t p = 0; p + 1 < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) jacobi_rotate(a, v, p, q);
    }
    if (sweep == max_sweeps && off_diagonal_frobenius(a) > 1e-10 * std::max(1.0, a.max_abs()))
        throw Error(ErrorCode::Numerical, "jacobi sweeps did not converge");

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&a](std::size_t x, std::size_t y) { return a(x, x).real() < a(y, y).real(); });

    EigenSystem out;
    out.values.resize(n);
    out.vectors = ComplexMatrix(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        out.values[k] = a(order[k], order[k]).real();
        for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
    }
    return out;
}

Spectrum eigenvalues_hermitian(const ComplexMatrix& m, double tol) {
    const EigenSystem es = eigen_hermitian(m, tol);

    const std::size_t n = m.rows();
    ComplexMatrix reconstructed(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            cplx sum{0.0, 0.0};
            for (std::size_t k = 0; k < n; ++k)
                sum += es.vectors(i, k) * es.values[k] * std::conj(es.vectors(j, k));
            reconstructed(i, j) = sum;
        }
    if (max_abs_diff(m, reconstructed) > 1e-10 * std::max(1.0, m.max_abs()))
        throw Error(ErrorCode::Numerical, "eigendecomposition residual too large");

    return Spectrum{es.values};
}

bool is_psd(const ComplexMatrix& m, double tol) {
    if (!m.square()) return false;
    if (m.rows() == 0) return true;
    if (hermiticity_defect(m) > tol) return false;
    const EigenSystem es = eigen_hermitian(m, tol);
    return es.values.front() >= -tol;
}

ComplexMatrix psd_sqrt_factor(const ComplexMatrix& m, double tol) {
    if (!is_psd(m, tol)) throw Error(ErrorCode::NotPsd, "psd square root");
    const EigenSystem es = eigen_hermitian(m, tol);
    const std::size_t n = m.rows();
    std::vector<double> roots(n);
    for (std::size_t k = 0; k < n; ++k) roots[k] = std::sqrt(std::max(0.0, es.values[k]));

    ComplexMatrix c(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            cplx sum{0.0, 0.0};
            for (std::size_t k = 0; k < n; ++k)
                sum += es.vectors(i, k) * roots[k] * std::conj(es.vectors(j, k));
            c(i, j) = sum;
            c(j, i) = std::conj(sum);  // keep the factor exactly Hermitian
        }
    for (std::size_t i = 0; i < n; ++i) c(i, i) = c(i, i).real();
    return c;
}

ComplexMatrix gram(const std::vector<ComplexVector>& vectors) {
    if (vectors.empty()) throw Error(ErrorCode::DimMismatch, "gram of empty list");
    const std::size_t dim = vectors.front().dim();
    for (const ComplexVector& v : vectors)
        if (v.dim() != dim) throw Error(ErrorCode::DimMismatch, "gram dimensions");
    ComplexMatrix g(vectors.size(), vectors.size());
    for (std::size_t i = 0; i < vectors.size(); ++i)
        for (std::size_t j = 0; j < vectors.size(); ++j) g(i, j) = inner(vectors[i], vectors[j]);
    return g;
}

OrthonormalExtension orthonormal_extension(const std::vector<ComplexVector>& vectors, double tol) {
    std::vector<ComplexVector> candidates;
    const std::size_t dim = vectors.empty() ? 0 : vectors.front().dim();
    candidates.reserve(dim);
    for (std::size_t k = 0; k < dim; ++k) candidates.push_back(ComplexVector::basis(dim, k));
    return orthonormal_extension(vectors, tol, candidates);
}

OrthonormalExtension orthonormal_extension(const std::vector<ComplexVector>& vectors, double tol,
                                           const std::vector<ComplexVector>& candidates) {
    if (vectors.empty()) throw Error(ErrorCode::DimMismatch, "orthonormal extension of empty list");
    const std::size_t dim = vectors.front().dim();
    if (vectors.size() > dim)
        throw Error(ErrorCode::DimMismatch, "more vectors than dimensions");
    for (const ComplexVector& v : vectors)
        if (v.dim() != dim) throw Error(ErrorCode::DimMismatch, "orthonormal extension dimensions");

    OrthonormalExtension out;
    out.coeffs = ComplexMatrix(dim, vectors.size());

    // Modified Gram-Schmidt with one re-orthogonalization pass.
    auto project_out = [&out](ComplexVector& r, std::size_t input_index, bool record) {
        for (std::size_t k = 0; k < out.basis.size(); ++k) {
            const cplx coeff = inner(out.basis[k], r);
            r -= coeff * out.basis[k];
            if (record) out.coeffs(k, input_index) += coeff;
        }
    };

    for (std::size_t i = 0; i < vectors.size(); ++i) {
        ComplexVector r = vectors[i];
        project_out(r, i, true);
        project_out(r, i, true);
        const double residual = r.norm();
        if (residual < tol) continue;  // dependent member, rank unchanged
        r *= 1.0 / residual;
        out.coeffs(out.basis.size(), i) = residual;
        out.basis.push_back(r);
    }
    out.rank = out.basis.size();

    for (const ComplexVector& candidate : candidates) {
        if (out.basis.size() == dim) break;
        if (candidate.dim() != dim) throw Error(ErrorCode::DimMismatch, "completion candidate");
        ComplexVector r = candidate;
        project_out(r, 0, false);
        project_out(r, 0, false);
        const double residual = r.norm();
        if (residual < std::max(tol, 1e-12)) continue;
        r *= 1.0 / residual;
        out.basis.push_back(r);
    }
    if (out.basis.size() != dim)
        throw Error(ErrorCode::Numerical, "candidates failed to complete the basis");
    return out;
}

}  // namespace qsplit
