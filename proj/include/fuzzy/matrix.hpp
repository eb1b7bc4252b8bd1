#ifndef FUZZY_MATRIX_HPP
#define FUZZY_MATRIX_HPP

// Small dense linear algebra for k x k covariance matrices.
//
// Determinants and quadratic forms are always computed through a Cholesky
// factor; no routine here ever materializes an inverse.

#include <cassert>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "error.hpp"

namespace fuzzy {

/// Row-major dense matrix of doubles.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool empty() const noexcept { return data_.empty(); }

    double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
    std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

    std::span<const double> values() const noexcept { return data_; }
    std::span<double> values() noexcept { return data_; }

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

/// Symmetric k x k matrix. Construction from an arbitrary square matrix
/// symmetrizes it as (A + A^T) / 2.
class SymMatrix {
public:
    SymMatrix() = default;

    explicit SymMatrix(const Matrix& m) : m_(m.rows(), m.rows()) {
        if (m.rows() == 0 || m.rows() != m.cols())
            throw InvalidData("SymMatrix requires a non-empty square matrix");
        const std::size_t k = m.rows();
        for (std::size_t a = 0; a < k; ++a) {
            m_(a, a) = m(a, a);
            for (std::size_t b = a + 1; b < k; ++b) {
                const double v = 0.5 * (m(a, b) + m(b, a));
                m_(a, b) = v;
                m_(b, a) = v;
            }
        }
    }

    static SymMatrix identity(std::size_t k, double scale = 1.0) {
        Matrix m(k, k);
        for (std::size_t a = 0; a < k; ++a) m(a, a) = scale;
        return SymMatrix(m);
    }

    static SymMatrix diagonal(std::span<const double> diag) {
        Matrix m(diag.size(), diag.size());
        for (std::size_t a = 0; a < diag.size(); ++a) m(a, a) = diag[a];
        return SymMatrix(m);
    }

    std::size_t dim() const noexcept { return m_.rows(); }
    double operator()(std::size_t a, std::size_t b) const { return m_(a, b); }
    const Matrix& dense() const noexcept { return m_; }

    double trace() const {
        double t = 0.0;
        for (std::size_t a = 0; a < dim(); ++a) t += m_(a, a);
        return t;
    }

    /// Returns this + ridge * I.
    SymMatrix shifted(double ridge) const {
        SymMatrix out = *this;
        for (std::size_t a = 0; a < dim(); ++a) out.m_(a, a) += ridge;
        return out;
    }

    std::vector<double> multiply(std::span<const double> x) const {
        assert(x.size() == dim());
        std::vector<double> y(dim(), 0.0);
        for (std::size_t a = 0; a < dim(); ++a)
            for (std::size_t b = 0; b < dim(); ++b) y[a] += m_(a, b) * x[b];
        return y;
    }

    friend bool operator==(const SymMatrix&, const SymMatrix&) = default;

private:
    Matrix m_;
};

class CholeskyFactor;
CholeskyFactor cholesky(const SymMatrix& m, double ridge = 0.0);

/// Lower-triangular L with L * L^T equal to the factored matrix.
class CholeskyFactor {
public:
    std::size_t dim() const noexcept { return lower_.rows(); }
    double operator()(std::size_t a, std::size_t b) const { return lower_(a, b); }
    const Matrix& lower() const noexcept { return lower_; }

private:
    explicit CholeskyFactor(Matrix lower) : lower_(std::move(lower)) {}
    friend CholeskyFactor cholesky(const SymMatrix& m, double ridge);

    Matrix lower_;
};

/// Factors m + ridge * I. Throws NotPositiveDefinite on a pivot <= 0.
inline CholeskyFactor cholesky(const SymMatrix& m, double ridge) {
    if (!(ridge >= 0.0)) throw InvalidConfig("cholesky: ridge must be nonnegative");
    const std::size_t k = m.dim();
    Matrix l(k, k);
    for (std::size_t j = 0; j < k; ++j) {
        double pivot = m(j, j) + ridge;
        for (std::size_t p = 0; p < j; ++p) pivot -= l(j, p) * l(j, p);
        if (!(pivot > 0.0) || !std::isfinite(pivot))
            throw NotPositiveDefinite("cholesky: non-positive pivot at column " + std::to_string(j));
        const double d = std::sqrt(pivot);
        l(j, j) = d;
        for (std::size_t i = j + 1; i < k; ++i) {
            double s = m(i, j);
            for (std::size_t p = 0; p < j; ++p) s -= l(i, p) * l(j, p);
            l(i, j) = s / d;
        }
    }
    return CholeskyFactor(std::move(l));
}

inline double log_determinant(const CholeskyFactor& f) {
    double s = 0.0;
    for (std::size_t a = 0; a < f.dim(); ++a) s += std::log(f(a, a));
    return 2.0 * s;
}

/// det(L L^T) = (prod diag L)^2.
inline double determinant(const CholeskyFactor& f) {
    double p = 1.0;
    for (std::size_t a = 0; a < f.dim(); ++a) p *= f(a, a);
    return p * p;
}

/// Solves (L L^T) y = b by forward then back substitution.
inline std::vector<double> solve(const CholeskyFactor& f, std::span<const double> b) {
    const std::size_t k = f.dim();
    if (b.size() != k) throw LengthMismatch("solve: right-hand side has wrong length");
    std::vector<double> y(b.begin(), b.end());
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t p = 0; p < i; ++p) y[i] -= f(i, p) * y[p];
        y[i] /= f(i, i);
    }
    for (std::size_t ii = k; ii-- > 0;) {
        for (std::size_t p = ii + 1; p < k; ++p) y[ii] -= f(p, ii) * y[p];
        y[ii] /= f(ii, ii);
    }
    return y;
}

/// v^T (L L^T)^{-1} v, via a single forward substitution: |L^{-1} v|^2.
inline double inverse_quadratic_form(const CholeskyFactor& f, std::span<const double> v) {
    const std::size_t k = f.dim();
    if (v.size() != k) throw LengthMismatch("quadratic form: vector has wrong length");
    std::vector<double> z(v.begin(), v.end());
    double s = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t p = 0; p < i; ++p) z[i] -= f(i, p) * z[p];
        z[i] /= f(i, i);
        s += z[i] * z[i];
    }
    return s;
}

struct RegularizedFactor {
    CholeskyFactor factor;
    double ridge;
};

/// Ridge ladder: 0, then 1e-10 * scale, growing tenfold per failure up to
/// 1e-2 * scale, where scale = trace(m) / k. A matrix with zero trace uses
/// `fallback_scale` instead. Throws NotPositiveDefinite once the ladder is
/// exhausted.
inline RegularizedFactor regularized_cholesky(const SymMatrix& m, double fallback_scale = 1.0) {
    try {
        return {cholesky(m, 0.0), 0.0};
    } catch (const NotPositiveDefinite&) {
    }
    double scale = m.trace() / static_cast<double>(m.dim());
    if (!(scale > 0.0) || !std::isfinite(scale)) scale = fallback_scale;
    if (!(scale > 0.0) || !std::isfinite(scale))
        throw NotPositiveDefinite("regularized_cholesky: no usable ridge scale");
    for (int e = -10; e <= -2; ++e) {
        const double ridge = scale * std::pow(10.0, e);
        try {
            return {cholesky(m, ridge), ridge};
        } catch (const NotPositiveDefinite&) {
        }
    }
    throw NotPositiveDefinite("regularized_cholesky: ridge ladder exhausted");
}

}  // namespace fuzzy

#endif  // FUZZY_MATRIX_HPP
