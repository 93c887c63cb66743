#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <utility>
#include <vector>

namespace projbound {

using Complex = std::complex<double>;

/// Dense complex matrix with row-major storage; the value type every other
/// component works with. Dimensions are at least 1x1 and entries must be
/// finite on construction.
class ComplexMatrix {
public:
    ComplexMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(check_shape(rows, cols), Complex(0.0, 0.0)) {}

    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
        : rows_(rows), cols_(cols), data_(std::move(entries)) {
        if (data_.size() != check_shape(rows, cols))
            throw std::invalid_argument("ComplexMatrix: entry count does not equal rows*cols");
        ensure_finite();
    }

    /// Row-major nested braces, e.g. ComplexMatrix{{1, 0}, {0, 1}}.
    ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows)
        : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
        check_shape(rows_, cols_);
        data_.reserve(rows_ * cols_);
        for (const auto& r : rows) {
            if (r.size() != cols_)
                throw std::invalid_argument("ComplexMatrix: ragged initializer");
            data_.insert(data_.end(), r.begin(), r.end());
        }
        ensure_finite();
    }

    static ComplexMatrix zero(std::size_t rows, std::size_t cols) { return ComplexMatrix(rows, cols); }

    static ComplexMatrix identity(std::size_t n) {
        ComplexMatrix eye(n, n);
        for (std::size_t i = 0; i < n; ++i) eye(i, i) = 1.0;
        return eye;
    }

    /// Square matrix with the given real diagonal.
    static ComplexMatrix diagonal(const std::vector<double>& d) {
        ComplexMatrix m(d.size(), d.size());
        for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Complex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Complex& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    const std::vector<Complex>& entries() const { return data_; }

    bool same_shape(const ComplexMatrix& other) const {
        return rows_ == other.rows_ && cols_ == other.cols_;
    }

    bool is_finite() const {
        for (const Complex& z : data_)
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
        return true;
    }

private:
    static std::size_t check_shape(std::size_t rows, std::size_t cols) {
        if (rows == 0 || cols == 0)
            throw std::invalid_argument("ComplexMatrix: dimensions must be positive");
        return rows * cols;
    }

    void ensure_finite() const {
        if (!is_finite())
            throw std::invalid_argument("ComplexMatrix: entries must be finite");
    }

    std::size_t rows_;
    std::size_t cols_;
    std::vector<Complex> data_;
};

inline ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (!a.same_shape(b)) throw std::invalid_argument("matrix add: shape mismatch");
    ComplexMatrix c = a;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) += b(i, j);
    return c;
}

inline ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (!a.same_shape(b)) throw std::invalid_argument("matrix subtract: shape mismatch");
    ComplexMatrix c = a;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) -= b(i, j);
    return c;
}

inline ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("matrix multiply: inner dimension mismatch");
    ComplexMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Complex aik = a(i, k);
            if (aik == Complex(0.0, 0.0)) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

inline ComplexMatrix operator*(Complex s, const ComplexMatrix& a) {
    ComplexMatrix c = a;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) *= s;
    return c;
}

inline ComplexMatrix operator*(double s, const ComplexMatrix& a) { return Complex(s, 0.0) * a; }

/// Conjugate transpose.
inline ComplexMatrix adjoint(const ComplexMatrix& a) {
    ComplexMatrix c(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c(j, i) = std::conj(a(i, j));
    return c;
}

/// Columns [lo, hi) as a new matrix; the range must be non-empty.
inline ComplexMatrix columns(const ComplexMatrix& a, std::size_t lo, std::size_t hi) {
    if (lo >= hi || hi > a.cols()) throw std::invalid_argument("columns: bad range");
    ComplexMatrix c(a.rows(), hi - lo);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = lo; j < hi; ++j) c(i, j - lo) = a(i, j);
    return c;
}

/// Sum of squared entry magnitudes, compensated (Neumaier) so the summation
/// error stays at rounding level even when entries span many magnitudes.
inline double frobenius_norm_sq(const ComplexMatrix& a) {
    double sum = 0.0, comp = 0.0;
    for (const Complex& z : a.entries()) {
        const double term = std::norm(z);
        const double t = sum + term;
        comp += std::abs(sum) >= std::abs(term) ? (sum - t) + term : (term - t) + sum;
        sum = t;
    }
    return sum + comp;
}

inline double frobenius_norm(const ComplexMatrix& a) { return std::sqrt(frobenius_norm_sq(a)); }

inline Complex trace(const ComplexMatrix& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("trace: matrix is not square");
    Complex t(0.0, 0.0);
    for (std::size_t i = 0; i < a.rows(); ++i) t += a(i, i);
    return t;
}

inline double max_abs_entry(const ComplexMatrix& a) {
    double m = 0.0;
    for (const Complex& z : a.entries()) m = std::max(m, std::abs(z));
    return m;
}

/// || X[:, xlo:xhi]^* . Y[:, ylo:yhi] ||_F^2 without forming the blocks.
/// Either column range may be empty, in which case the result is 0. Used for
/// the SVD block expressions where U2 or V2 can have zero columns.
inline double adjoint_block_product_norm_sq(const ComplexMatrix& x, std::size_t xlo, std::size_t xhi,
                                            const ComplexMatrix& y, std::size_t ylo, std::size_t yhi) {
    if (x.rows() != y.rows()) throw std::invalid_argument("adjoint_block_product_norm_sq: row mismatch");
    if (xhi > x.cols() || yhi > y.cols()) throw std::invalid_argument("adjoint_block_product_norm_sq: bad range");
    double s = 0.0;
    for (std::size_t p = xlo; p < xhi; ++p)
        for (std::size_t q = ylo; q < yhi; ++q) {
            Complex dot(0.0, 0.0);
            for (std::size_t i = 0; i < x.rows(); ++i) dot += std::conj(x(i, p)) * y(i, q);
            s += std::norm(dot);
        }
    return s;
}

}  // namespace projbound
