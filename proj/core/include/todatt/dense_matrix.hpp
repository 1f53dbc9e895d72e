#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <utility>
#include <vector>

namespace todatt {

using Complex = std::complex<double>;

/// Per-scalar operations the frame algebra needs. Specialized for
/// std::complex<double> here and for Cyclotomic in cyclotomic.hpp.
template <typename F>
struct FieldTraits;

template <>
struct FieldTraits<Complex> {
    static constexpr bool exact = false;
    static Complex from_int(long long v) { return Complex(static_cast<double>(v), 0.0); }
    static Complex conj(const Complex& z) { return std::conj(z); }
    static double magnitude(const Complex& z) { return std::abs(z); }
    static bool is_zero(const Complex& z, double tol) { return std::abs(z) <= tol; }
};

/// Row-major dense matrix over a field. Small sizes only (rank n+1 <= ~16);
/// every operation is the textbook O(n^3) one.
template <typename F>
class DenseMatrix {
public:
    using Traits = FieldTraits<F>;

    DenseMatrix() = default;
    DenseMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, Traits::from_int(0)) {}
    DenseMatrix(std::size_t rows, std::size_t cols, const F& fill)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
    DenseMatrix(std::initializer_list<std::initializer_list<F>> init) {
        rows_ = init.size();
        cols_ = rows_ == 0 ? 0 : init.begin()->size();
        data_.reserve(rows_ * cols_);
        for (const auto& row : init) {
            if (row.size() != cols_) throw std::invalid_argument("ragged matrix initializer");
            data_.insert(data_.end(), row.begin(), row.end());
        }
    }

    static DenseMatrix identity(std::size_t n) {
        DenseMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = Traits::from_int(1);
        return m;
    }

    static DenseMatrix diagonal(const std::vector<F>& d) {
        DenseMatrix m(d.size(), d.size());
        for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    F& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const F& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    DenseMatrix transpose() const {
        DenseMatrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    DenseMatrix conjugate() const {
        DenseMatrix c(rows_, cols_);
        for (std::size_t k = 0; k < data_.size(); ++k) c.data_[k] = Traits::conj(data_[k]);
        return c;
    }

    DenseMatrix adjoint() const { return conjugate().transpose(); }

    DenseMatrix& operator+=(const DenseMatrix& o) {
        check_same_shape(o);
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
        return *this;
    }
    DenseMatrix& operator-=(const DenseMatrix& o) {
        check_same_shape(o);
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
        return *this;
    }
    DenseMatrix& operator*=(const F& s) {
        for (auto& v : data_) v *= s;
        return *this;
    }

    friend DenseMatrix operator+(DenseMatrix a, const DenseMatrix& b) { return a += b; }
    friend DenseMatrix operator-(DenseMatrix a, const DenseMatrix& b) { return a -= b; }
    friend DenseMatrix operator*(DenseMatrix a, const F& s) { return a *= s; }
    friend DenseMatrix operator*(const F& s, DenseMatrix a) { return a *= s; }

    friend DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
        if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product: dimension mismatch");
        DenseMatrix r(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const F& aik = a(i, k);
                if (Traits::is_zero(aik, 0.0)) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) r(i, j) += aik * b(k, j);
            }
        return r;
    }

    friend std::vector<F> operator*(const DenseMatrix& a, const std::vector<F>& v) {
        if (a.cols_ != v.size()) throw std::invalid_argument("matrix-vector product: dimension mismatch");
        std::vector<F> r(a.rows_, Traits::from_int(0));
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t j = 0; j < a.cols_; ++j) r[i] += a(i, j) * v[j];
        return r;
    }

    friend bool operator==(const DenseMatrix& a, const DenseMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    DenseMatrix pow(unsigned k) const {
        if (!square()) throw std::invalid_argument("matrix power of a non-square matrix");
        DenseMatrix result = identity(rows_);
        DenseMatrix base = *this;
        while (k > 0) {
            if (k & 1u) result = result * base;
            base = base * base;
            k >>= 1u;
        }
        return result;
    }

    /// Gauss-Jordan elimination. Pivots on the largest magnitude in floating
    /// point and on the first nonzero entry in exact arithmetic.
    /// Throws std::domain_error when the matrix is singular (pivot <= tol).
    DenseMatrix inverse(double tol = 0.0) const {
        if (!square()) throw std::invalid_argument("inverse of a non-square matrix");
        const std::size_t n = rows_;
        DenseMatrix a = *this;
        DenseMatrix inv = identity(n);
        for (std::size_t col = 0; col < n; ++col) {
            std::size_t pivot = n;
            double best = -1.0;
            for (std::size_t r = col; r < n; ++r) {
                if (Traits::is_zero(a(r, col), tol)) continue;
                if constexpr (Traits::exact) {
                    pivot = r;
                    break;
                } else {
                    const double mag = Traits::magnitude(a(r, col));
                    if (mag > best) {
                        best = mag;
                        pivot = r;
                    }
                }
            }
            if (pivot == n) throw std::domain_error("singular matrix");
            if (pivot != col) {
                a.swap_rows(pivot, col);
                inv.swap_rows(pivot, col);
            }
            const F scale = Traits::from_int(1) / a(col, col);
            for (std::size_t j = 0; j < n; ++j) {
                a(col, j) *= scale;
                inv(col, j) *= scale;
            }
            for (std::size_t r = 0; r < n; ++r) {
                if (r == col) continue;
                const F factor = a(r, col);
                if (Traits::is_zero(factor, 0.0)) continue;
                for (std::size_t j = 0; j < n; ++j) {
                    a(r, j) -= factor * a(col, j);
                    inv(r, j) -= factor * inv(col, j);
                }
            }
        }
        return inv;
    }

    /// Largest entry magnitude.
    double max_abs() const {
        double m = 0.0;
        for (const auto& v : data_) m = std::max(m, Traits::magnitude(v));
        return m;
    }

    bool is_diagonal(double tol) const {
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                if (i != j && !Traits::is_zero((*this)(i, j), tol)) return false;
        return true;
    }

    void swap_rows(std::size_t a, std::size_t b) {
        for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
    }

private:
    void check_same_shape(const DenseMatrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix shapes differ");
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<F> data_;
};

using ComplexMatrix = DenseMatrix<Complex>;

/// max|a-b| / max(1, max|a|, max|b|). Used for every floating-point identity
/// check so that tolerances do not depend on the scale of e^{w}.
inline double relative_residual(const ComplexMatrix& a, const ComplexMatrix& b) {
    const ComplexMatrix d = a - b;
    const double scale = std::max({1.0, a.max_abs(), b.max_abs()});
    return d.max_abs() / scale;
}

/// Exact equality for exact fields, relative residual <= tol otherwise.
template <typename F>
bool matrices_agree(const DenseMatrix<F>& a, const DenseMatrix<F>& b, double tol) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    if constexpr (FieldTraits<F>::exact) {
        return a == b;
    } else {
        return relative_residual(a, b) <= tol;
    }
}

}  // namespace todatt
