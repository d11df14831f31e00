#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "crepant/scalars.hpp"

namespace crepant {

/// Minimal dense matrix over an exact field (Rational, GaussRational) or
/// ring (Int). Just what the solvers here need.
template <typename T>
class Mat {
public:
    Mat() = default;
    Mat(size_t rows, size_t cols, T init = T{})
        : rows_(rows), cols_(cols), data_(rows * cols, init) {}

    static Mat identity(size_t n) {
        Mat m(n, n);
        for (size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }

    T& operator()(size_t r, size_t c) { return data_[r * cols_ + c]; }
    const T& operator()(size_t r, size_t c) const { return data_[r * cols_ + c]; }

    friend bool operator==(const Mat& a, const Mat& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    void swap_rows(size_t a, size_t b) {
        if (a == b) return;
        for (size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
    }
    void swap_cols(size_t a, size_t b) {
        if (a == b) return;
        for (size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
    }

private:
    size_t rows_ = 0, cols_ = 0;
    std::vector<T> data_;
};

template <typename T>
Mat<T> mat_mul(const Mat<T>& a, const Mat<T>& b) {
    Mat<T> out(a.rows(), b.cols());
    for (size_t i = 0; i < a.rows(); ++i)
        for (size_t k = 0; k < a.cols(); ++k) {
            if (a(i, k) == T{}) continue;
            for (size_t j = 0; j < b.cols(); ++j) out(i, j) += a(i, k) * b(k, j);
        }
    return out;
}

template <typename T>
Mat<T> transpose(const Mat<T>& a) {
    Mat<T> out(a.cols(), a.rows());
    for (size_t i = 0; i < a.rows(); ++i)
        for (size_t j = 0; j < a.cols(); ++j) out(j, i) = a(i, j);
    return out;
}

inline Mat<GaussRational> conjugate_transpose(const Mat<GaussRational>& a) {
    Mat<GaussRational> out(a.cols(), a.rows());
    for (size_t i = 0; i < a.rows(); ++i)
        for (size_t j = 0; j < a.cols(); ++j) out(j, i) = conjugate(a(i, j));
    return out;
}

/// Exact determinant by fraction-producing Gaussian elimination.
template <typename T>
T determinant(Mat<T> a) {
    const size_t n = a.rows();
    T det(1);
    for (size_t col = 0; col < n; ++col) {
        size_t pivot = col;
        while (pivot < n && a(pivot, col) == T{}) ++pivot;
        if (pivot == n) return T{};
        if (pivot != col) {
            a.swap_rows(pivot, col);
            det = -det;
        }
        det *= a(col, col);
        for (size_t i = col + 1; i < n; ++i) {
            if (a(i, col) == T{}) continue;
            T f = a(i, col) / a(col, col);
            for (size_t j = col; j < n; ++j) a(i, j) -= f * a(col, j);
        }
    }
    return det;
}

/// Exact inverse; nullopt when singular.
template <typename T>
std::optional<Mat<T>> invert(Mat<T> a) {
    const size_t n = a.rows();
    Mat<T> inv = Mat<T>::identity(n);
    for (size_t col = 0; col < n; ++col) {
        size_t pivot = col;
        while (pivot < n && a(pivot, col) == T{}) ++pivot;
        if (pivot == n) return std::nullopt;
        a.swap_rows(pivot, col);
        inv.swap_rows(pivot, col);
        T d = a(col, col);
        for (size_t j = 0; j < n; ++j) {
            a(col, j) /= d;
            inv(col, j) /= d;
        }
        for (size_t i = 0; i < n; ++i) {
            if (i == col || a(i, col) == T{}) continue;
            T f = a(i, col);
            for (size_t j = 0; j < n; ++j) {
                a(i, j) -= f * a(col, j);
                inv(i, j) -= f * inv(col, j);
            }
        }
    }
    return inv;
}

template <typename T>
std::vector<T> mat_vec(const Mat<T>& a, const std::vector<T>& v) {
    std::vector<T> out(a.rows(), T{});
    for (size_t i = 0; i < a.rows(); ++i)
        for (size_t j = 0; j < a.cols(); ++j)
            if (!(a(i, j) == T{})) out[i] += a(i, j) * v[j];
    return out;
}

/// Determinant of the leading k x k block.
template <typename T>
T leading_minor(const Mat<T>& a, size_t k) {
    Mat<T> sub(k, k);
    for (size_t i = 0; i < k; ++i)
        for (size_t j = 0; j < k; ++j) sub(i, j) = a(i, j);
    return determinant(sub);
}

struct Signature {
    size_t positive = 0;
    size_t negative = 0;
    size_t zero = 0;

    friend bool operator==(const Signature&, const Signature&) = default;
};

/// Inertia of a symmetric rational matrix by exact congruence
/// diagonalization (Sylvester's law makes the counts basis independent).
inline Signature signature_of_symmetric(Mat<Rational> a) {
    const size_t n = a.rows();
    for (size_t k = 0; k < n; ++k) {
        if (a(k, k) == 0) {
            size_t j = k + 1;
            while (j < n && a(j, j) == 0) ++j;
            if (j < n) {
                a.swap_rows(k, j);
                a.swap_cols(k, j);
            } else {
                // no nonzero diagonal left; borrow an off-diagonal entry
                j = k + 1;
                while (j < n && a(k, j) == 0) ++j;
                if (j == n) continue; // row already clear, diagonal entry stays 0
                for (size_t c = 0; c < n; ++c) a(k, c) += a(j, c);
                for (size_t r = 0; r < n; ++r) a(r, k) += a(r, j);
            }
        }
        Rational d = a(k, k);
        for (size_t i = k + 1; i < n; ++i) {
            if (a(i, k) == 0) continue;
            Rational f = a(i, k) / d;
            for (size_t c = 0; c < n; ++c) a(i, c) -= f * a(k, c);
            for (size_t r = 0; r < n; ++r) a(r, i) -= f * a(r, k);
        }
    }
    Signature sig;
    for (size_t k = 0; k < n; ++k) {
        if (a(k, k) > 0)
            ++sig.positive;
        else if (a(k, k) < 0)
            ++sig.negative;
        else
            ++sig.zero;
    }
    return sig;
}

} // namespace crepant
