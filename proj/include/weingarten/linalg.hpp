#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "rational_function.hpp"

namespace weingarten {

/// Dense row-major square-or-rectangular matrix.
template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, const T& fill = T{}) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
    }

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<T> data_;
};

/// Solves A X = B over the field of rational functions in d for square A
/// with polynomial entries, using fraction-free (Bareiss) elimination on
/// the augmented matrix followed by back substitution. Throws if A is
/// singular as a matrix over Q(d).
inline Matrix<RationalFunction> bareiss_solve(const Matrix<Poly>& a, const Matrix<Poly>& b) {
    const std::size_t n = a.rows();
    if (a.cols() != n || b.rows() != n) throw error("bareiss_solve: shape mismatch");
    const std::size_t m = b.cols();
    Matrix<Poly> aug(n, n + m);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) aug(r, c) = a(r, c);
        for (std::size_t c = 0; c < m; ++c) aug(r, n + c) = b(r, c);
    }
    Poly prev = 1;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        while (piv < n && aug(piv, k).is_zero()) ++piv;
        if (piv == n) throw error("bareiss_solve: singular matrix");
        aug.swap_rows(piv, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n + m; ++j)
                aug(i, j) = exact_div(aug(k, k) * aug(i, j) - aug(i, k) * aug(k, j), prev);
            aug(i, k) = Poly{};
        }
        prev = aug(k, k);
    }
    Matrix<RationalFunction> x(n, m);
    for (std::size_t c = 0; c < m; ++c)
        for (std::size_t k = n; k-- > 0;) {
            RationalFunction acc = aug(k, n + c);
            for (std::size_t j = k + 1; j < n; ++j)
                if (!aug(k, j).is_zero()) acc -= RationalFunction(aug(k, j)) * x(j, c);
            x(k, c) = acc / RationalFunction(aug(k, k));
        }
    return x;
}

/// Inverse over Q(d) of a square polynomial matrix.
inline Matrix<RationalFunction> bareiss_inverse(const Matrix<Poly>& a) {
    Matrix<Poly> id(a.rows(), a.rows());
    for (std::size_t k = 0; k < a.rows(); ++k) id(k, k) = 1;
    return bareiss_solve(a, id);
}

/// Rank of an exact rational matrix.
inline std::size_t rank(Matrix<BigRat> a) {
    std::size_t r = 0;
    for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
        std::size_t piv = r;
        while (piv < a.rows() && a(piv, c) == 0) ++piv;
        if (piv == a.rows()) continue;
        a.swap_rows(piv, r);
        for (std::size_t i = r + 1; i < a.rows(); ++i) {
            if (a(i, c) == 0) continue;
            const BigRat f = a(i, c) / a(r, c);
            for (std::size_t j = c; j < a.cols(); ++j) a(i, j) -= f * a(r, j);
        }
        ++r;
    }
    return r;
}

template <class T>
Matrix<T> operator*(const Matrix<T>& a, const Matrix<T>& b) {
    if (a.cols() != b.rows()) throw error("matrix product shape mismatch");
    Matrix<T> r(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            if (a(i, k) == T{}) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) r(i, j) += a(i, k) * b(k, j);
        }
    return r;
}

} // namespace weingarten
