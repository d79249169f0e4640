#pragma once

// Dense constant matrices over a pluggable scalar ring, plus the exact
// elimination kernels (rank, RREF, linear solves, nullspace) used by the
// certification and recovery machinery. Exact kernels require the rational
// backend; float matrices only use the arithmetic part.

#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ellify/rational.hpp"

namespace ellify {

template <typename T>
class Matrix {
public:
    using scalar_type = T;

    Matrix() : rows_(0), cols_(0) {}
    Matrix(std::size_t r, std::size_t c) : rows_(r), cols_(c), data_(r * c) {}
    Matrix(std::initializer_list<std::initializer_list<T>> rows) {
        rows_ = rows.size();
        cols_ = rows_ == 0 ? 0 : rows.begin()->size();
        data_.reserve(rows_ * cols_);
        for (const auto& row : rows) {
            if (row.size() != cols_) throw std::invalid_argument("matrix: ragged initializer");
            for (const auto& x : row) data_.push_back(x);
        }
    }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    bool is_zero() const {
        for (const auto& x : data_)
            if (!(x == T(0))) return false;
        return true;
    }

    Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    // A ⊗ I_p: every scalar entry a becomes the p×p block a·I_p.
    Matrix kron_identity(std::size_t p) const {
        Matrix k(rows_ * p, cols_ * p);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                for (std::size_t a = 0; a < p; ++a) k(i * p + a, j * p + a) = (*this)(i, j);
        return k;
    }

    void set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
        if (r0 + b.rows() > rows_ || c0 + b.cols() > cols_)
            throw std::invalid_argument("matrix: block out of range");
        for (std::size_t i = 0; i < b.rows(); ++i)
            for (std::size_t j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
    }

    Matrix block(std::size_t r0, std::size_t c0, std::size_t r, std::size_t c) const {
        if (r0 + r > rows_ || c0 + c > cols_) throw std::invalid_argument("matrix: block out of range");
        Matrix b(r, c);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
        return b;
    }

    Matrix& operator+=(const Matrix& o) {
        check_same_shape(o);
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
        return *this;
    }
    Matrix& operator-=(const Matrix& o) {
        check_same_shape(o);
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
        return *this;
    }
    Matrix& operator*=(const T& s) {
        for (auto& x : data_) x *= s;
        return *this;
    }

    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
    friend Matrix operator-(const Matrix& a) {
        Matrix r(a.rows_, a.cols_);
        for (std::size_t k = 0; k < a.data_.size(); ++k) r.data_[k] = -a.data_[k];
        return r;
    }
    friend Matrix operator*(Matrix a, const T& s) { return a *= s; }
    friend Matrix operator*(const T& s, Matrix a) { return a *= s; }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_) throw std::invalid_argument("matrix: product dimension mismatch");
        Matrix r(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const T& aik = a(i, k);
                if (aik == T(0)) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) r(i, j) += aik * b(k, j);
            }
        return r;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }
    friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

private:
    void check_same_shape(const Matrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw std::invalid_argument("matrix: shape mismatch");
    }

    std::size_t rows_, cols_;
    std::vector<T> data_;
};

template <typename T>
Matrix<T> hstack(const Matrix<T>& a, const Matrix<T>& b) {
    if (a.rows() != b.rows()) throw std::invalid_argument("matrix: hstack row mismatch");
    Matrix<T> r(a.rows(), a.cols() + b.cols());
    r.set_block(0, 0, a);
    r.set_block(0, a.cols(), b);
    return r;
}

template <typename T>
Matrix<T> vstack(const Matrix<T>& a, const Matrix<T>& b) {
    if (a.cols() != b.cols()) throw std::invalid_argument("matrix: vstack col mismatch");
    Matrix<T> r(a.rows() + b.rows(), a.cols());
    r.set_block(0, 0, a);
    r.set_block(a.rows(), 0, b);
    return r;
}

inline double frobenius_norm(const Matrix<double>& m) {
    double s = 0;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) s += m(i, j) * m(i, j);
    return std::sqrt(s);
}

inline double frobenius_norm(const Matrix<std::complex<double>>& m) {
    double s = 0;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) s += std::norm(m(i, j));
    return std::sqrt(s);
}

// ---------------------------------------------------------------------------
// Exact elimination kernels (rational backend only).
// ---------------------------------------------------------------------------

// Reduced row echelon form; pivot column indices are appended to *pivots.
inline Matrix<Rational> rref(Matrix<Rational> a, std::vector<std::size_t>* pivots = nullptr) {
    std::size_t lead = 0;
    for (std::size_t r = 0; r < a.rows() && lead < a.cols(); ++r) {
        std::size_t i = r;
        while (i < a.rows() && a(i, lead).is_zero()) ++i;
        while (i == a.rows()) {
            ++lead;
            if (lead == a.cols()) return a;
            i = r;
            while (i < a.rows() && a(i, lead).is_zero()) ++i;
        }
        if (i != r)
            for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(i, j), a(r, j));
        Rational inv = Rational(1) / a(r, lead);
        for (std::size_t j = lead; j < a.cols(); ++j) a(r, j) *= inv;
        for (std::size_t k = 0; k < a.rows(); ++k) {
            if (k == r || a(k, lead).is_zero()) continue;
            Rational f = a(k, lead);
            for (std::size_t j = lead; j < a.cols(); ++j) a(k, j) -= f * a(r, j);
        }
        if (pivots) pivots->push_back(lead);
        ++lead;
    }
    return a;
}

inline std::size_t rank(const Matrix<Rational>& a) {
    std::vector<std::size_t> pivots;
    rref(a, &pivots);
    return pivots.size();
}

// Any exact solution of A X = B with the free variables set to zero;
// std::nullopt when the system is inconsistent.
inline std::optional<Matrix<Rational>> solve_particular(const Matrix<Rational>& a,
                                                        const Matrix<Rational>& b) {
    if (a.rows() != b.rows()) throw std::invalid_argument("solve: rhs row mismatch");
    Matrix<Rational> aug = hstack(a, b);
    std::vector<std::size_t> pivots;
    Matrix<Rational> r = rref(std::move(aug), &pivots);
    for (std::size_t p : pivots)
        if (p >= a.cols()) return std::nullopt;  // pivot in rhs block: inconsistent
    Matrix<Rational> x(a.cols(), b.cols());
    for (std::size_t k = 0; k < pivots.size(); ++k)
        for (std::size_t j = 0; j < b.cols(); ++j) x(pivots[k], j) = r(k, a.cols() + j);
    return x;
}

// Unique solve for square nonsingular A; throws otherwise.
inline Matrix<Rational> solve_nonsingular(const Matrix<Rational>& a, const Matrix<Rational>& b,
                                          const char* what = "solve: singular matrix") {
    if (a.rows() != a.cols()) throw std::invalid_argument("solve: matrix not square");
    std::vector<std::size_t> pivots;
    Matrix<Rational> r = rref(hstack(a, b), &pivots);
    if (pivots.size() != a.rows()) throw std::runtime_error(what);
    return r.block(0, a.cols(), a.cols(), b.cols());
}

// Columns form a basis of the right nullspace of A.
inline Matrix<Rational> nullspace_basis(const Matrix<Rational>& a) {
    std::vector<std::size_t> pivots;
    Matrix<Rational> r = rref(a, &pivots);
    std::vector<bool> is_pivot(a.cols(), false);
    for (std::size_t p : pivots) is_pivot[p] = true;
    std::size_t nfree = a.cols() - pivots.size();
    Matrix<Rational> ns(a.cols(), nfree);
    std::size_t col = 0;
    for (std::size_t f = 0; f < a.cols(); ++f) {
        if (is_pivot[f]) continue;
        ns(f, col) = Rational(1);
        for (std::size_t k = 0; k < pivots.size(); ++k) ns(pivots[k], col) = -r(k, f);
        ++col;
    }
    return ns;
}

inline Rational det(Matrix<Rational> a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("det: matrix not square");
    Rational d(1);
    for (std::size_t c = 0; c < a.cols(); ++c) {
        std::size_t piv = c;
        while (piv < a.rows() && a(piv, c).is_zero()) ++piv;
        if (piv == a.rows()) return Rational(0);
        if (piv != c) {
            for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(piv, j), a(c, j));
            d = -d;
        }
        d *= a(c, c);
        Rational inv = Rational(1) / a(c, c);
        for (std::size_t i = c + 1; i < a.rows(); ++i) {
            if (a(i, c).is_zero()) continue;
            Rational f = a(i, c) * inv;
            for (std::size_t j = c; j < a.cols(); ++j) a(i, j) -= f * a(c, j);
        }
    }
    return d;
}

// ---------------------------------------------------------------------------
// Scalar conversions.
// ---------------------------------------------------------------------------

inline Matrix<double> to_f64(const Matrix<Rational>& m) {
    Matrix<double> r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = m(i, j).to_double();
    return r;
}

inline Matrix<std::complex<double>> complexify(const Matrix<double>& m) {
    Matrix<std::complex<double>> r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = m(i, j);
    return r;
}

}  // namespace ellify
