#pragma once

// Matrix polynomials with an explicit grade. The grade is stored state and
// never inferred from trailing zeros: the strong ell-ification statements
// depend on the declared grade, not the degree.

#include <complex>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "ellify/matrix.hpp"
#include "ellify/poly.hpp"
#include "ellify/rational.hpp"

namespace ellify {

template <typename T>
class MatrixPoly {
public:
    using scalar_type = T;

    MatrixPoly() : rows_(0), cols_(0), coeffs_(1, Matrix<T>(0, 0)) {}

    // Zero polynomial of the given shape and grade.
    MatrixPoly(std::size_t rows, std::size_t cols, std::size_t grade)
        : rows_(rows), cols_(cols), coeffs_(grade + 1, Matrix<T>(rows, cols)) {}

    explicit MatrixPoly(std::vector<Matrix<T>> coeffs) : coeffs_(std::move(coeffs)) {
        if (coeffs_.empty()) throw std::invalid_argument("polycore: empty coefficient list");
        rows_ = coeffs_[0].rows();
        cols_ = coeffs_[0].cols();
        for (const auto& c : coeffs_)
            if (c.rows() != rows_ || c.cols() != cols_)
                throw std::invalid_argument("polycore: coefficient shape mismatch");
    }

    static MatrixPoly constant(Matrix<T> m) { return MatrixPoly(std::vector<Matrix<T>>{std::move(m)}); }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t grade() const { return coeffs_.size() - 1; }

    const Matrix<T>& coeff(std::size_t i) const { return coeffs_[i]; }
    Matrix<T>& coeff(std::size_t i) { return coeffs_[i]; }

    // Coefficient of lambda^i, zero matrix beyond the grade.
    Matrix<T> coeff_or_zero(std::size_t i) const {
        return i < coeffs_.size() ? coeffs_[i] : Matrix<T>(rows_, cols_);
    }

    bool is_zero() const {
        for (const auto& c : coeffs_)
            if (!c.is_zero()) return false;
        return true;
    }

    // Largest index of a nonzero coefficient; nullopt is the zero-polynomial
    // sentinel (distinct from every numeric degree by design).
    std::optional<std::size_t> degree() const {
        for (std::size_t i = coeffs_.size(); i-- > 0;)
            if (!coeffs_[i].is_zero()) return i;
        return std::nullopt;
    }

    Matrix<T> evaluate(const T& x) const {
        Matrix<T> acc = coeffs_.back();
        for (std::size_t i = coeffs_.size() - 1; i-- > 0;) {
            acc *= x;
            acc += coeffs_[i];
        }
        return acc;
    }

    // rev_d P(lambda) = lambda^d P(1/lambda); requires d >= degree.
    MatrixPoly reversal(std::size_t d) const {
        auto deg = degree();
        if (deg && *deg > d) throw std::invalid_argument("polycore: reversal grade below degree");
        std::vector<Matrix<T>> c(d + 1, Matrix<T>(rows_, cols_));
        for (std::size_t i = 0; i <= d; ++i) c[i] = coeff_or_zero(d - i);
        return MatrixPoly(std::move(c));
    }

    // Q(lambda^l); grade becomes l * grade(Q).
    MatrixPoly substitute_power(std::size_t l) const {
        if (l < 1) throw std::invalid_argument("polycore: substitute_power needs l >= 1");
        std::vector<Matrix<T>> c(l * grade() + 1, Matrix<T>(rows_, cols_));
        for (std::size_t i = 0; i < coeffs_.size(); ++i) c[i * l] = coeffs_[i];
        return MatrixPoly(std::move(c));
    }

    MatrixPoly transpose() const {
        std::vector<Matrix<T>> c;
        c.reserve(coeffs_.size());
        for (const auto& m : coeffs_) c.push_back(m.transpose());
        return MatrixPoly(std::move(c));
    }

    // Entrywise e(lambda) -> e(lambda) * I_p.
    MatrixPoly kron_identity_right(std::size_t p) const {
        std::vector<Matrix<T>> c;
        c.reserve(coeffs_.size());
        for (const auto& m : coeffs_) c.push_back(m.kron_identity(p));
        return MatrixPoly(std::move(c));
    }

    // Re-declare the grade. Padding is always allowed; shrinking requires the
    // dropped coefficients to be zero.
    MatrixPoly with_grade(std::size_t g) const {
        std::vector<Matrix<T>> c(g + 1, Matrix<T>(rows_, cols_));
        for (std::size_t i = 0; i < coeffs_.size(); ++i) {
            if (i <= g) {
                c[i] = coeffs_[i];
            } else if (!coeffs_[i].is_zero()) {
                throw std::invalid_argument("polycore: grade truncation drops nonzero coefficient");
            }
        }
        return MatrixPoly(std::move(c));
    }

    // Grade reduced to the degree (zero polynomials keep grade 0).
    MatrixPoly trimmed() const { return with_grade(degree().value_or(0)); }

    // Multiplication by lambda^k.
    MatrixPoly shift(std::size_t k) const {
        std::vector<Matrix<T>> c(grade() + k + 1, Matrix<T>(rows_, cols_));
        for (std::size_t i = 0; i < coeffs_.size(); ++i) c[i + k] = coeffs_[i];
        return MatrixPoly(std::move(c));
    }

    std::vector<std::size_t> row_degrees() const {
        std::vector<std::size_t> deg(rows_);
        for (std::size_t i = 0; i < rows_; ++i) {
            bool found = false;
            for (std::size_t k = coeffs_.size(); k-- > 0 && !found;) {
                for (std::size_t j = 0; j < cols_; ++j)
                    if (!(coeffs_[k](i, j) == T(0))) {
                        deg[i] = k;
                        found = true;
                        break;
                    }
            }
            if (!found) throw std::invalid_argument("polycore: zero row has no row degree");
        }
        return deg;
    }

    // Row j of the result is the coefficient of lambda^(d_j) in row j.
    Matrix<T> highest_row_degree_matrix() const {
        std::vector<std::size_t> deg = row_degrees();
        Matrix<T> h(rows_, cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) h(i, j) = coeffs_[deg[i]](i, j);
        return h;
    }

    Poly<T> entry(std::size_t i, std::size_t j) const {
        std::vector<T> c(coeffs_.size());
        for (std::size_t k = 0; k < coeffs_.size(); ++k) c[k] = coeffs_[k](i, j);
        return Poly<T>(std::move(c));
    }

    Matrix<Poly<T>> to_poly_matrix() const {
        Matrix<Poly<T>> m(rows_, cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) m(i, j) = entry(i, j);
        return m;
    }

    MatrixPoly& operator+=(const MatrixPoly& o) { return *this = *this + o; }
    MatrixPoly& operator-=(const MatrixPoly& o) { return *this = *this - o; }
    MatrixPoly& operator*=(const T& s) {
        for (auto& c : coeffs_) c *= s;
        return *this;
    }

    friend MatrixPoly operator+(const MatrixPoly& a, const MatrixPoly& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
            throw std::invalid_argument("polycore: add shape mismatch");
        std::size_t g = std::max(a.grade(), b.grade());
        MatrixPoly r(a.rows_, a.cols_, g);
        for (std::size_t i = 0; i <= g; ++i) r.coeffs_[i] = a.coeff_or_zero(i) + b.coeff_or_zero(i);
        return r;
    }
    friend MatrixPoly operator-(const MatrixPoly& a, const MatrixPoly& b) {
        return a + (-b);
    }
    friend MatrixPoly operator-(const MatrixPoly& a) {
        MatrixPoly r = a;
        for (auto& c : r.coeffs_) c = -c;
        return r;
    }
    friend MatrixPoly operator*(MatrixPoly a, const T& s) { return a *= s; }
    friend MatrixPoly operator*(const T& s, MatrixPoly a) { return a *= s; }

    // Product grade is grade(a) + grade(b) always, even when leading
    // coefficients vanish.
    friend MatrixPoly operator*(const MatrixPoly& a, const MatrixPoly& b) {
        if (a.cols_ != b.rows_) throw std::invalid_argument("polycore: product dimension mismatch");
        MatrixPoly r(a.rows_, b.cols_, a.grade() + b.grade());
        for (std::size_t i = 0; i <= a.grade(); ++i) {
            if (a.coeffs_[i].is_zero()) continue;
            for (std::size_t j = 0; j <= b.grade(); ++j) {
                if (b.coeffs_[j].is_zero()) continue;
                r.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
            }
        }
        return r;
    }

    // Mathematical equality: shapes agree and coefficients agree once padded
    // to a common grade. Grade bookkeeping is checked separately where it
    // matters.
    friend bool operator==(const MatrixPoly& a, const MatrixPoly& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
        std::size_t g = std::max(a.grade(), b.grade());
        for (std::size_t i = 0; i <= g; ++i)
            if (!(a.coeff_or_zero(i) == b.coeff_or_zero(i))) return false;
        return true;
    }
    friend bool operator!=(const MatrixPoly& a, const MatrixPoly& b) { return !(a == b); }

private:
    std::size_t rows_, cols_;
    std::vector<Matrix<T>> coeffs_;
};

template <typename T>
MatrixPoly<T> identity_poly(std::size_t n) {
    return MatrixPoly<T>::constant(Matrix<T>::identity(n));
}

template <typename T>
MatrixPoly<T> hstack(const MatrixPoly<T>& a, const MatrixPoly<T>& b) {
    if (a.rows() != b.rows()) throw std::invalid_argument("polycore: hstack row mismatch");
    std::size_t g = std::max(a.grade(), b.grade());
    MatrixPoly<T> r(a.rows(), a.cols() + b.cols(), g);
    for (std::size_t i = 0; i <= g; ++i) {
        r.coeff(i).set_block(0, 0, a.coeff_or_zero(i));
        r.coeff(i).set_block(0, a.cols(), b.coeff_or_zero(i));
    }
    return r;
}

template <typename T>
MatrixPoly<T> vstack(const MatrixPoly<T>& a, const MatrixPoly<T>& b) {
    if (a.cols() != b.cols()) throw std::invalid_argument("polycore: vstack col mismatch");
    std::size_t g = std::max(a.grade(), b.grade());
    MatrixPoly<T> r(a.rows() + b.rows(), a.cols(), g);
    for (std::size_t i = 0; i <= g; ++i) {
        r.coeff(i).set_block(0, 0, a.coeff_or_zero(i));
        r.coeff(i).set_block(a.rows(), 0, b.coeff_or_zero(i));
    }
    return r;
}

// Writes src into dst at block position (r0, c0), coefficient by coefficient.
template <typename T>
void set_poly_block(MatrixPoly<T>& dst, std::size_t r0, std::size_t c0, const MatrixPoly<T>& src) {
    if (src.grade() > dst.grade() && src.degree() && *src.degree() > dst.grade())
        throw std::invalid_argument("polycore: block grade exceeds destination grade");
    for (std::size_t i = 0; i <= std::min(src.grade(), dst.grade()); ++i)
        dst.coeff(i).set_block(r0, c0, src.coeff(i));
}

template <typename T>
MatrixPoly<T> sub_rows(const MatrixPoly<T>& p, std::size_t r0, std::size_t nrows) {
    MatrixPoly<T> r(nrows, p.cols(), p.grade());
    for (std::size_t i = 0; i <= p.grade(); ++i)
        r.coeff(i) = p.coeff(i).block(r0, 0, nrows, p.cols());
    return r;
}

template <typename T>
MatrixPoly<T> sub_cols(const MatrixPoly<T>& p, std::size_t c0, std::size_t ncols) {
    MatrixPoly<T> r(p.rows(), ncols, p.grade());
    for (std::size_t i = 0; i <= p.grade(); ++i)
        r.coeff(i) = p.coeff(i).block(0, c0, p.rows(), ncols);
    return r;
}

inline MatrixPoly<double> to_f64(const MatrixPoly<Rational>& p) {
    std::vector<Matrix<double>> c;
    c.reserve(p.grade() + 1);
    for (std::size_t i = 0; i <= p.grade(); ++i) c.push_back(to_f64(p.coeff(i)));
    return MatrixPoly<double>(std::move(c));
}

inline MatrixPoly<std::complex<double>> complexify(const MatrixPoly<double>& p) {
    std::vector<Matrix<std::complex<double>>> c;
    c.reserve(p.grade() + 1);
    for (std::size_t i = 0; i <= p.grade(); ++i) c.push_back(complexify(p.coeff(i)));
    return MatrixPoly<std::complex<double>>(std::move(c));
}

inline double coefficient_norm(const MatrixPoly<double>& p) {
    double s = 0;
    for (std::size_t i = 0; i <= p.grade(); ++i) {
        double f = frobenius_norm(p.coeff(i));
        s += f * f;
    }
    return std::sqrt(s);
}

}  // namespace ellify
