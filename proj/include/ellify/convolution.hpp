#pragma once

// Convolution (block Toeplitz) matrices of a matrix polynomial and the
// constructive solvers for N(lambda) B(lambda) = Q(lambda) and
// N2(lambda) M(lambda) N1(lambda)^T = P(lambda).
//
// The exact backend follows the two-stage elimination of the existence
// proof: an upper stage solved against the full-row-rank leading coefficient
// of N, then one square system against C_{k-1}(N), whose nonsingularity is
// asserted at runtime. The float backend returns the minimum-norm solution
// pinv(C_b(N)) * C_0(Q).

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

#include "ellify/lapack.hpp"
#include "ellify/matrix_polynomial.hpp"
#include "ellify/minimal_bases.hpp"

namespace ellify {

template <typename T>
struct ConvolutionMatrix {
    MatrixPoly<T> source;
    std::size_t j = 0;
    Matrix<T> matrix;  // (q+j+1)*rows  x  (j+1)*cols, block (r,c) = Q_{q-r+c}
};

template <typename T>
ConvolutionMatrix<T> convolution_matrix(const MatrixPoly<T>& q, std::size_t j) {
    const std::size_t g = q.grade(), br = q.rows(), bc = q.cols();
    Matrix<T> m((g + j + 1) * br, (j + 1) * bc);
    for (std::size_t r = 0; r <= g + j; ++r)
        for (std::size_t c = 0; c <= j; ++c) {
            if (c > r || r - c > g) continue;  // coefficient index q-r+c out of [0, q]
            m.set_block(r * br, c * bc, q.coeff(g - r + c));
        }
    return {q, j, std::move(m)};
}

// Stacked coefficient column [Q_q; ...; Q_0].
template <typename T>
Matrix<T> coefficient_stack(const MatrixPoly<T>& q) {
    Matrix<T> m((q.grade() + 1) * q.rows(), q.cols());
    for (std::size_t i = 0; i <= q.grade(); ++i)
        m.set_block((q.grade() - i) * q.rows(), 0, q.coeff(i));
    return m;
}

template <typename T>
MatrixPoly<T> poly_from_stack(const Matrix<T>& stack, std::size_t rows, std::size_t grade) {
    MatrixPoly<T> p(rows, stack.cols(), grade);
    for (std::size_t i = 0; i <= grade; ++i)
        p.coeff(i) = stack.block((grade - i) * rows, 0, rows, stack.cols());
    return p;
}

// Solution family of one polynomial equation: any member is
// particular + K^T X with X of the recorded shape and grade.
template <typename T>
struct SolutionFamily {
    MatrixPoly<T> particular;
    std::size_t nullity = 0;
    MatrixPoly<T> K;
    std::size_t x_rows = 0, x_cols = 0, x_grade = 0;

    MatrixPoly<T> member(const MatrixPoly<T>& x) const {
        if (x.rows() != x_rows || x.cols() != x_cols || x.grade() != x_grade)
            throw std::invalid_argument("convsolve: X slot shape mismatch");
        return particular + K.transpose() * x;
    }
};

namespace detail {

struct NBShape {
    std::size_t s, t, n, k;
};

inline NBShape check_nb_preconditions(const DualPair& pair, std::size_t q_rows,
                                      std::size_t q_grade, std::size_t b) {
    if (!pair.certified) throw std::invalid_argument("convsolve: dual pair is not certified");
    if (!pair.k_row_degree || !pair.n_row_degree)
        throw std::invalid_argument("convsolve: solver needs constant row degrees");
    NBShape sh{pair.K.rows(), pair.N.rows(), *pair.n_row_degree, *pair.k_row_degree};
    if (sh.s == 0) throw std::invalid_argument("convsolve: degenerate pair with no K rows");
    if (q_rows != sh.t) throw std::invalid_argument("convsolve: rhs row count mismatch");
    if (b < sh.k) throw std::invalid_argument("convsolve: grade budget b below K row degree");
    if (q_grade != sh.n + b)
        throw std::invalid_argument("convsolve: rhs grade must equal n + b");
    return sh;
}

}  // namespace detail

// Exact particular solution of N(lambda) B(lambda) = Q(lambda) with grade-b
// unknown, by the proof-order elimination; free blocks are set to zero.
inline SolutionFamily<Rational> solve_NB_eq_Q(const DualPair& pair, const MatrixPoly<Rational>& q,
                                              std::size_t b) {
    const auto sh = detail::check_nb_preconditions(pair, q.rows(), q.grade(), b);
    const std::size_t r = q.cols();
    const MatrixPoly<Rational> N = pair.N.with_grade(sh.n);
    const Matrix<Rational> lead = N.coeff(sh.n);

    MatrixPoly<Rational> B(sh.s + sh.t, r, b);
    // Upper triangular stage: B_b down to B_k against the leading block.
    for (std::size_t i = 0; i + sh.k <= b; ++i) {
        Matrix<Rational> rhs = q.coeff(sh.n + b - i);
        for (std::size_t u = 1; u <= i && u <= sh.n; ++u)
            rhs -= N.coeff(sh.n - u) * B.coeff(b - i + u);
        auto x = solve_particular(lead, rhs);
        if (!x) throw std::logic_error("convsolve: leading-block stage inconsistent");
        B.coeff(b - i) = *x;
    }
    // Square stage: C_{k-1}(N) recovers B_{k-1} ... B_0.
    if (sh.k > 0) {
        MatrixPoly<Rational> residual = q - N * B;
        for (std::size_t i = sh.n + sh.k; i <= sh.n + b; ++i)
            if (!residual.coeff(i).is_zero())
                throw std::logic_error("convsolve: upper stage left a high-order residual");
        Matrix<Rational> rhs((sh.n + sh.k) * sh.t, r);
        for (std::size_t i = 0; i < sh.n + sh.k; ++i)
            rhs.set_block(i * sh.t, 0, residual.coeff(sh.n + sh.k - 1 - i));
        const Matrix<Rational>& ck1 = convolution_matrix(N, sh.k - 1).matrix;
        if (ck1.rows() != ck1.cols())
            throw std::logic_error("convsolve: C_{k-1}(N) is not square (nt != ks)");
        Matrix<Rational> low = solve_nonsingular(
            ck1, rhs, "convsolve: C_{k-1}(N) singular, dual-pair certification violated");
        for (std::size_t i = 0; i < sh.k; ++i)
            B.coeff(sh.k - 1 - i) = low.block(i * (sh.s + sh.t), 0, sh.s + sh.t, r);
    }
    if (N * B != q) throw std::logic_error("convsolve: residual check failed");
    return {std::move(B), (b - sh.k + 1) * sh.s * r, pair.K.with_grade(sh.k), sh.s, r, b - sh.k};
}

// Float backend: minimum-norm solution pinv(C_b(N)) C_0(Q), Frobenius norm
// over the stacked coefficients.
inline SolutionFamily<double> solve_NB_eq_Q_min_norm(const DualPair& pair,
                                                     const MatrixPoly<double>& q, std::size_t b) {
    const auto sh = detail::check_nb_preconditions(pair, q.rows(), q.grade(), b);
    const std::size_t r = q.cols();
    const MatrixPoly<double> N = to_f64(pair.N.with_grade(sh.n));
    Matrix<double> sol = least_squares_min_norm(convolution_matrix(N, b).matrix,
                                                coefficient_stack(q));
    MatrixPoly<double> B = poly_from_stack(sol, sh.s + sh.t, b);
    return {std::move(B), (b - sh.k + 1) * sh.s * r, to_f64(pair.K.with_grade(sh.k)), sh.s, r,
            b - sh.k};
}

// Measured nullity of C_b(N) (per unit rhs column) against the closed-form
// count (b - k + 1) s.
inline bool nullspace_dimension_check(const DualPair& pair, std::size_t b) {
    if (!pair.certified || !pair.k_row_degree || !pair.n_row_degree)
        throw std::invalid_argument("convsolve: nullity check needs a certified uniform pair");
    const std::size_t k = *pair.k_row_degree, s = pair.K.rows();
    if (b < k) throw std::invalid_argument("convsolve: grade budget b below K row degree");
    const Matrix<Rational>& cb =
        convolution_matrix(pair.N.with_grade(*pair.n_row_degree), b).matrix;
    return cb.cols() - rank(cb) == (b - k + 1) * s;
}

// Solution family of N2 M N1^T = P with the (X, Y) slots of the two-sided
// parametrization: member(X, Y) = particular + solve(N1 Z = X^T K2)^T + Y^T K1.
template <typename T>
struct MSolutionFamily {
    MatrixPoly<T> particular;
    std::size_t nullity = 0;
    std::size_t x_rows = 0, x_cols = 0, x_grade = 0;  // X slot: m2 x n, grade eps
    std::size_t y_rows = 0, y_cols = 0;               // Y slot: m1 x (m2+m), constant
};

inline MatrixPoly<Rational> m_family_member(const MSolutionFamily<Rational>& fam,
                                            const DualPair& pair1, const DualPair& pair2,
                                            const MatrixPoly<Rational>& x, const Matrix<Rational>& y,
                                            std::size_t ell) {
    if (x.rows() != fam.x_rows || x.cols() != fam.x_cols || x.grade() != fam.x_grade)
        throw std::invalid_argument("convsolve: X slot shape mismatch");
    if (y.rows() != fam.y_rows || y.cols() != fam.y_cols)
        throw std::invalid_argument("convsolve: Y slot shape mismatch");
    MatrixPoly<Rational> rhs = (x.transpose() * pair2.K.with_grade(*pair2.k_row_degree))
                                   .with_grade(*pair1.n_row_degree + ell);
    MatrixPoly<Rational> z = solve_NB_eq_Q(pair1, rhs, ell).particular;
    MatrixPoly<Rational> yterm =
        MatrixPoly<Rational>::constant(y.transpose()) * pair1.K.with_grade(*pair1.k_row_degree);
    return fam.particular + z.transpose() + yterm;
}

namespace detail {

struct MShape {
    std::size_t m, n, m1, m2, eps, eta;
};

inline MShape check_m_preconditions(const DualPair& pair1, const DualPair& pair2,
                                    std::size_t p_rows, std::size_t p_cols, std::size_t p_grade,
                                    std::size_t ell) {
    for (const DualPair* p : {&pair1, &pair2})
        if (!p->certified || !p->k_row_degree || !p->n_row_degree)
            throw std::invalid_argument("convsolve: solve_M needs certified uniform pairs");
    MShape sh{pair2.N.rows(), pair1.N.rows(), pair1.K.rows(), pair2.K.rows(),
              *pair1.n_row_degree, *pair2.n_row_degree};
    if (p_rows != sh.m || p_cols != sh.n)
        throw std::invalid_argument("convsolve: target shape mismatch with dual pairs");
    if (p_grade != ell + sh.eps + sh.eta)
        throw std::invalid_argument("convsolve: grade(P) must equal ell + eps + eta");
    // A side with an empty K is the identity reduction: require N = I there.
    if (sh.m1 == 0 && pair1.N != identity_poly<Rational>(sh.n))
        throw std::invalid_argument("convsolve: empty K1 needs N1 = I");
    if (sh.m2 == 0 && pair2.N != identity_poly<Rational>(sh.m))
        throw std::invalid_argument("convsolve: empty K2 needs N2 = I");
    // Nontrivial wings must have row degrees equal to ell; the free-parameter
    // count below is specific to that setting.
    if (sh.m1 > 0 && *pair1.k_row_degree != ell)
        throw std::invalid_argument("convsolve: K1 row degrees must equal ell");
    if (sh.m2 > 0 && *pair2.k_row_degree != ell)
        throw std::invalid_argument("convsolve: K2 row degrees must equal ell");
    return sh;
}

}  // namespace detail

inline MSolutionFamily<Rational> solve_M(const DualPair& pair1, const DualPair& pair2,
                                         const MatrixPoly<Rational>& p, std::size_t ell) {
    const auto sh = detail::check_m_preconditions(pair1, pair2, p.rows(), p.cols(), p.grade(), ell);
    MatrixPoly<Rational> b =
        sh.m2 > 0 ? solve_NB_eq_Q(pair2, p, ell + sh.eps).particular : p.with_grade(ell + sh.eps);
    MatrixPoly<Rational> m =
        sh.m1 > 0 ? solve_NB_eq_Q(pair1, b.transpose(), ell).particular.transpose()
                  : b.with_grade(ell);
    if (pair2.N * m * pair1.N.transpose() != p)
        throw std::logic_error("convsolve: solve_M residual check failed");
    return {std::move(m), sh.m2 * sh.n * (sh.eps + 1) + (sh.m2 + sh.m) * sh.m1,
            sh.m2, sh.n, sh.eps, sh.m1, sh.m2 + sh.m};
}

inline MSolutionFamily<double> solve_M_min_norm(const DualPair& pair1, const DualPair& pair2,
                                                const MatrixPoly<double>& p, std::size_t ell) {
    const auto sh = detail::check_m_preconditions(pair1, pair2, p.rows(), p.cols(), p.grade(), ell);
    MatrixPoly<double> b = sh.m2 > 0 ? solve_NB_eq_Q_min_norm(pair2, p, ell + sh.eps).particular
                                     : p.with_grade(ell + sh.eps);
    MatrixPoly<double> m =
        sh.m1 > 0 ? solve_NB_eq_Q_min_norm(pair1, b.transpose(), ell).particular.transpose()
                  : b.with_grade(ell);
    return {std::move(m), sh.m2 * sh.n * (sh.eps + 1) + (sh.m2 + sh.m) * sh.m1,
            sh.m2, sh.n, sh.eps, sh.m1, sh.m2 + sh.m};
}

// Xi[M] = (Lambda_eta(l^ell)^T (x) I_m) M (Lambda_eps(l^ell) (x) I_n); eps and
// eta are the block Kronecker indices, so the result has grade ell*(eps+eta+1).
template <typename T>
MatrixPoly<T> xi_map(const MatrixPoly<T>& m0, std::size_t eps, std::size_t eta, std::size_t ell,
                     std::size_t m, std::size_t n) {
    if (ell < 1) throw std::invalid_argument("convsolve: xi_map needs ell >= 1");
    if (m0.rows() != (eta + 1) * m || m0.cols() != (eps + 1) * n)
        throw std::invalid_argument("convsolve: xi_map shape mismatch");
    MatrixPoly<T> mm = m0.with_grade(ell);
    MatrixPoly<T> left =
        make_Lambda<T>(eta).substitute_power(ell).transpose().kron_identity_right(m);
    MatrixPoly<T> right = make_Lambda<T>(eps).substitute_power(ell).kron_identity_right(n);
    return left * mm * right;
}

}  // namespace ellify
