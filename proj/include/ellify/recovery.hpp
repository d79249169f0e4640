#pragma once

// Recovery of minimal indices, minimal bases and eigenvectors of the target
// polynomial from an ell-ification, one-sided factorization residuals, and
// the convolution-rank oracle for minimal indices.

#include <algorithm>
#include <complex>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "ellify/constructors.hpp"
#include "ellify/convolution.hpp"

namespace ellify {

struct Eigenstructure {
    std::vector<std::pair<std::complex<double>, int>> finite_eigenvalues;
    bool has_infinite_eigenvalue = false;
    int infinite_multiplicity = 0;
    std::vector<std::size_t> right_minimal_indices, left_minimal_indices;  // sorted
    std::size_t normal_rank = 0;
};

enum class Side { right, left };

// Block partition data and degree shifts needed to move structure between
// the target polynomial and its ell-ification. For the Kronecker kind the
// shifts are eps*ell and eta*ell; the general kind carries the embeddings.
struct RecoveryContext {
    enum class Kind { block_kronecker, general_sbmb } kind = Kind::block_kronecker;
    std::size_t epsilon = 0, eta = 0, ell = 1, m = 0, n = 0;
    std::size_t deg_n1 = 0, deg_n2 = 0;  // shift constants
    std::optional<EmbeddingPair> emb1, emb2;
};

inline RecoveryContext make_recovery_context(const BlockKronecker& bk) {
    RecoveryContext c;
    c.kind = RecoveryContext::Kind::block_kronecker;
    c.epsilon = bk.epsilon;
    c.eta = bk.eta;
    c.ell = bk.ell;
    c.m = bk.m;
    c.n = bk.n;
    c.deg_n1 = bk.epsilon * bk.ell;
    c.deg_n2 = bk.eta * bk.ell;
    return c;
}

inline RecoveryContext make_recovery_context(const StrongBlockMinimalBases& s) {
    RecoveryContext c;
    c.kind = RecoveryContext::Kind::general_sbmb;
    c.ell = s.ell;
    c.m = s.m();
    c.n = s.n();
    c.deg_n1 = s.pair1 ? s.pair1->N.degree().value_or(0) : 0;
    c.deg_n2 = s.pair2 ? s.pair2->N.degree().value_or(0) : 0;
    c.emb1 = s.emb1;
    c.emb2 = s.emb2;
    return c;
}

// Adds (forward) or removes (inverse) the uniform shift deg(N1) / deg(N2).
inline std::vector<std::size_t> shift_minimal_indices(std::vector<std::size_t> indices,
                                                      const RecoveryContext& ctx, Side side,
                                                      bool inverse = false) {
    const std::size_t shift = side == Side::right ? ctx.deg_n1 : ctx.deg_n2;
    for (auto& i : indices) {
        if (inverse) {
            if (i < shift)
                throw std::invalid_argument(
                    "recovery: inverse shift would go negative (wrong pairing of L and P)");
            i -= shift;
        } else {
            i += shift;
        }
    }
    return indices;
}

// Largest rank of P evaluated at more sample points than any maximal minor
// can have roots; exact because the rank can only drop on a finite set.
inline std::size_t normal_rank(const MatrixPoly<Rational>& p) {
    const std::size_t points = p.grade() * std::min(p.rows(), p.cols()) + 1;
    std::size_t best = 0;
    long x = 0;
    for (std::size_t i = 0; i < points; ++i) {
        best = std::max(best, rank(p.evaluate(Rational(x))));
        x = x > 0 ? -x : -x + 1;  // 0, 1, -1, 2, -2, ...
    }
    return best;
}

namespace detail {

// Right minimal indices from the rank profile of the convolution matrices:
// the space of degree <= j null vectors has dimension n(j+1) - rank C_j(P),
// and the indices are the positions where the first difference jumps.
inline std::vector<std::size_t> right_minimal_indices_oracle(const MatrixPoly<Rational>& p,
                                                             std::size_t wanted,
                                                             std::size_t element_guard) {
    std::vector<std::size_t> indices;
    std::size_t prev_dim = 0, prev_count = 0;
    for (std::size_t j = 0; indices.size() < wanted; ++j) {
        ConvolutionMatrix<Rational> cj = convolution_matrix(p, j);
        if (cj.matrix.rows() * cj.matrix.cols() > element_guard)
            throw std::runtime_error("recovery: minimal-index size guard exceeded");
        std::size_t dim = p.cols() * (j + 1) - rank(cj.matrix);
        std::size_t count = dim - prev_dim;
        for (std::size_t t = prev_count; t < count; ++t) indices.push_back(j);
        prev_dim = dim;
        prev_count = count;
    }
    return indices;
}

}  // namespace detail

// Exact minimal indices and normal rank of P via convolution-matrix ranks.
inline Eigenstructure minimal_indices_of(const MatrixPoly<Rational>& p,
                                         std::size_t element_guard = 1u << 22) {
    Eigenstructure e;
    e.normal_rank = normal_rank(p);
    e.right_minimal_indices =
        detail::right_minimal_indices_oracle(p, p.cols() - e.normal_rank, element_guard);
    e.left_minimal_indices = detail::right_minimal_indices_oracle(
        p.transpose(), p.rows() - e.normal_rank, element_guard);
    return e;
}

// z = [N1^T; -N_hat_2 M N1^T] h lifts a right null vector h of Q into the
// right nullspace of the assembled ell-ification, with degree shift deg(N1).
inline MatrixPoly<Rational> lift_right_null_vector(const StrongBlockMinimalBases& s,
                                                   const MatrixPoly<Rational>& h) {
    if (h.cols() != 1 || h.rows() != s.n())
        throw std::invalid_argument("recovery: h must be a column of length n");
    if (h.is_zero()) throw std::invalid_argument("recovery: h must be nonzero");
    if (!(q_of(s) * h).is_zero())
        throw std::invalid_argument("recovery: h is not a right null vector of Q");

    MatrixPoly<Rational> top = s.pair1 ? s.pair1->N.transpose() * h : h;
    MatrixPoly<Rational> z = top;
    if (s.pair2) {
        if (!s.emb2) throw std::invalid_argument("recovery: lift needs the K2-side embedding");
        z = vstack(top, -(s.emb2->N_hat_T().transpose() * s.M * top));
    }

    const std::size_t shift = s.pair1 ? s.pair1->N.degree().value_or(0) : 0;
    auto dz = z.degree(), dh = h.degree();
    if (!dz || *dz != shift + *dh)
        throw std::logic_error("recovery: degree shift law violated");
    return z;
}

// Kronecker extraction: the (eps+1)-th block of a right vector / the
// (eta+1)-th block of a left vector (vectors given as columns).
inline std::vector<MatrixPoly<Rational>> extract_minimal_basis_kronecker(
    const std::vector<MatrixPoly<Rational>>& vectors, const RecoveryContext& ctx, Side side,
    const MatrixPoly<Rational>* target = nullptr) {
    if (ctx.kind != RecoveryContext::Kind::block_kronecker)
        throw std::invalid_argument("recovery: context is not of block Kronecker kind");
    const std::size_t expect = side == Side::right ? (ctx.epsilon + 1) * ctx.n + ctx.eta * ctx.m
                                                   : (ctx.eta + 1) * ctx.m + ctx.epsilon * ctx.n;
    const std::size_t offset = side == Side::right ? ctx.epsilon * ctx.n : ctx.eta * ctx.m;
    const std::size_t size = side == Side::right ? ctx.n : ctx.m;
    std::vector<MatrixPoly<Rational>> out;
    out.reserve(vectors.size());
    for (const auto& v : vectors) {
        if (v.cols() != 1 || v.rows() != expect)
            throw std::invalid_argument("recovery: vector partition mismatch");
        out.push_back(sub_rows(v, offset, size).trimmed());
    }
    if (!out.empty()) {
        MatrixPoly<Rational> basis = out[0];
        for (std::size_t i = 1; i < out.size(); ++i) basis = hstack(basis, out[i]);
        if (!is_minimal_basis(basis.transpose()))
            throw std::runtime_error("recovery: extracted vectors are not a minimal basis");
        if (target) {
            const MatrixPoly<Rational> prod =
                side == Side::right ? *target * basis : basis.transpose() * *target;
            if (!prod.is_zero())
                throw std::runtime_error("recovery: extracted vectors are not null vectors of P");
        }
    }
    return out;
}

// General recovery through the embeddings: R_Q = [K_hat_1, 0] R_L for right
// bases (columns), L_Q = L_L [K_hat_2^T; 0] for left bases (rows).
inline MatrixPoly<Rational> recover_minimal_basis_general(const MatrixPoly<Rational>& basis,
                                                          const StrongBlockMinimalBases& s,
                                                          Side side) {
    if (basis.rows() == 0 || basis.cols() == 0)  // regular target: empty basis stays empty
        return side == Side::right ? MatrixPoly<Rational>(s.n(), 0, 0)
                                   : MatrixPoly<Rational>(0, s.m(), 0);
    const MatrixPoly<Rational> l = s.assembled();
    if (side == Side::right) {
        if (!(l * basis).is_zero() || !is_minimal_basis(basis.transpose()))
            throw std::invalid_argument("recovery: input is not a certified right minimal basis");
        MatrixPoly<Rational> khat =
            s.emb1 ? s.emb1->K_hat() : identity_poly<Rational>(s.n());
        if (s.pair1 && !s.emb1)
            throw std::invalid_argument("recovery: general recovery needs the K1-side embedding");
        MatrixPoly<Rational> top = sub_rows(basis, 0, khat.cols());
        return (khat * top).trimmed();
    }
    if (!(basis * l).is_zero() || !is_minimal_basis(basis))
        throw std::invalid_argument("recovery: input is not a certified left minimal basis");
    MatrixPoly<Rational> khat = s.emb2 ? s.emb2->K_hat() : identity_poly<Rational>(s.m());
    if (s.pair2 && !s.emb2)
        throw std::invalid_argument("recovery: general recovery needs the K2-side embedding");
    MatrixPoly<Rational> left = sub_cols(basis, 0, khat.cols());
    return (left * khat.transpose()).trimmed();
}

namespace detail {

template <typename S>
double vec_norm(const Matrix<S>& v) {
    double s = 0;
    for (std::size_t i = 0; i < v.rows(); ++i)
        for (std::size_t j = 0; j < v.cols(); ++j) s += std::norm(std::complex<double>(v(i, j)));
    return std::sqrt(s);
}

inline double vec_norm(const Matrix<Rational>& v) {
    double s = 0;
    for (std::size_t i = 0; i < v.rows(); ++i)
        for (std::size_t j = 0; j < v.cols(); ++j) s += v(i, j).to_double() * v(i, j).to_double();
    return std::sqrt(s);
}

}  // namespace detail

// Extracts an eigenvector of the target polynomial from an eigenvector of
// the ell-ification; lambda0 == nullopt addresses the eigenvalue at
// infinity. The input is validated against L (exactly over the rationals,
// by residual tolerance in floating point); a vanishing extracted block is
// rejected as an invalid partition or defective input.
template <typename S>
Matrix<S> recover_eigenvector(const MatrixPoly<S>& l, const Matrix<S>& z,
                              const std::optional<S>& lambda0, const RecoveryContext& ctx,
                              Side side, double float_tol = 1e-8) {
    if (ctx.kind != RecoveryContext::Kind::block_kronecker)
        throw std::invalid_argument("recovery: eigenvector recovery needs a Kronecker context");
    if (z.cols() != 1) throw std::invalid_argument("recovery: eigenvector must be a column");
    const std::size_t expect = side == Side::right ? (ctx.epsilon + 1) * ctx.n + ctx.eta * ctx.m
                                                   : (ctx.eta + 1) * ctx.m + ctx.epsilon * ctx.n;
    if (z.rows() != expect) throw std::invalid_argument("recovery: eigenvector partition mismatch");

    Matrix<S> residual =
        lambda0 ? (side == Side::right ? l.evaluate(*lambda0) * z
                                       : (z.transpose() * l.evaluate(*lambda0)).transpose())
                : (side == Side::right ? l.coeff(l.grade()) * z
                                       : (z.transpose() * l.coeff(l.grade())).transpose());
    if constexpr (is_exact_scalar_v<S>) {
        if (!residual.is_zero())
            throw std::invalid_argument("recovery: input is not an eigenvector of L");
    } else {
        double scale = 0;
        for (std::size_t i = 0; i <= l.grade(); ++i) {
            double c = lambda0 ? std::pow(std::abs(std::complex<double>(*lambda0)),
                                          static_cast<double>(i))
                               : (i == l.grade() ? 1.0 : 0.0);
            scale += c * detail::vec_norm(l.coeff(i));
        }
        if (detail::vec_norm(residual) > float_tol * std::max(scale, 1.0) * detail::vec_norm(z))
            throw std::invalid_argument("recovery: eigenvector residual above tolerance");
    }

    std::size_t offset, size;
    if (lambda0) {
        offset = side == Side::right ? ctx.epsilon * ctx.n : ctx.eta * ctx.m;
        size = side == Side::right ? ctx.n : ctx.m;
    } else {
        offset = 0;
        size = side == Side::right ? ctx.n : ctx.m;
    }
    Matrix<S> x = z.block(offset, 0, size, 1);
    if (detail::vec_norm(x) <= 1e-12 * detail::vec_norm(z))
        throw std::runtime_error("recovery: extracted block is numerically zero");
    return x;
}

// One-sided factorizations L F = G Q and E L = Q H built from the duals and
// embeddings; returns the two residuals, identically zero over the
// rationals.
inline std::pair<MatrixPoly<Rational>, MatrixPoly<Rational>> one_sided_residuals(
    const StrongBlockMinimalBases& s) {
    const MatrixPoly<Rational> l = s.assembled();
    const MatrixPoly<Rational> q = q_of(s);
    if ((s.pair1 && !s.emb1) || (s.pair2 && !s.emb2))
        throw std::invalid_argument("recovery: one-sided factorizations need the embeddings");

    MatrixPoly<Rational> n1t = s.pair1 ? s.pair1->N.transpose() : identity_poly<Rational>(s.n());
    MatrixPoly<Rational> f = n1t;
    if (s.pair2) f = vstack(n1t, -(s.emb2->N_hat_T().transpose() * s.M * n1t));
    MatrixPoly<Rational> g = s.pair2 ? s.emb2->K_hat().transpose() : identity_poly<Rational>(s.m());
    if (s.pair1) g = vstack(g, MatrixPoly<Rational>(s.m1(), s.m(), 0));
    MatrixPoly<Rational> residual_right = l * f - g * q;

    MatrixPoly<Rational> n2 = s.pair2 ? s.pair2->N : identity_poly<Rational>(s.m());
    MatrixPoly<Rational> e = n2;
    if (s.pair1) e = hstack(n2, -(n2 * s.M * s.emb1->N_hat_T()));
    MatrixPoly<Rational> h = s.pair1 ? s.emb1->K_hat() : identity_poly<Rational>(s.n());
    if (s.pair2) h = hstack(h, MatrixPoly<Rational>(s.n(), s.m2(), 0));
    MatrixPoly<Rational> residual_left = e * l - q * h;

    return {residual_right, residual_left};
}

// The same factorizations evaluated in floating point; residual norms should
// be at machine-precision scale relative to the factor norms.
inline std::pair<double, double> one_sided_residual_norms_f64(const StrongBlockMinimalBases& s) {
    if ((s.pair1 && !s.emb1) || (s.pair2 && !s.emb2))
        throw std::invalid_argument("recovery: one-sided factorizations need the embeddings");
    const MatrixPoly<double> l = to_f64(s.assembled());
    const MatrixPoly<double> q = to_f64(q_of(s));
    MatrixPoly<double> n1t = s.pair1 ? to_f64(s.pair1->N.transpose())
                                     : to_f64(identity_poly<Rational>(s.n()));
    MatrixPoly<double> f = n1t;
    if (s.pair2) f = vstack(n1t, -(to_f64(s.emb2->N_hat_T().transpose()) * to_f64(s.M) * n1t));
    MatrixPoly<double> g = s.pair2 ? to_f64(s.emb2->K_hat().transpose())
                                   : to_f64(identity_poly<Rational>(s.m()));
    if (s.pair1) g = vstack(g, MatrixPoly<double>(s.m1(), s.m(), 0));
    double right = coefficient_norm(l * f - g * q) /
                   std::max(1.0, coefficient_norm(l) * coefficient_norm(f));

    MatrixPoly<double> n2 =
        s.pair2 ? to_f64(s.pair2->N) : to_f64(identity_poly<Rational>(s.m()));
    MatrixPoly<double> e = n2;
    if (s.pair1) e = hstack(n2, -(n2 * to_f64(s.M) * to_f64(s.emb1->N_hat_T())));
    MatrixPoly<double> h = s.pair1 ? to_f64(s.emb1->K_hat())
                                   : to_f64(identity_poly<Rational>(s.n()));
    if (s.pair2) h = hstack(h, MatrixPoly<double>(s.n(), s.m2(), 0));
    double left = coefficient_norm(e * l - q * h) /
                  std::max(1.0, coefficient_norm(e) * coefficient_norm(l));
    return {right, left};
}

}  // namespace ellify
