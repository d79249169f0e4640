#pragma once

// Assembly of (strong) block minimal bases matrix polynomials and the block
// Kronecker companion templates: Frobenius and Frobenius-like companion
// forms, the Sigma companion block, the perturbation family of equivalent
// (1,1) blocks, and the symmetric companion quadratification.

#include <cstddef>
#include <optional>
#include <stdexcept>

#include "ellify/convolution.hpp"
#include "ellify/matrix_polynomial.hpp"
#include "ellify/minimal_bases.hpp"

namespace ellify {

// [M, K2^T; K1, 0] with attached dual pairs and, when available, the
// unimodular embeddings of the wings. A missing pair is a degenerate
// one-sided form, represented explicitly rather than as a 0-row matrix.
struct StrongBlockMinimalBases {
    MatrixPoly<Rational> M;
    std::size_t ell = 1;
    std::optional<DualPair> pair1, pair2;  // (K1, N1) and (K2, N2)
    std::optional<EmbeddingPair> emb1, emb2;
    bool strong = false;

    std::size_t m1() const { return pair1 ? pair1->K.rows() : 0; }
    std::size_t m2() const { return pair2 ? pair2->K.rows() : 0; }
    std::size_t m() const { return M.rows() - m2(); }
    std::size_t n() const { return M.cols() - m1(); }

    MatrixPoly<Rational> assembled() const {
        MatrixPoly<Rational> top = M;
        if (pair2) top = hstack(M, pair2->K.transpose().with_grade(ell));
        if (!pair1) return top;
        MatrixPoly<Rational> zero(m1(), m2(), ell);
        MatrixPoly<Rational> bottom = pair2 ? hstack(pair1->K.with_grade(ell), zero)
                                            : pair1->K.with_grade(ell);
        return vstack(top, bottom);
    }
};

namespace detail {

inline void validate_embedding_against_pair(const EmbeddingPair& emb, const DualPair& pair,
                                            const char* which) {
    if (emb.U * emb.U_inv != identity_poly<Rational>(emb.U.rows()) ||
        emb.K() != pair.K || emb.N_T() != pair.N.transpose())
        throw std::invalid_argument(std::string("constructors: embedding does not match pair ") +
                                    which);
}

inline bool strongness(const std::optional<DualPair>& pair, std::size_t ell) {
    if (!pair) return true;
    return pair->k_row_degree == ell && pair->n_row_degree.has_value();
}

}  // namespace detail

inline StrongBlockMinimalBases assemble_sbmb(MatrixPoly<Rational> M,
                                             std::optional<DualPair> pair1,
                                             std::optional<DualPair> pair2, std::size_t ell,
                                             std::optional<EmbeddingPair> emb1 = std::nullopt,
                                             std::optional<EmbeddingPair> emb2 = std::nullopt) {
    if (M.grade() != ell) throw std::invalid_argument("constructors: grade(M) must equal ell");
    if (!pair1 && !pair2)
        throw std::invalid_argument("constructors: at least one wing pair is required");
    for (const auto* p : {&pair1, &pair2})
        if (*p && !(*p)->certified)
            throw std::invalid_argument("constructors: wing pair failed certification");
    if (pair1 && pair1->K.cols() != M.cols())
        throw std::invalid_argument("constructors: K1 must have as many columns as M");
    if (pair2 && pair2->K.cols() != M.rows())
        throw std::invalid_argument("constructors: K2 must have as many columns as M has rows");
    if (emb1) detail::validate_embedding_against_pair(*emb1, *pair1, "1");
    if (emb2) detail::validate_embedding_against_pair(*emb2, *pair2, "2");

    StrongBlockMinimalBases s{std::move(M), ell, std::move(pair1), std::move(pair2),
                              std::move(emb1), std::move(emb2), false};
    s.strong = detail::strongness(s.pair1, ell) && detail::strongness(s.pair2, ell);
    return s;
}

// Q = N2 M N1^T, reported with grade ell + deg(N1) + deg(N2).
inline MatrixPoly<Rational> q_of(const StrongBlockMinimalBases& s) {
    MatrixPoly<Rational> q = s.M;
    std::size_t deg1 = 0, deg2 = 0;
    if (s.pair2) {
        q = s.pair2->N * q;
        deg2 = s.pair2->N.degree().value_or(0);
    }
    if (s.pair1) {
        q = q * s.pair1->N.transpose();
        deg1 = s.pair1->N.degree().value_or(0);
    }
    return q.with_grade(s.ell + deg1 + deg2);
}

// Roles of the two wings swap; q_of of the result is q_of(s)^T.
inline StrongBlockMinimalBases transpose_construction(const StrongBlockMinimalBases& s) {
    StrongBlockMinimalBases t{s.M.transpose(), s.ell, s.pair2, s.pair1, s.emb2, s.emb1, s.strong};
    return t;
}

// ---------------------------------------------------------------------------
// Block Kronecker matrix polynomials.
// ---------------------------------------------------------------------------

// [M, L_eta(l^ell)^T (x) I_m; L_eps(l^ell) (x) I_n, 0]. The wings certify
// structurally, so no runtime minor computation is attached here.
struct BlockKronecker {
    std::size_t epsilon = 0, eta = 0, ell = 1, m = 0, n = 0;
    MatrixPoly<Rational> M;  // (eta+1)m x (epsilon+1)n, grade ell

    std::size_t grade() const { return ell * (epsilon + eta + 1); }

    StrongBlockMinimalBases as_sbmb() const {
        std::optional<DualPair> p1, p2;
        std::optional<EmbeddingPair> e1, e2;
        if (epsilon > 0) {
            DualPair d{make_Lk(epsilon).substitute_power(ell).kron_identity_right(n),
                       make_Lambda(epsilon).substitute_power(ell).transpose().kron_identity_right(n)};
            d.certified = true;
            d.k_row_degree = ell;
            d.n_row_degree = epsilon * ell;
            p1 = std::move(d);
            e1 = kronecker_embedding(epsilon, ell, n);
        }
        if (eta > 0) {
            DualPair d{make_Lk(eta).substitute_power(ell).kron_identity_right(m),
                       make_Lambda(eta).substitute_power(ell).transpose().kron_identity_right(m)};
            d.certified = true;
            d.k_row_degree = ell;
            d.n_row_degree = eta * ell;
            p2 = std::move(d);
            e2 = kronecker_embedding(eta, ell, m);
        }
        StrongBlockMinimalBases s{M, ell, std::move(p1), std::move(p2), std::move(e1),
                                  std::move(e2), true};
        return s;
    }

    MatrixPoly<Rational> assembled() const { return as_sbmb().assembled(); }

    MatrixPoly<Rational> target() const { return xi_map(M, epsilon, eta, ell, m, n); }
};

namespace detail {

inline void check_kronecker_shape(const BlockKronecker& bk) {
    if (bk.M.rows() != (bk.eta + 1) * bk.m || bk.M.cols() != (bk.epsilon + 1) * bk.n)
        throw std::invalid_argument("constructors: block Kronecker (1,1) block shape mismatch");
    if (bk.M.grade() != bk.ell)
        throw std::invalid_argument("constructors: block Kronecker (1,1) block grade mismatch");
}

}  // namespace detail

// The grade-ell companion block Sigma_P: first block row [B_k ... B_{eta+1}],
// last block column [...; B_2; B_1], zeros elsewhere, where the B_j split the
// coefficients of P into grade-ell slices.
inline MatrixPoly<Rational> sigma_block(const MatrixPoly<Rational>& p, std::size_t eps,
                                        std::size_t eta, std::size_t ell) {
    if (ell < 1 || ell * (eps + eta + 1) != p.grade())
        throw std::invalid_argument("constructors: need ell*(eps+eta+1) = grade(P)");
    const std::size_t m = p.rows(), n = p.cols(), k = eps + eta + 1;
    auto slice = [&](std::size_t j) {  // B_j
        MatrixPoly<Rational> b(m, n, ell);
        if (j == 1) {
            for (std::size_t i = 0; i <= ell; ++i) b.coeff(i) = p.coeff(i);
        } else {
            for (std::size_t i = 1; i <= ell; ++i) b.coeff(i) = p.coeff(ell * (j - 1) + i);
        }
        return b;
    };
    MatrixPoly<Rational> sigma((eta + 1) * m, (eps + 1) * n, ell);
    for (std::size_t c = 0; c <= eps; ++c) set_poly_block(sigma, 0, c * n, slice(k - c));
    for (std::size_t r = 1; r <= eta; ++r) set_poly_block(sigma, r * m, eps * n, slice(eta + 1 - r));
    return sigma;
}

// Companion ell-ification: M = Sigma_P, wings fixed by (eps, eta, ell). The
// construction only copies coefficients of P into place.
inline BlockKronecker block_kronecker_companion(const MatrixPoly<Rational>& p, std::size_t eps,
                                                std::size_t eta, std::size_t ell) {
    BlockKronecker bk{eps, eta, ell, p.rows(), p.cols(), sigma_block(p, eps, eta, ell)};
    return bk;
}

enum class CompanionSide { first, second };

// The classic Frobenius companion forms C1 and C2 as printed: first block
// lambda P_d + P_{d-1}, then the constant coefficients.
inline BlockKronecker frobenius_companion(const MatrixPoly<Rational>& p, CompanionSide side) {
    const std::size_t d = p.grade(), m = p.rows(), n = p.cols();
    if (d < 2) throw std::invalid_argument("constructors: Frobenius companion needs grade >= 2");
    if (side == CompanionSide::first) {
        MatrixPoly<Rational> m1(m, d * n, 1);
        m1.coeff(1).set_block(0, 0, p.coeff(d));
        for (std::size_t j = 0; j < d; ++j) m1.coeff(0).set_block(0, j * n, p.coeff(d - 1 - j));
        return BlockKronecker{d - 1, 0, 1, m, n, std::move(m1)};
    }
    MatrixPoly<Rational> m2(d * m, n, 1);
    m2.coeff(1).set_block(0, 0, p.coeff(d));
    for (std::size_t i = 0; i < d; ++i) m2.coeff(0).set_block(i * m, 0, p.coeff(d - 1 - i));
    return BlockKronecker{0, d - 1, 1, m, n, std::move(m2)};
}

// Frobenius-like companion forms of degree ell (ell | d): the Sigma block
// with all B_j in one block row (first form) or one block column (second).
inline BlockKronecker frobenius_like_ellification(const MatrixPoly<Rational>& p, std::size_t ell,
                                                  CompanionSide side) {
    const std::size_t d = p.grade();
    if (ell < 1 || d % ell != 0)
        throw std::invalid_argument("constructors: Frobenius-like form needs ell | d");
    const std::size_t k = d / ell;
    if (k < 2)
        throw std::invalid_argument("constructors: Frobenius-like form needs d/ell >= 2");
    return side == CompanionSide::first ? block_kronecker_companion(p, k - 1, 0, ell)
                                        : block_kronecker_companion(p, 0, k - 1, ell);
}

// All (1,1) blocks equivalent to bk.M: M + (lambda [0; D] + B)(L_eps wing)
// + (L_eta wing)^T (lambda [0, -D] + C). D is only meaningful for ell >= 2
// and when both wings are present; the opposite signs cancel the degree
// ell+1 terms, so the result has grade ell again.
inline BlockKronecker block_kronecker_perturb(const BlockKronecker& bk, const Matrix<Rational>& B,
                                              const Matrix<Rational>& C,
                                              const std::optional<MatrixPoly<Rational>>& D =
                                                  std::nullopt) {
    detail::check_kronecker_shape(bk);
    const std::size_t eps = bk.epsilon, eta = bk.eta, ell = bk.ell, m = bk.m, n = bk.n;
    if (B.rows() != (eta + 1) * m || B.cols() != eps * n)
        throw std::invalid_argument("constructors: B slot must be (eta+1)m x eps*n");
    if (C.rows() != eta * m || C.cols() != (eps + 1) * n)
        throw std::invalid_argument("constructors: C slot must be eta*m x (eps+1)n");
    if (D) {
        if (ell < 2) throw std::invalid_argument("constructors: D slot requires ell >= 2");
        if (eps == 0 || eta == 0)
            throw std::invalid_argument("constructors: D slot requires both wings");
        if (D->rows() != eta * m || D->cols() != eps * n || D->grade() > ell - 2)
            throw std::invalid_argument("constructors: D slot must be eta*m x eps*n of grade ell-2");
    }

    MatrixPoly<Rational> acc = bk.M.with_grade(2 * ell);
    if (eps > 0) {
        MatrixPoly<Rational> left = MatrixPoly<Rational>::constant(B).with_grade(ell - 1);
        if (D) {
            MatrixPoly<Rational> dd((eta + 1) * m, eps * n, ell - 1);
            set_poly_block(dd, m, 0, D->shift(1));
            left += dd;
        }
        acc += left * make_Lk(eps).substitute_power(ell).kron_identity_right(n);
    }
    if (eta > 0) {
        MatrixPoly<Rational> right = MatrixPoly<Rational>::constant(C).with_grade(ell - 1);
        if (D) {
            MatrixPoly<Rational> dd(eta * m, (eps + 1) * n, ell - 1);
            set_poly_block(dd, 0, n, (-*D).shift(1));
            right += dd;
        }
        acc += make_Lk(eta).substitute_power(ell).transpose().kron_identity_right(m) * right;
    }
    return BlockKronecker{eps, eta, ell, m, n, acc.with_grade(ell)};
}

struct SymmetricQuadratification {
    BlockKronecker form;
    bool input_symmetric = false;
};

inline bool is_symmetric(const MatrixPoly<Rational>& p) {
    if (p.rows() != p.cols()) return false;
    return p == p.transpose();
}

// Symmetric companion quadratification for grade d = 4k+2: diagonal blocks
// lambda^2 P_{4j+2} + lambda P_{4j+1} + P_{4j}, halved odd couplings
// lambda P_{4j+3} / 2 on the off-diagonals. Symmetric whenever P is; the
// halving is exact over the rationals.
inline SymmetricQuadratification symmetric_companion_quadratification(
    const MatrixPoly<Rational>& p) {
    const std::size_t d = p.grade(), n = p.cols();
    if (p.rows() != n)
        throw std::invalid_argument("constructors: symmetric template needs a square polynomial");
    if (d % 4 != 2)
        throw std::invalid_argument("constructors: symmetric template needs grade 2 mod 4");
    const std::size_t e = (d - 2) / 4;  // epsilon = eta
    const Rational half(1, 2);
    MatrixPoly<Rational> m((e + 1) * n, (e + 1) * n, 2);
    for (std::size_t r = 0; r <= e; ++r) {
        std::size_t j = e - r;
        m.coeff(2).set_block(r * n, r * n, p.coeff(4 * j + 2));
        m.coeff(1).set_block(r * n, r * n, p.coeff(4 * j + 1));
        m.coeff(0).set_block(r * n, r * n, p.coeff(4 * j));
        if (r < e) {
            Matrix<Rational> coupling = p.coeff(4 * (e - r - 1) + 3) * half;
            m.coeff(1).set_block(r * n, (r + 1) * n, coupling);
            m.coeff(1).set_block((r + 1) * n, r * n, coupling);
        }
    }
    return {BlockKronecker{e, e, 2, n, n, std::move(m)}, is_symmetric(p)};
}

}  // namespace ellify
