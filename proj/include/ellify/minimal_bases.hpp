#pragma once

// Minimal bases: the structured Kronecker family L_k / Lambda_k, exact
// certification of minimal bases and dual pairs, the explicit unimodular
// embedding of the Kronecker pairs, and the enumeration of admissible
// ell-ification parameters.

#include <cstddef>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ellify/matrix_polynomial.hpp"

namespace ellify {

// k x (k+1) pencil with -1 on the diagonal and lambda on the superdiagonal.
template <typename T = Rational>
MatrixPoly<T> make_Lk(std::size_t k) {
    if (k < 1) throw std::invalid_argument("minbases: make_Lk needs k >= 1");
    MatrixPoly<T> L(k, k + 1, 1);
    for (std::size_t i = 0; i < k; ++i) {
        L.coeff(0)(i, i) = T(-1);
        L.coeff(1)(i, i + 1) = T(1);
    }
    return L;
}

// Column vector [lambda^k; ...; lambda; 1].
template <typename T = Rational>
MatrixPoly<T> make_Lambda(std::size_t k) {
    MatrixPoly<T> c(k + 1, 1, k);
    for (std::size_t i = 0; i <= k; ++i) c.coeff(i)(k - i, 0) = T(1);
    return c;
}

inline bool is_row_reduced(const MatrixPoly<Rational>& q) {
    Matrix<Rational> h = q.highest_row_degree_matrix();
    return rank(h) == q.rows();
}

namespace detail {

inline unsigned long long binomial_guarded(std::size_t n, std::size_t k, unsigned long long cap) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    unsigned long long r = 1;
    for (std::size_t i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;
        if (r > cap) return cap + 1;
    }
    return r;
}

// Lexicographic successor of an r-subset of {0, ..., n-1}.
inline bool next_combination(std::vector<std::size_t>& sel, std::size_t n) {
    const std::size_t r = sel.size();
    std::size_t i = r;
    while (i > 0) {
        --i;
        if (sel[i] != i + n - r) {
            ++sel[i];
            for (std::size_t j = i + 1; j < r; ++j) sel[j] = sel[j - 1] + 1;
            return true;
        }
    }
    return false;
}

}  // namespace detail

// Exact test that the rows of q are a minimal basis: row reduced and the gcd
// of all maximal minors is a nonzero constant (equivalently, full row rank at
// every point of the algebraic closure). The minor count is guarded against
// combinatorial blow-up; oversized inputs raise instead of guessing.
inline bool is_minimal_basis(const MatrixPoly<Rational>& q, unsigned long long minor_guard = 5000) {
    const std::size_t r = q.rows(), c = q.cols();
    if (r > c) throw std::invalid_argument("minbases: minimal basis needs rows <= cols");
    if (r == 0) throw std::invalid_argument("minbases: empty basis");
    if (detail::binomial_guarded(c, r, minor_guard) > minor_guard)
        throw std::runtime_error("minbases: maximal minor count exceeds guard, basis left uncertified");
    if (!is_row_reduced(q)) return false;

    Matrix<Poly<Rational>> pm = q.to_poly_matrix();
    ZPoly g;  // gcd accumulator, zero polynomial initially
    bool any_nonzero = false;
    auto fold_minor = [&](const std::vector<std::size_t>& sel) {
        Matrix<Poly<Rational>> sub(r, r);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < r; ++j) sub(i, j) = pm(i, sel[j]);
        Poly<Rational> minor = bareiss_det(std::move(sub));
        if (minor.is_zero()) return false;
        any_nonzero = true;
        g = z_gcd(std::move(g), to_integer_primitive(minor));
        return g.size() == 1;  // constant gcd, no common finite root left
    };

    // Probe the trailing column block first: for reversed/Lambda-shaped bases
    // the unimodular minor sits at the back and ends the scan immediately.
    std::vector<std::size_t> tail(r);
    for (std::size_t i = 0; i < r; ++i) tail[i] = c - r + i;
    if (r < c && fold_minor(tail)) return true;

    std::vector<std::size_t> sel(r);
    for (std::size_t i = 0; i < r; ++i) sel[i] = i;
    while (true) {
        if (fold_minor(sel)) break;
        if (!detail::next_combination(sel, c)) break;
    }
    return any_nonzero && g.size() == 1;
}

// Validated (K, N) pair with K * N^T = 0 plus certification metadata.
struct DualPair {
    MatrixPoly<Rational> K, N;
    bool certified = false;
    std::vector<std::string> failures;
    std::optional<std::size_t> k_row_degree, n_row_degree;  // set when constant

    std::size_t m1() const { return K.rows(); }
    std::size_t m2() const { return N.rows(); }
};

namespace detail {

inline std::optional<std::size_t> uniform_degree(const MatrixPoly<Rational>& q) {
    if (q.rows() == 0) return 0;  // vacuously constant
    std::vector<std::size_t> deg = q.row_degrees();
    for (std::size_t d : deg)
        if (d != deg[0]) return std::nullopt;
    return deg[0];
}

}  // namespace detail

// The trivial pair with an empty K and N = I_n: the degenerate side of a
// one-sided block minimal bases polynomial.
inline DualPair identity_dual_pair(std::size_t n) {
    DualPair p{MatrixPoly<Rational>(0, n, 0), identity_poly<Rational>(n)};
    p.certified = true;
    p.k_row_degree = 0;
    p.n_row_degree = 0;
    return p;
}

inline DualPair is_dual_pair(const MatrixPoly<Rational>& K, const MatrixPoly<Rational>& N,
                             unsigned long long minor_guard = 5000) {
    if (K.cols() != N.cols()) throw std::invalid_argument("minbases: dual pair column counts differ");
    DualPair pair{K, N};
    if (K.rows() + N.rows() != K.cols())
        pair.failures.push_back("row counts do not sum to the column count");
    if (!(K * N.transpose()).is_zero()) pair.failures.push_back("K * N^T is not zero");
    const std::pair<const char*, const MatrixPoly<Rational>*> sides[] = {{"K", &K}, {"N", &N}};
    for (const auto& [name, q] : sides) {
        try {
            if (!is_minimal_basis(*q, minor_guard))
                pair.failures.push_back(std::string(name) + " is not a minimal basis");
        } catch (const std::exception& e) {
            pair.failures.push_back(std::string(name) + ": " + e.what());
        }
    }
    pair.certified = pair.failures.empty();
    try {
        pair.k_row_degree = detail::uniform_degree(K);
        pair.n_row_degree = detail::uniform_degree(N);
    } catch (const std::exception&) {
        // zero rows already reported through the minimal-basis check
    }
    return pair;
}

// Reversing both members at their (constant) row degrees must give a dual
// pair again.
inline bool reversal_dual_check(const DualPair& pair, unsigned long long minor_guard = 5000) {
    if (!pair.certified) throw std::invalid_argument("minbases: reversal check needs a certified pair");
    if (!pair.k_row_degree || !pair.n_row_degree)
        throw std::invalid_argument("minbases: reversal check needs constant row degrees");
    MatrixPoly<Rational> rk = pair.K.reversal(*pair.k_row_degree);
    MatrixPoly<Rational> rn = pair.N.reversal(*pair.n_row_degree);
    return is_dual_pair(rk, rn, minor_guard).certified;
}

// Unimodular embedding U = [K; K_hat], U^{-1} = [N_hat^T, N^T].
struct EmbeddingPair {
    MatrixPoly<Rational> U, U_inv;
    std::size_t k_rows = 0;  // rows of the K block in U

    MatrixPoly<Rational> K() const { return sub_rows(U, 0, k_rows); }
    MatrixPoly<Rational> K_hat() const { return sub_rows(U, k_rows, U.rows() - k_rows); }
    MatrixPoly<Rational> N_hat_T() const { return sub_cols(U_inv, 0, k_rows); }
    MatrixPoly<Rational> N_T() const { return sub_cols(U_inv, k_rows, U.cols() - k_rows); }
};

// Validates U * U_inv = I and the block partition before accepting a
// user-supplied embedding.
inline EmbeddingPair make_embedding(MatrixPoly<Rational> U, MatrixPoly<Rational> U_inv,
                                    std::size_t k_rows) {
    if (U.rows() != U.cols() || U_inv.rows() != U_inv.cols() || U.rows() != U_inv.rows())
        throw std::invalid_argument("minbases: embedding factors must be square of equal size");
    if (k_rows > U.rows()) throw std::invalid_argument("minbases: embedding partition out of range");
    if (U * U_inv != identity_poly<Rational>(U.rows()))
        throw std::invalid_argument("minbases: embedding factors are not mutually inverse");
    return EmbeddingPair{std::move(U), std::move(U_inv), k_rows};
}

// The explicit embedding of the pair (L_k(lambda^l) (x) I_p,
// Lambda_k(lambda^l)^T (x) I_p): U stacks the wing over e_{k+1}^T (x) I_p,
// and U^{-1} is upper triangular in -lambda^(jl) monomials with last block
// column Lambda_k(lambda^l) (x) I_p.
inline EmbeddingPair kronecker_embedding(std::size_t k, std::size_t l, std::size_t p) {
    if (k < 1 || l < 1 || p < 1)
        throw std::invalid_argument("minbases: kronecker_embedding needs k, l, p >= 1");
    MatrixPoly<Rational> wing = make_Lk<Rational>(k).substitute_power(l).kron_identity_right(p);
    MatrixPoly<Rational> last(p, (k + 1) * p, 0);
    for (std::size_t a = 0; a < p; ++a) last.coeff(0)(a, k * p + a) = Rational(1);
    MatrixPoly<Rational> U = vstack(wing, last);

    MatrixPoly<Rational> U_inv((k + 1) * p, (k + 1) * p, k * l);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i; j < k; ++j)
            for (std::size_t a = 0; a < p; ++a)
                U_inv.coeff((j - i) * l)(i * p + a, j * p + a) = Rational(-1);
        for (std::size_t a = 0; a < p; ++a)
            U_inv.coeff((k - i) * l)(i * p + a, k * p + a) = Rational(1);
    }
    for (std::size_t a = 0; a < p; ++a) U_inv.coeff(0)(k * p + a, k * p + a) = Rational(1);
    return EmbeddingPair{std::move(U), std::move(U_inv), k * p};
}

// One admissible (m1, m2, epsilon, eta) solution of the degree/size system
// l*m1 = n*epsilon, l*m2 = m*eta, epsilon + eta = d - l. Here epsilon and
// eta are the row degrees of the dual bases.
struct LIficationParameters {
    std::size_t m1, m2, epsilon, eta;
    std::size_t gamma;
};

inline std::vector<LIficationParameters> enumerate_parameters(std::size_t m, std::size_t n,
                                                              std::size_t d, std::size_t l) {
    if (l < 1 || d <= l) throw std::invalid_argument("minbases: enumerate_parameters needs d > l >= 1");
    if ((m * d) % l != 0)
        throw std::invalid_argument(
            "minbases: l must divide m*d (transpose the polynomial when l divides n*d instead)");
    std::size_t g = std::gcd(l, std::gcd(n, m));
    std::size_t gamma = l / g;
    std::vector<LIficationParameters> out;
    for (std::size_t k = 0; k <= (d - l) / gamma; ++k) {
        std::size_t eps = k * gamma;
        std::size_t eta = d - l - eps;
        out.push_back({n * eps / l, m * eta / l, eps, eta, gamma});
    }
    return out;
}

}  // namespace ellify
