#pragma once

// Worked examples shipped with the library: the symmetric strong
// quadratification of diag(lambda^4, 0), the three grade-6 companion forms
// of degrees 1, 2 and 3, and the symmetric companion quadratification for
// grade 10. The demo subcommand prints them and runs the verifier.

#include "ellify/constructors.hpp"
#include "ellify/verify.hpp"

namespace ellify {

struct QuadratificationExample {
    MatrixPoly<Rational> target;  // diag(lambda^4, 0)
    DualPair pair;                // K = [1, -x, x^2], N = [[x,1,0],[0,x,1]]
    EmbeddingPair embedding;
    StrongBlockMinimalBases form;  // the printed symmetric 4x4 quadratification
};

inline QuadratificationExample example_symmetric_quadratification() {
    MatrixPoly<Rational> p(2, 2, 4);
    p.coeff(4)(0, 0) = Rational(1);

    MatrixPoly<Rational> k(1, 3, 2);
    k.coeff(0)(0, 0) = Rational(1);
    k.coeff(1)(0, 1) = Rational(-1);
    k.coeff(2)(0, 2) = Rational(1);
    MatrixPoly<Rational> n(2, 3, 1);
    n.coeff(1)(0, 0) = Rational(1);
    n.coeff(0)(0, 1) = Rational(1);
    n.coeff(1)(1, 1) = Rational(1);
    n.coeff(0)(1, 2) = Rational(1);
    DualPair pair = is_dual_pair(k, n);

    // U = [K; K_hat] with K_hat = [[0,1,-x],[0,0,1]]; U^{-1} = [N_hat^T, N^T].
    MatrixPoly<Rational> u(3, 3, 2);
    u.coeff(0)(0, 0) = Rational(1);
    u.coeff(1)(0, 1) = Rational(-1);
    u.coeff(2)(0, 2) = Rational(1);
    u.coeff(0)(1, 1) = Rational(1);
    u.coeff(1)(1, 2) = Rational(-1);
    u.coeff(0)(2, 2) = Rational(1);
    MatrixPoly<Rational> uinv(3, 3, 1);
    uinv.coeff(0)(0, 0) = Rational(1);
    uinv.coeff(1)(0, 1) = Rational(1);
    uinv.coeff(0)(1, 1) = Rational(1);
    uinv.coeff(1)(1, 2) = Rational(1);
    uinv.coeff(0)(2, 2) = Rational(1);
    EmbeddingPair emb = make_embedding(u, uinv, 1);

    MatrixPoly<Rational> m(3, 3, 2);
    m.coeff(2)(0, 0) = Rational(1);
    StrongBlockMinimalBases form = assemble_sbmb(m, pair, pair, 2, emb, emb);
    return {std::move(p), std::move(pair), std::move(emb), std::move(form)};
}

// The three companion forms of a grade-6 polynomial: a strong linearization
// L, a strong quadratification Q and a strong 3-ification C, with the (1,1)
// blocks exactly as printed.
inline BlockKronecker example_grade6_linearization(const MatrixPoly<Rational>& p) {
    if (p.grade() != 6) throw std::invalid_argument("demo: the example needs grade 6");
    const std::size_t m = p.rows(), n = p.cols();
    MatrixPoly<Rational> mm(3 * m, 4 * n, 1);
    mm.coeff(1).set_block(0, 0, p.coeff(6));
    mm.coeff(1).set_block(m, 0, p.coeff(5));
    mm.coeff(1).set_block(m, n, p.coeff(4));
    mm.coeff(1).set_block(2 * m, n, p.coeff(3));
    mm.coeff(1).set_block(2 * m, 2 * n, p.coeff(2));
    mm.coeff(1).set_block(2 * m, 3 * n, p.coeff(1));
    mm.coeff(0).set_block(2 * m, 3 * n, p.coeff(0));
    return BlockKronecker{3, 2, 1, m, n, std::move(mm)};
}

inline BlockKronecker example_grade6_quadratification(const MatrixPoly<Rational>& p) {
    if (p.grade() != 6) throw std::invalid_argument("demo: the example needs grade 6");
    const std::size_t m = p.rows(), n = p.cols();
    MatrixPoly<Rational> mm(2 * m, 2 * n, 2);
    mm.coeff(2).set_block(0, 0, p.coeff(6));
    mm.coeff(1).set_block(0, 0, p.coeff(5));
    mm.coeff(1).set_block(0, n, p.coeff(3));
    mm.coeff(0).set_block(0, n, p.coeff(2));
    mm.coeff(2).set_block(m, 0, p.coeff(4));
    mm.coeff(1).set_block(m, n, p.coeff(1));
    mm.coeff(0).set_block(m, n, p.coeff(0));
    return BlockKronecker{1, 1, 2, m, n, std::move(mm)};
}

inline BlockKronecker example_grade6_cubification(const MatrixPoly<Rational>& p) {
    if (p.grade() != 6) throw std::invalid_argument("demo: the example needs grade 6");
    const std::size_t m = p.rows(), n = p.cols();
    MatrixPoly<Rational> mm(m, 2 * n, 3);
    mm.coeff(3).set_block(0, 0, p.coeff(6));
    mm.coeff(2).set_block(0, 0, p.coeff(5));
    mm.coeff(1).set_block(0, 0, p.coeff(4));
    mm.coeff(0).set_block(0, 0, p.coeff(3));
    mm.coeff(2).set_block(0, n, p.coeff(2));
    mm.coeff(1).set_block(0, n, p.coeff(1));
    mm.coeff(0).set_block(0, n, p.coeff(0));
    return BlockKronecker{1, 0, 3, m, n, std::move(mm)};
}

// Grade-10 symmetric companion quadratification (the d = 4k+2 template).
inline BlockKronecker example_grade10_symmetric(const MatrixPoly<Rational>& p) {
    if (p.grade() != 10) throw std::invalid_argument("demo: the example needs grade 10");
    return symmetric_companion_quadratification(p).form;
}

// Scalar stand-in polynomial with distinct prime coefficients, handy for
// printing templates in a recognizable way.
inline MatrixPoly<Rational> prime_coefficient_poly(std::size_t grade) {
    static const long primes[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29,
                                  31, 37, 41, 43, 47, 53, 59, 61, 67, 71};
    if (grade + 1 > sizeof(primes) / sizeof(primes[0]))
        throw std::invalid_argument("demo: grade too large for the stand-in");
    MatrixPoly<Rational> p(1, 1, grade);
    for (std::size_t i = 0; i <= grade; ++i) p.coeff(i)(0, 0) = Rational(primes[i]);
    return p;
}

}  // namespace ellify
