#include <catch2/catch_amalgamated.hpp>

#include "ellify/recovery.hpp"
#include "test_support.hpp"

using namespace ellify;
using test_support::random_matrix_poly;

namespace {

// The symmetric quadratification of diag(lambda^4, 0) with its explicit
// unimodular embedding U = [K; K_hat], U^{-1} = [N_hat^T, N^T].
StrongBlockMinimalBases example_sbmb() {
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

    // U = [[1,-l,l^2],[0,1,-l],[0,0,1]], U^{-1} = [[1,l,0],[0,1,l],[0,0,1]]
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
    return assemble_sbmb(m, pair, pair, 2, emb, emb);
}

MatrixPoly<Rational> diag_lambda4(std::size_t grade = 4) {
    MatrixPoly<Rational> p(2, 2, grade);
    p.coeff(4)(0, 0) = Rational(1);
    return p;
}

// 2x2 singular polynomial with the known right null vector h = [-b; 1]:
// P = A * diag(f, 0) * [[1, b], [0, 1]].
struct SingularInstance {
    MatrixPoly<Rational> p, h;
};

SingularInstance random_singular(std::size_t f_deg, std::size_t b_deg) {
    MatrixPoly<Rational> f = random_matrix_poly(1, 1, f_deg);
    f.coeff(f_deg)(0, 0) = Rational(1);
    MatrixPoly<Rational> b = random_matrix_poly(1, 1, b_deg);
    MatrixPoly<Rational> a = random_matrix_poly(2, 2, 1);
    while (det(a.evaluate(Rational(0))).is_zero() && det(a.evaluate(Rational(1))).is_zero())
        a = random_matrix_poly(2, 2, 1);
    MatrixPoly<Rational> core(2, 2, f_deg);
    set_poly_block(core, 0, 0, f);
    MatrixPoly<Rational> bmat(2, 2, b_deg);
    bmat.coeff(0)(0, 0) = Rational(1);
    bmat.coeff(0)(1, 1) = Rational(1);
    set_poly_block(bmat, 0, 1, b);
    MatrixPoly<Rational> h(2, 1, b_deg);
    set_poly_block(h, 0, 0, -b);
    h.coeff(0)(1, 0) = Rational(1);
    return {a * core * bmat, h};
}

}  // namespace

TEST_CASE("minimal_indices_of") {
    Eigenstructure e = minimal_indices_of(diag_lambda4());
    CHECK(e.normal_rank == 1);
    CHECK(e.right_minimal_indices == std::vector<std::size_t>{0});
    CHECK(e.left_minimal_indices == std::vector<std::size_t>{0});

    // P = [lambda, lambda^2]: right minimal index {1}, no left indices
    MatrixPoly<Rational> p(1, 2, 2);
    p.coeff(1)(0, 0) = Rational(1);
    p.coeff(2)(0, 1) = Rational(1);
    Eigenstructure e2 = minimal_indices_of(p);
    CHECK(e2.normal_rank == 1);
    CHECK(e2.right_minimal_indices == std::vector<std::size_t>{1});
    CHECK(e2.left_minimal_indices.empty());

    // regular polynomial: both sides empty
    MatrixPoly<Rational> reg = random_matrix_poly(2, 2, 3);
    reg.coeff(0) = Matrix<Rational>::identity(2);
    Eigenstructure e3 = minimal_indices_of(reg);
    CHECK(e3.normal_rank == 2);
    CHECK(e3.right_minimal_indices.empty());
    CHECK(e3.left_minimal_indices.empty());
}

TEST_CASE("minimal index shift law on the quadratification") {
    StrongBlockMinimalBases s = example_sbmb();
    RecoveryContext ctx = make_recovery_context(s);
    CHECK(ctx.deg_n1 == 1);
    CHECK(ctx.deg_n2 == 1);

    Eigenstructure ep = minimal_indices_of(diag_lambda4());
    Eigenstructure el = minimal_indices_of(s.assembled());
    CHECK(el.right_minimal_indices ==
          shift_minimal_indices(ep.right_minimal_indices, ctx, Side::right));
    CHECK(el.left_minimal_indices ==
          shift_minimal_indices(ep.left_minimal_indices, ctx, Side::left));
    CHECK(el.right_minimal_indices == std::vector<std::size_t>{1});
    CHECK(el.left_minimal_indices == std::vector<std::size_t>{1});

    // inverse direction returns to P, and errors when over-shifted
    CHECK(shift_minimal_indices(el.right_minimal_indices, ctx, Side::right, true) ==
          ep.right_minimal_indices);
    RecoveryContext big = ctx;
    big.deg_n1 = 5;
    CHECK_THROWS(shift_minimal_indices(el.right_minimal_indices, big, Side::right, true));
}

TEST_CASE("minimal index shift law on block Kronecker companions") {
    // grade-6 declared diag(lambda^4, 0) under the eps = eta = 1, ell = 2 companion
    MatrixPoly<Rational> p = diag_lambda4(6);
    BlockKronecker bk = block_kronecker_companion(p, 1, 1, 2);
    RecoveryContext ctx = make_recovery_context(bk);
    Eigenstructure ep = minimal_indices_of(p);
    Eigenstructure el = minimal_indices_of(bk.assembled());
    CHECK(ep.right_minimal_indices == std::vector<std::size_t>{0});
    CHECK(el.right_minimal_indices == std::vector<std::size_t>{2});
    CHECK(el.right_minimal_indices ==
          shift_minimal_indices(ep.right_minimal_indices, ctx, Side::right));
    CHECK(el.left_minimal_indices ==
          shift_minimal_indices(ep.left_minimal_indices, ctx, Side::left));

    for (int it = 0; it < 5; ++it) {
        SingularInstance inst = random_singular(2, 1);
        MatrixPoly<Rational> q = inst.p.with_grade(6);
        BlockKronecker kb = block_kronecker_companion(q, 2, 0, 2);
        RecoveryContext kctx = make_recovery_context(kb);
        Eigenstructure eq = minimal_indices_of(q);
        Eigenstructure ekb = minimal_indices_of(kb.assembled());
        CHECK(ekb.right_minimal_indices ==
              shift_minimal_indices(eq.right_minimal_indices, kctx, Side::right));
        CHECK(ekb.left_minimal_indices ==
              shift_minimal_indices(eq.left_minimal_indices, kctx, Side::left));
    }
}

TEST_CASE("lift_right_null_vector on the quadratification") {
    StrongBlockMinimalBases s = example_sbmb();
    MatrixPoly<Rational> h(2, 1, 0);
    h.coeff(0)(1, 0) = Rational(1);
    MatrixPoly<Rational> z = lift_right_null_vector(s, h);
    REQUIRE(z.rows() == 4);
    // z = [0; lambda; 1; 0]
    MatrixPoly<Rational> expect(4, 1, 1);
    expect.coeff(1)(1, 0) = Rational(1);
    expect.coeff(0)(2, 0) = Rational(1);
    CHECK(z == expect);
    CHECK((s.assembled() * z).is_zero());
    REQUIRE(z.degree().has_value());
    CHECK(*z.degree() == 1);

    MatrixPoly<Rational> zero(2, 1, 0);
    CHECK_THROWS(lift_right_null_vector(s, zero));
    MatrixPoly<Rational> notnull(2, 1, 0);
    notnull.coeff(0)(0, 0) = Rational(1);
    CHECK_THROWS(lift_right_null_vector(s, notnull));
}

TEST_CASE("lift degree law on random singular instances") {
    for (int it = 0; it < 10; ++it) {
        SingularInstance inst = random_singular(2, 1 + it % 2);
        MatrixPoly<Rational> q = inst.p.with_grade(6);
        BlockKronecker bk = block_kronecker_companion(q, 1, 1, 2);
        StrongBlockMinimalBases s = bk.as_sbmb();
        MatrixPoly<Rational> z = lift_right_null_vector(s, inst.h);
        CHECK((s.assembled() * z).is_zero());
        CHECK(*z.degree() == 2 + *inst.h.degree());  // deg N1 = eps*ell = 2
    }
}

TEST_CASE("kronecker extraction undoes the lift") {
    MatrixPoly<Rational> p = diag_lambda4(6);
    BlockKronecker bk = block_kronecker_companion(p, 1, 1, 2);
    StrongBlockMinimalBases s = bk.as_sbmb();
    RecoveryContext ctx = make_recovery_context(bk);

    MatrixPoly<Rational> h(2, 1, 0);
    h.coeff(0)(1, 0) = Rational(1);
    MatrixPoly<Rational> z = lift_right_null_vector(s, h);
    auto extracted = extract_minimal_basis_kronecker({z}, ctx, Side::right, &p);
    REQUIRE(extracted.size() == 1);
    CHECK(extracted[0] == h);

    CHECK(extract_minimal_basis_kronecker({}, ctx, Side::right).empty());

    // left side: the target is symmetric, so the lift of the transpose works
    StrongBlockMinimalBases st = transpose_construction(s);
    MatrixPoly<Rational> w = lift_right_null_vector(st, h);
    auto wleft = extract_minimal_basis_kronecker({w}, ctx, Side::left, &p);
    REQUIRE(wleft.size() == 1);
    CHECK(wleft[0] == h);
}

TEST_CASE("general recovery matches kronecker extraction and the 5.5 example") {
    // Example quadratification end-to-end through the embeddings
    StrongBlockMinimalBases s = example_sbmb();
    MatrixPoly<Rational> h(2, 1, 0);
    h.coeff(0)(1, 0) = Rational(1);
    MatrixPoly<Rational> z = lift_right_null_vector(s, h);
    MatrixPoly<Rational> rq = recover_minimal_basis_general(z, s, Side::right);
    CHECK(rq == h);

    // Kronecker specialization: [K_hat_1, 0] selects the (eps+1)-th block
    MatrixPoly<Rational> p = diag_lambda4(6);
    BlockKronecker bk = block_kronecker_companion(p, 1, 1, 2);
    StrongBlockMinimalBases sk = bk.as_sbmb();
    RecoveryContext ctx = make_recovery_context(bk);
    MatrixPoly<Rational> zk = lift_right_null_vector(sk, h);
    MatrixPoly<Rational> via_general = recover_minimal_basis_general(zk, sk, Side::right);
    auto via_kron = extract_minimal_basis_kronecker({zk}, ctx, Side::right, &p);
    CHECK(via_general == via_kron[0]);
    CHECK(via_general == h);

    // uncertified input is rejected
    MatrixPoly<Rational> junk = random_matrix_poly(zk.rows(), 1, 1);
    CHECK_THROWS(recover_minimal_basis_general(junk, sk, Side::right));
}

TEST_CASE("eigenvector recovery, finite and infinite") {
    // P = (lambda^2 - 1) I_2 with the ell = 1, eps = 1, eta = 0 companion
    MatrixPoly<Rational> p(2, 2, 2);
    p.coeff(2) = Matrix<Rational>::identity(2);
    p.coeff(0) = -Matrix<Rational>::identity(2);
    BlockKronecker bk = block_kronecker_companion(p, 1, 0, 1);
    RecoveryContext ctx = make_recovery_context(bk);
    MatrixPoly<Rational> l = bk.assembled();

    Matrix<Rational> z(4, 1);
    z(0, 0) = Rational(1);
    z(2, 0) = Rational(1);  // z = Lambda_1(1) (x) x with x = e_1
    CHECK(l.evaluate(Rational(1)) * z == Matrix<Rational>(4, 1));
    Matrix<Rational> x =
        recover_eigenvector(l, z, std::optional<Rational>(Rational(1)), ctx, Side::right);
    CHECK(x(0, 0) == Rational(1));
    CHECK(x(1, 0) == Rational(0));

    // scaling invariance
    Matrix<Rational> x3 =
        recover_eigenvector(l, z * Rational(3), std::optional<Rational>(Rational(1)), ctx,
                            Side::right);
    CHECK(x3(0, 0) == Rational(3));

    // infinite eigenvalue: leading coefficient diag(1, 0) has null vector e_2
    MatrixPoly<Rational> pinf = random_matrix_poly(2, 2, 2);
    pinf.coeff(2) = Matrix<Rational>(2, 2);
    pinf.coeff(2)(0, 0) = Rational(1);
    BlockKronecker bkinf = frobenius_companion(pinf, CompanionSide::first);
    RecoveryContext ctxinf = make_recovery_context(bkinf);
    MatrixPoly<Rational> linf = bkinf.assembled();
    Matrix<Rational> zinf(4, 1);
    zinf(1, 0) = Rational(1);  // [x; 0] with P_2 x = 0
    REQUIRE((linf.coeff(1) * zinf).is_zero());
    Matrix<Rational> xinf = recover_eigenvector(linf, zinf, std::optional<Rational>(), ctxinf,
                                                Side::right);
    CHECK(xinf(0, 0) == Rational(0));
    CHECK(xinf(1, 0) == Rational(1));
    CHECK((pinf.coeff(2) * xinf).is_zero());  // rev P at 0

    // non-eigenvector input is rejected
    Matrix<Rational> bad(4, 1);
    bad(0, 0) = Rational(1);
    CHECK_THROWS(recover_eigenvector(l, bad, std::optional<Rational>(Rational(1)), ctx,
                                     Side::right));
}

TEST_CASE("one-sided factorizations have zero residual") {
    StrongBlockMinimalBases s = example_sbmb();
    auto [r1, r2] = one_sided_residuals(s);
    CHECK(r1.is_zero());
    CHECK(r2.is_zero());

    for (int it = 0; it < 5; ++it) {
        MatrixPoly<Rational> p = random_matrix_poly(2, 2, 6);
        StrongBlockMinimalBases sk = block_kronecker_companion(p, 1, 1, 2).as_sbmb();
        auto [k1, k2] = one_sided_residuals(sk);
        CHECK(k1.is_zero());
        CHECK(k2.is_zero());

        auto [f1, f2] = one_sided_residual_norms_f64(sk);
        CHECK(f1 <= 1e-12);
        CHECK(f2 <= 1e-12);

        // degenerate forms
        StrongBlockMinimalBases c1 = frobenius_companion(p, CompanionSide::first).as_sbmb();
        auto [d1, d2] = one_sided_residuals(c1);
        CHECK(d1.is_zero());
        CHECK(d2.is_zero());
    }
}
