#include <catch2/catch_amalgamated.hpp>

#include <array>

#include "ellify/constructors.hpp"
#include "test_support.hpp"

using namespace ellify;
using test_support::random_matrix_poly;

namespace {

DualPair symmetric_pair() {
    MatrixPoly<Rational> k(1, 3, 2);
    k.coeff(0)(0, 0) = Rational(1);
    k.coeff(1)(0, 1) = Rational(-1);
    k.coeff(2)(0, 2) = Rational(1);
    MatrixPoly<Rational> n(2, 3, 1);
    n.coeff(1)(0, 0) = Rational(1);
    n.coeff(0)(0, 1) = Rational(1);
    n.coeff(1)(1, 1) = Rational(1);
    n.coeff(0)(1, 2) = Rational(1);
    return is_dual_pair(k, n);
}

MatrixPoly<Rational> diag_lambda4() {
    MatrixPoly<Rational> p(2, 2, 4);
    p.coeff(4)(0, 0) = Rational(1);
    return p;
}

// M block of the quadratification Q(lambda) from the three-form grade-6
// example: [[l^2 P6 + l P5, l P3 + P2], [l^2 P4, l P1 + P0]].
MatrixPoly<Rational> example_q_block(const MatrixPoly<Rational>& p) {
    const std::size_t m = p.rows(), n = p.cols();
    MatrixPoly<Rational> mm(2 * m, 2 * n, 2);
    mm.coeff(2).set_block(0, 0, p.coeff(6));
    mm.coeff(1).set_block(0, 0, p.coeff(5));
    mm.coeff(1).set_block(0, n, p.coeff(3));
    mm.coeff(0).set_block(0, n, p.coeff(2));
    mm.coeff(2).set_block(m, 0, p.coeff(4));
    mm.coeff(1).set_block(m, n, p.coeff(1));
    mm.coeff(0).set_block(m, n, p.coeff(0));
    return mm;
}

}  // namespace

TEST_CASE("assemble_sbmb reproduces the symmetric quadratification") {
    DualPair pair = symmetric_pair();
    MatrixPoly<Rational> m(3, 3, 2);
    m.coeff(2)(0, 0) = Rational(1);
    StrongBlockMinimalBases s = assemble_sbmb(m, pair, pair, 2);
    CHECK(s.strong);
    CHECK(s.m() == 2);
    CHECK(s.n() == 2);

    MatrixPoly<Rational> l = s.assembled();
    REQUIRE(l.rows() == 4);
    REQUIRE(l.cols() == 4);
    // [[l^2, 0, 0, 1], [0, 0, 0, -l], [0, 0, 0, l^2], [1, -l, l^2, 0]]
    MatrixPoly<Rational> expect(4, 4, 2);
    expect.coeff(2)(0, 0) = Rational(1);
    expect.coeff(0)(0, 3) = Rational(1);
    expect.coeff(1)(1, 3) = Rational(-1);
    expect.coeff(2)(2, 3) = Rational(1);
    expect.coeff(0)(3, 0) = Rational(1);
    expect.coeff(1)(3, 1) = Rational(-1);
    expect.coeff(2)(3, 2) = Rational(1);
    CHECK(l == expect);
    CHECK(l == l.transpose());

    MatrixPoly<Rational> q = q_of(s);
    CHECK(q.grade() == 4);
    CHECK(q == diag_lambda4());
}

TEST_CASE("assembly succeeds with non-uniform wing degrees but is not strong") {
    // K = [[1, 0, 0], [0, 1, -lambda]], N = [[0, lambda, 1]]: K N^T = 0,
    // both minimal bases, K row degrees (0, 1).
    MatrixPoly<Rational> k(2, 3, 1);
    k.coeff(0)(0, 0) = Rational(1);
    k.coeff(0)(1, 1) = Rational(1);
    k.coeff(1)(1, 2) = Rational(-1);
    MatrixPoly<Rational> n(1, 3, 1);
    n.coeff(1)(0, 1) = Rational(1);
    n.coeff(0)(0, 2) = Rational(1);
    DualPair pair = is_dual_pair(k, n);
    REQUIRE(pair.certified);
    CHECK(!pair.k_row_degree.has_value());

    MatrixPoly<Rational> m = random_matrix_poly(2, 3, 1);
    StrongBlockMinimalBases s = assemble_sbmb(m, pair, std::nullopt, 1);
    CHECK(!s.strong);
    CHECK(s.assembled().rows() == 4);
}

TEST_CASE("frobenius companion forms") {
    for (int it = 0; it < 10; ++it) {
        std::size_t d = 2 + it % 4;
        MatrixPoly<Rational> p = random_matrix_poly(2, 3, d);
        BlockKronecker c1 = frobenius_companion(p, CompanionSide::first);
        CHECK(c1.epsilon == d - 1);
        CHECK(c1.eta == 0);
        CHECK(q_of(c1.as_sbmb()) == p);
        CHECK(c1.as_sbmb().strong);

        BlockKronecker c2 = frobenius_companion(p, CompanionSide::second);
        CHECK(c2.epsilon == 0);
        CHECK(c2.eta == d - 1);
        CHECK(q_of(c2.as_sbmb()) == p);
    }

    // d = 2 printed template: C1 = [[lA+B, C], [-I, lI]]
    MatrixPoly<Rational> p = random_matrix_poly(2, 2, 2);
    MatrixPoly<Rational> l = frobenius_companion(p, CompanionSide::first).assembled();
    REQUIRE(l.rows() == 4);
    CHECK(l.coeff(1).block(0, 0, 2, 2) == p.coeff(2));
    CHECK(l.coeff(0).block(0, 0, 2, 2) == p.coeff(1));
    CHECK(l.coeff(0).block(0, 2, 2, 2) == p.coeff(0));
    CHECK(l.coeff(0).block(2, 0, 2, 2) == -Matrix<Rational>::identity(2));
    CHECK(l.coeff(1).block(2, 2, 2, 2) == Matrix<Rational>::identity(2));

    // C2 mirrors it with [lA+B; C] in the first block column
    MatrixPoly<Rational> l2 = frobenius_companion(p, CompanionSide::second).assembled();
    REQUIRE(l2.rows() == 4);
    CHECK(l2.coeff(1).block(0, 0, 2, 2) == p.coeff(2));
    CHECK(l2.coeff(0).block(0, 0, 2, 2) == p.coeff(1));
    CHECK(l2.coeff(0).block(2, 0, 2, 2) == p.coeff(0));
    CHECK(l2.coeff(0).block(0, 2, 2, 2) == -Matrix<Rational>::identity(2));
    CHECK(l2.coeff(1).block(2, 2, 2, 2) == Matrix<Rational>::identity(2));

    CHECK_THROWS(frobenius_companion(random_matrix_poly(2, 2, 1), CompanionSide::first));
}

TEST_CASE("frobenius-like companion forms") {
    MatrixPoly<Rational> p = random_matrix_poly(2, 2, 6);
    BlockKronecker f = frobenius_like_ellification(p, 2, CompanionSide::first);
    MatrixPoly<Rational> l = f.assembled();
    REQUIRE(l.rows() == 6);
    REQUIRE(l.cols() == 6);
    // top row of blocks: B3, B2, B1
    CHECK(l.coeff(2).block(0, 0, 2, 2) == p.coeff(6));
    CHECK(l.coeff(1).block(0, 0, 2, 2) == p.coeff(5));
    CHECK(l.coeff(2).block(0, 2, 2, 2) == p.coeff(4));
    CHECK(l.coeff(1).block(0, 2, 2, 2) == p.coeff(3));
    CHECK(l.coeff(2).block(0, 4, 2, 2) == p.coeff(2));
    CHECK(l.coeff(1).block(0, 4, 2, 2) == p.coeff(1));
    CHECK(l.coeff(0).block(0, 4, 2, 2) == p.coeff(0));
    // wing: [-I, l^2 I, 0; 0, -I, l^2 I]
    CHECK(l.coeff(0).block(2, 0, 2, 2) == -Matrix<Rational>::identity(2));
    CHECK(l.coeff(2).block(2, 2, 2, 2) == Matrix<Rational>::identity(2));
    CHECK(l.coeff(0).block(4, 2, 2, 2) == -Matrix<Rational>::identity(2));
    CHECK(l.coeff(2).block(4, 4, 2, 2) == Matrix<Rational>::identity(2));

    for (std::size_t d : {4, 6, 8, 12})
        for (std::size_t ell = 1; ell < d; ++ell) {
            if (d % ell != 0) continue;
            MatrixPoly<Rational> q = random_matrix_poly(1 + d % 2, 2, d);
            CHECK(q_of(frobenius_like_ellification(q, ell, CompanionSide::first).as_sbmb()) == q);
            CHECK(q_of(frobenius_like_ellification(q, ell, CompanionSide::second).as_sbmb()) == q);
        }

    CHECK_THROWS(frobenius_like_ellification(p, 6, CompanionSide::first));  // k = 1
    CHECK_THROWS(frobenius_like_ellification(p, 4, CompanionSide::first));  // 4 does not divide 6
}

TEST_CASE("sigma_block") {
    MatrixPoly<Rational> p = random_matrix_poly(2, 2, 6);
    MatrixPoly<Rational> s = sigma_block(p, 1, 1, 2);
    REQUIRE(s.rows() == 4);
    REQUIRE(s.cols() == 4);
    CHECK(s.coeff(2).block(0, 0, 2, 2) == p.coeff(6));
    CHECK(s.coeff(1).block(0, 0, 2, 2) == p.coeff(5));
    CHECK(s.coeff(2).block(0, 2, 2, 2) == p.coeff(4));
    CHECK(s.coeff(1).block(0, 2, 2, 2) == p.coeff(3));
    CHECK(s.coeff(2).block(2, 0, 2, 2).is_zero());
    CHECK(s.coeff(2).block(2, 2, 2, 2) == p.coeff(2));
    CHECK(s.coeff(1).block(2, 2, 2, 2) == p.coeff(1));
    CHECK(s.coeff(0).block(2, 2, 2, 2) == p.coeff(0));

    // eta = 0: a single block row
    MatrixPoly<Rational> row = sigma_block(p, 2, 0, 2);
    CHECK(row.rows() == 2);
    CHECK(row.cols() == 6);

    // xi_map inverts sigma_block across shapes
    for (std::size_t d : {2, 4, 6, 9, 12})
        for (std::size_t ell = 1; ell <= d; ++ell) {
            if (d % ell != 0) continue;
            std::size_t k = d / ell;
            for (std::size_t eps = 0; eps < k; ++eps) {
                MatrixPoly<Rational> q = random_matrix_poly(2, 1, d);
                MatrixPoly<Rational> sig = sigma_block(q, eps, k - 1 - eps, ell);
                CHECK(xi_map(sig, eps, k - 1 - eps, ell, 2, 1) == q);
            }
        }

    CHECK_THROWS(sigma_block(p, 1, 1, 3));
}

TEST_CASE("companion construction copies coefficients structurally") {
    // For a unit-coefficient P, the Sigma block holds exactly one nonzero
    // entry and it equals 1.
    const std::size_t m = 2, n = 2, d = 6, ell = 2;
    for (std::size_t t = 0; t <= d; ++t)
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                MatrixPoly<Rational> p = test_support::unit_poly(m, n, d, i, j, t);
                MatrixPoly<Rational> sig = sigma_block(p, 1, 1, ell);
                std::size_t nonzero = 0;
                for (std::size_t g = 0; g <= sig.grade(); ++g)
                    for (std::size_t a = 0; a < sig.rows(); ++a)
                        for (std::size_t b = 0; b < sig.cols(); ++b)
                            if (!sig.coeff(g)(a, b).is_zero()) {
                                ++nonzero;
                                CHECK(sig.coeff(g)(a, b) == Rational(1));
                            }
                CHECK(nonzero == 1);
            }
}

TEST_CASE("block_kronecker wing certification") {
    MatrixPoly<Rational> p = random_matrix_poly(2, 2, 6);
    for (auto [eps, eta, ell] : {std::array<std::size_t, 3>{1, 1, 2},
                                 std::array<std::size_t, 3>{2, 0, 2},
                                 std::array<std::size_t, 3>{3, 2, 1}}) {
        BlockKronecker bk = block_kronecker_companion(p, eps, eta, ell);
        StrongBlockMinimalBases s = bk.as_sbmb();
        CHECK(s.strong);
        if (s.pair1) CHECK(is_dual_pair(s.pair1->K, s.pair1->N).certified);
        if (s.pair2) CHECK(is_dual_pair(s.pair2->K, s.pair2->N).certified);
        CHECK(q_of(s) == p);
        CHECK(bk.target() == p);

        // re-assembly from freshly certified wings also flags strongness
        std::optional<DualPair> fresh1, fresh2;
        if (s.pair1) fresh1 = is_dual_pair(s.pair1->K, s.pair1->N);
        if (s.pair2) fresh2 = is_dual_pair(s.pair2->K, s.pair2->N);
        StrongBlockMinimalBases rebuilt =
            assemble_sbmb(bk.M, std::move(fresh1), std::move(fresh2), ell, s.emb1, s.emb2);
        CHECK(rebuilt.strong);
        CHECK(rebuilt.assembled() == s.assembled());
    }
}

TEST_CASE("block_kronecker_perturb preserves the target") {
    MatrixPoly<Rational> p = random_matrix_poly(2, 2, 6);
    BlockKronecker bk = block_kronecker_companion(p, 1, 1, 2);

    Matrix<Rational> zb(4, 2), zc(2, 4);
    MatrixPoly<Rational> zd(2, 2, 0);
    BlockKronecker same = block_kronecker_perturb(bk, zb, zc, zd);
    CHECK(same.M == bk.M);

    for (int it = 0; it < 20; ++it) {
        Matrix<Rational> b = test_support::random_matrix(4, 2);
        Matrix<Rational> c = test_support::random_matrix(2, 4);
        MatrixPoly<Rational> d = random_matrix_poly(2, 2, 0);
        BlockKronecker moved = block_kronecker_perturb(bk, b, c, d);
        CHECK(moved.M.grade() == 2);
        CHECK(moved.target() == p);
    }

    // ell = 1 accepts only (B, C)
    BlockKronecker lin = block_kronecker_companion(p, 3, 2, 1);
    Matrix<Rational> b1 = test_support::random_matrix(3 * 2, 3 * 2);
    Matrix<Rational> c1 = test_support::random_matrix(2 * 2, 4 * 2);
    CHECK(block_kronecker_perturb(lin, b1, c1).target() == p);
    CHECK_THROWS(block_kronecker_perturb(lin, b1, c1, MatrixPoly<Rational>(4, 6, 0)));
}

TEST_CASE("perturbation parameters are recoverable: example Q block membership") {
    MatrixPoly<Rational> p = random_matrix_poly(2, 2, 6);
    BlockKronecker sigma_form = block_kronecker_companion(p, 1, 1, 2);
    MatrixPoly<Rational> target_m = example_q_block(p);

    // Solve the linear system (B, C, D) -> M' - Sigma for the printed block.
    const std::size_t m = 2, n = 2, eps = 1, eta = 1, ell = 2;
    const std::size_t nb = (eta + 1) * m * (eps * n), nc = eta * m * (eps + 1) * n;
    const std::size_t nd = eta * m * eps * n * (ell - 1);
    const std::size_t unknowns = nb + nc + nd;
    const std::size_t rows = (eta + 1) * m * (eps + 1) * n * (ell + 1);

    Matrix<Rational> zb((eta + 1) * m, eps * n), zc(eta * m, (eps + 1) * n);
    MatrixPoly<Rational> zd(eta * m, eps * n, ell - 2);

    auto stack_m = [&](const MatrixPoly<Rational>& mm) {
        Matrix<Rational> v(rows, 1);
        std::size_t idx = 0;
        for (std::size_t g = 0; g <= ell; ++g)
            for (std::size_t a = 0; a < mm.rows(); ++a)
                for (std::size_t bcol = 0; bcol < mm.cols(); ++bcol)
                    v(idx++, 0) = mm.coeff(g)(a, bcol);
        return v;
    };

    Matrix<Rational> map(rows, unknowns);
    std::size_t col = 0;
    auto add_column = [&](const BlockKronecker& moved) {
        Matrix<Rational> v = stack_m(moved.M - sigma_form.M);
        for (std::size_t r = 0; r < rows; ++r) map(r, col) = v(r, 0);
        ++col;
    };
    for (std::size_t i = 0; i < (eta + 1) * m; ++i)
        for (std::size_t j = 0; j < eps * n; ++j) {
            Matrix<Rational> b = zb;
            b(i, j) = Rational(1);
            add_column(block_kronecker_perturb(sigma_form, b, zc, zd));
        }
    for (std::size_t i = 0; i < eta * m; ++i)
        for (std::size_t j = 0; j < (eps + 1) * n; ++j) {
            Matrix<Rational> c = zc;
            c(i, j) = Rational(1);
            add_column(block_kronecker_perturb(sigma_form, zb, c, zd));
        }
    for (std::size_t t = 0; t <= ell - 2; ++t)
        for (std::size_t i = 0; i < eta * m; ++i)
            for (std::size_t j = 0; j < eps * n; ++j) {
                MatrixPoly<Rational> dpoly = zd;
                dpoly.coeff(t)(i, j) = Rational(1);
                add_column(block_kronecker_perturb(sigma_form, zb, zc, dpoly));
            }
    REQUIRE(col == unknowns);

    // injectivity of the parameter map (zero image means zero parameters)
    CHECK(rank(map) == unknowns);

    auto sol = solve_particular(map, stack_m(target_m - sigma_form.M));
    REQUIRE(sol.has_value());

    // materialize the found parameters and reproduce the printed block exactly
    Matrix<Rational> b = zb, c = zc;
    MatrixPoly<Rational> dpoly = zd;
    std::size_t idx = 0;
    for (std::size_t i = 0; i < (eta + 1) * m; ++i)
        for (std::size_t j = 0; j < eps * n; ++j) b(i, j) = (*sol)(idx++, 0);
    for (std::size_t i = 0; i < eta * m; ++i)
        for (std::size_t j = 0; j < (eps + 1) * n; ++j) c(i, j) = (*sol)(idx++, 0);
    for (std::size_t t = 0; t <= ell - 2; ++t)
        for (std::size_t i = 0; i < eta * m; ++i)
            for (std::size_t j = 0; j < eps * n; ++j) dpoly.coeff(t)(i, j) = (*sol)(idx++, 0);
    BlockKronecker rebuilt = block_kronecker_perturb(sigma_form, b, c, dpoly);
    CHECK(rebuilt.M == target_m);
    CHECK(rebuilt.target() == p);
}

TEST_CASE("symmetric companion quadratification") {
    // d = 6 template: [[l^2 P6 + l P5 + P4, l P3 / 2], [l P3 / 2, l^2 P2 + l P1 + P0]]
    MatrixPoly<Rational> p = random_matrix_poly(2, 2, 6);
    p += p.transpose();  // make symmetric
    SymmetricQuadratification sq = symmetric_companion_quadratification(p);
    CHECK(sq.input_symmetric);
    const MatrixPoly<Rational>& m = sq.form.M;
    REQUIRE(m.rows() == 4);
    Rational half(1, 2);
    CHECK(m.coeff(2).block(0, 0, 2, 2) == p.coeff(6));
    CHECK(m.coeff(1).block(0, 0, 2, 2) == p.coeff(5));
    CHECK(m.coeff(0).block(0, 0, 2, 2) == p.coeff(4));
    CHECK(m.coeff(1).block(0, 2, 2, 2) == p.coeff(3) * half);
    CHECK(m.coeff(1).block(2, 0, 2, 2) == p.coeff(3) * half);
    CHECK(m.coeff(2).block(2, 2, 2, 2) == p.coeff(2));
    CHECK(sq.form.target() == p);

    MatrixPoly<Rational> l = sq.form.assembled();
    CHECK(l == l.transpose());

    // non-symmetric input still maps back to P, with the warning flag unset
    MatrixPoly<Rational> q = random_matrix_poly(2, 2, 10);
    SymmetricQuadratification sq10 = symmetric_companion_quadratification(q);
    CHECK(!sq10.input_symmetric);
    CHECK(sq10.form.target() == q);
    CHECK(sq10.form.epsilon == 2);

    CHECK_THROWS(symmetric_companion_quadratification(random_matrix_poly(2, 2, 8)));
    CHECK_THROWS(symmetric_companion_quadratification(random_matrix_poly(2, 3, 6)));
}

TEST_CASE("transpose_construction") {
    DualPair pair = symmetric_pair();
    MatrixPoly<Rational> m(3, 3, 2);
    m.coeff(2)(0, 0) = Rational(1);
    StrongBlockMinimalBases s = assemble_sbmb(m, pair, pair, 2);
    StrongBlockMinimalBases t = transpose_construction(s);
    CHECK(t.assembled() == s.assembled().transpose());
    CHECK(t.assembled() == s.assembled());  // the example is symmetric
    CHECK(transpose_construction(t).assembled() == s.assembled());

    for (int it = 0; it < 5; ++it) {
        MatrixPoly<Rational> p = random_matrix_poly(2, 2, 6);
        StrongBlockMinimalBases bk = block_kronecker_companion(p, 1, 1, 2).as_sbmb();
        CHECK(q_of(transpose_construction(bk)) == q_of(bk).transpose());
        CHECK(transpose_construction(bk).assembled() == bk.assembled().transpose());
    }
}
