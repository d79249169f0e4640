#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "ellify/io.hpp"
#include "ellify/sidecar.hpp"
#include "test_support.hpp"

using namespace ellify;
using test_support::random_matrix_poly;

TEST_CASE("rational serialization round-trips bit-exactly") {
    for (int it = 0; it < 25; ++it) {
        MatrixPoly<Rational> p = random_matrix_poly(1 + it % 3, 1 + (it / 2) % 3, it % 5);
        std::ostringstream os;
        write_matrix_poly(os, p);
        std::istringstream is(os.str());
        AnyMatrixPoly back = read_matrix_poly(is);
        REQUIRE(backend_of(back) == Backend::rational);
        const auto& q = std::get<MatrixPoly<Rational>>(back);
        CHECK(q == p);
        CHECK(q.grade() == p.grade());

        // a second round trip produces identical bytes
        std::ostringstream os2;
        write_matrix_poly(os2, back);
        CHECK(os2.str() == os.str());
    }
}

TEST_CASE("float serialization round-trips") {
    MatrixPoly<double> p(2, 2, 2);
    p.coeff(0)(0, 0) = 0.1;
    p.coeff(1)(0, 1) = -3.25e-7;
    p.coeff(2)(1, 1) = 1.0 / 3.0;
    std::ostringstream os;
    write_matrix_poly(os, p);
    std::istringstream is(os.str());
    AnyMatrixPoly back = read_matrix_poly(is);
    REQUIRE(backend_of(back) == Backend::f64);
    CHECK(std::get<MatrixPoly<double>>(back) == p);
}

TEST_CASE("format errors are reported") {
    std::istringstream bad1("np 1 1 0 Q\n1\n");
    CHECK_THROWS(read_matrix_poly(bad1));
    std::istringstream bad2("mp 1 1 0 Z\n1\n");
    CHECK_THROWS(read_matrix_poly(bad2));
    std::istringstream bad3("mp 2 2 1 Q\n1 2\n");
    CHECK_THROWS(read_matrix_poly(bad3));
    std::istringstream bad4("mp 1 1 0 Q\nx\n");
    CHECK_THROWS(read_matrix_poly(bad4));
}

TEST_CASE("rational parser accepts p/q and integers") {
    CHECK(Rational::parse("3/6") == Rational(1, 2));
    CHECK(Rational::parse("-7") == Rational(-7));
    CHECK(Rational::parse("0") == Rational(0));
    CHECK_THROWS(Rational::parse("1/0"));
    CHECK_THROWS(Rational::parse("abc"));
}

TEST_CASE("sidecar JSON round trip and version gate") {
    MatrixPoly<Rational> p = random_matrix_poly(2, 2, 6);
    BlockKronecker bk = block_kronecker_companion(p, 1, 1, 2);
    Sidecar s = make_sidecar("kronecker", bk);
    nlohmann::json j = to_json(s);
    Sidecar back = sidecar_from_json(j);
    CHECK(back.form == "kronecker");
    CHECK(back.epsilon == 1);
    CHECK(back.eta == 1);
    CHECK(back.ell == 2);
    CHECK(back.shift_right == 2);
    CHECK(back.shift_left == 2);
    CHECK(back.row_blocks == std::vector<std::size_t>{2, 2, 2});
    CHECK(back.col_blocks == std::vector<std::size_t>{2, 2, 2});

    j["format_version"] = 99;
    CHECK_THROWS(sidecar_from_json(j));

    RecoveryContext ctx = back.to_context();
    CHECK(ctx.deg_n1 == 2);
    CHECK(ctx.kind == RecoveryContext::Kind::block_kronecker);
}

TEST_CASE("reassemble_from_sidecar rejects tampered wings") {
    MatrixPoly<Rational> p = random_matrix_poly(2, 2, 6);
    BlockKronecker bk = block_kronecker_companion(p, 1, 1, 2);
    Sidecar s = make_sidecar("kronecker", bk);
    MatrixPoly<Rational> good = bk.assembled();
    CHECK(reassemble_from_sidecar(good, s).M == bk.M);

    MatrixPoly<Rational> bad = good;
    bad.coeff(0)(5, 0) += Rational(1);  // inside the L_eps wing
    CHECK_THROWS(reassemble_from_sidecar(bad, s));
}

TEST_CASE("entry rendering") {
    MatrixPoly<Rational> p(1, 1, 3);
    p.coeff(3)(0, 0) = Rational(1);
    p.coeff(1)(0, 0) = Rational(-3, 2);
    p.coeff(0)(0, 0) = Rational(2);
    CHECK(entry_string(p, 0, 0) == "x^3 - 3/2*x + 2");
    MatrixPoly<Rational> z(1, 1, 1);
    CHECK(entry_string(z, 0, 0) == "0");
}
