// Drives the installed CLI binary through temp files: the emitted files must
// re-parse bit-identically and construct-then-verify must pass end to end.

#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "ellify/io.hpp"
#include "test_support.hpp"

using namespace ellify;

namespace {

struct TempDir {
    std::string path;
    TempDir() {
        char tmpl[] = "/tmp/ellify_cli_XXXXXX";
        path = mkdtemp(tmpl);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path, ec);
    }
    std::string file(const std::string& name) const { return path + "/" + name; }
};

int run(const std::string& cmd) { return std::system((cmd + " > /dev/null 2>&1").c_str()); }

std::string run_capture(const std::string& cmd) {
    std::string out;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buf[512];
    while (fgets(buf, sizeof buf, pipe)) out += buf;
    pclose(pipe);
    return out;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

const std::string cli = ELLIFY_CLI_PATH;

}  // namespace

TEST_CASE("params table") {
    std::string out = run_capture(cli + " params 1 1 6 2");
    CHECK(out == "m1\tm2\tepsilon\teta\n0\t2\t0\t4\n1\t1\t2\t2\n2\t0\t4\t0\n");
    CHECK(run(cli + " params 3 2 5 2") != 0);  // ell does not divide m*d
}

TEST_CASE("construct then verify round trip") {
    TempDir dir;
    MatrixPoly<Rational> p = test_support::random_matrix_poly(2, 2, 6);
    write_matrix_poly_file(dir.file("p.mp"), AnyMatrixPoly(p));

    for (const std::string form : {"kronecker", "frobenius-like"}) {
        std::string l = dir.file(form + ".mp");
        REQUIRE(run(cli + " construct --input " + dir.file("p.mp") + " --ell 2 --form " + form +
                    " --output " + l) == 0);
        CHECK(run(cli + " verify --lification " + l + " --sidecar " + l + ".json --target " +
                  dir.file("p.mp")) == 0);

        // emitted file re-parses to a bit-identical value
        AnyMatrixPoly back = read_matrix_poly_file(l);
        std::ostringstream rewritten;
        write_matrix_poly(rewritten, back);
        CHECK(rewritten.str() == slurp(l));
    }

    // frobenius with ell = 1, plus float cross-check
    std::string l1 = dir.file("frob.mp");
    REQUIRE(run(cli + " construct --input " + dir.file("p.mp") +
                " --ell 1 --form frobenius --output " + l1) == 0);
    CHECK(run(cli + " verify --lification " + l1 + " --sidecar " + l1 + ".json --target " +
              dir.file("p.mp") + " --float-check --tol 1e-7") == 0);
}

TEST_CASE("verify detects a tampered file") {
    TempDir dir;
    MatrixPoly<Rational> p = test_support::random_matrix_poly(2, 2, 4);
    write_matrix_poly_file(dir.file("p.mp"), AnyMatrixPoly(p));
    std::string l = dir.file("l.mp");
    REQUIRE(run(cli + " construct --input " + dir.file("p.mp") +
                " --ell 2 --form kronecker --output " + l) == 0);

    AnyMatrixPoly any = read_matrix_poly_file(l);
    auto& lp = std::get<MatrixPoly<Rational>>(any);
    lp.coeff(1)(0, 0) += Rational(1);
    write_matrix_poly_file(l, any);
    CHECK(run(cli + " verify --lification " + l + " --sidecar " + l + ".json --target " +
              dir.file("p.mp")) != 0);
}

TEST_CASE("solve prints the spectrum") {
    TempDir dir;
    std::ofstream(dir.file("p.mp")) << "mp 1 1 2 Q\n2\n\n-3\n\n1\n";
    std::string out = run_capture(cli + " solve --input " + dir.file("p.mp") + " --ell 2 2>&1");
    CHECK(out.find("re\tim\tflag") != std::string::npos);
    CHECK(out.find("1\t") != std::string::npos);
    CHECK(out.find("2\t") != std::string::npos);

    // singular input is refused
    std::ofstream(dir.file("s.mp")) << "mp 2 2 4 Q\n0 0\n0 0\n\n0 0\n0 0\n\n0 0\n0 0\n\n0 0\n0 "
                                       "0\n\n1 0\n0 0\n";
    CHECK(run(cli + " solve --input " + dir.file("s.mp") + " --ell 2") != 0);
}

TEST_CASE("demo subcommand verifies all examples") {
    CHECK(run(cli + " demo all") == 0);
    CHECK(run(cli + " demo example-5.10") == 0);
    CHECK(run(cli + " demo nonsense") != 0);
}

TEST_CASE("recover minimal basis through files") {
    TempDir dir;
    // diag(lambda^4, 0) declared at grade 6, eps = eta = 1 quadratification
    std::ofstream(dir.file("p.mp")) << "mp 2 2 6 Q\n0 0\n0 0\n\n0 0\n0 0\n\n0 0\n0 0\n\n0 0\n0 "
                                       "0\n\n1 0\n0 0\n\n0 0\n0 0\n\n0 0\n0 0\n";
    std::string l = dir.file("l.mp");
    REQUIRE(run(cli + " construct --input " + dir.file("p.mp") +
                " --ell 2 --form kronecker --epsilon 1 --eta 1 --output " + l) == 0);

    // lifted null vector of the quadratification: z = Lambda_1(x^2) (x) h with
    // h = e_2, bottom block zero
    std::ofstream(dir.file("z.mp")) << "mp 6 1 2 Q\n0\n0\n0\n1\n0\n0\n\n0\n0\n0\n0\n0\n0\n\n0\n1\n"
                                       "0\n0\n0\n0\n";
    std::string out = run_capture(cli + " recover --lification " + l + " --sidecar " + l +
                                  ".json --vectors " + dir.file("z.mp") + " --side right 2>&1");
    CHECK(out.find("mp 2 1 0 Q") != std::string::npos);
}
