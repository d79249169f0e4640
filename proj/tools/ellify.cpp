// Command-line front-end: parameter enumeration, construction of strong
// ell-ifications, exact verification, the eigenvalue pipeline, recovery of
// eigenvectors and minimal bases, and the worked examples.

#include <complex>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "ellify/demo.hpp"
#include "ellify/io.hpp"
#include "ellify/recovery.hpp"
#include "ellify/sidecar.hpp"
#include "ellify/verify.hpp"

namespace {

using namespace ellify;

struct ConstructArgs {
    std::string input, output, sidecar, form = "kronecker", side = "first";
    std::size_t ell = 1;
    std::optional<std::size_t> epsilon, eta;
};

int cmd_params(std::size_t m, std::size_t n, std::size_t d, std::size_t ell) {
    std::cout << "m1\tm2\tepsilon\teta\n";
    for (const auto& s : enumerate_parameters(m, n, d, ell))
        std::cout << s.m1 << '\t' << s.m2 << '\t' << s.epsilon << '\t' << s.eta << '\n';
    return 0;
}

int cmd_construct(const ConstructArgs& args) {
    const MatrixPoly<Rational> p =
        expect_rational(read_matrix_poly_file(args.input), "construct");
    const std::size_t d = p.grade();
    CompanionSide side = args.side == "second" ? CompanionSide::second : CompanionSide::first;

    BlockKronecker bk;
    if (args.form == "kronecker") {
        if (args.ell == 0 || d % args.ell != 0 || d == args.ell)
            throw std::invalid_argument("construct: the kronecker form needs ell | d and ell < d");
        const std::size_t k = d / args.ell;
        std::size_t eta = args.eta.value_or((k - 1) / 2);
        std::size_t eps = args.epsilon.value_or(k - 1 - eta);
        if (eps + eta + 1 != k)
            throw std::invalid_argument("construct: epsilon + eta + 1 must equal d / ell");
        bk = block_kronecker_companion(p, eps, eta, args.ell);
    } else if (args.form == "frobenius") {
        if (args.ell != 1) throw std::invalid_argument("construct: the frobenius form has ell = 1");
        bk = frobenius_companion(p, side);
    } else if (args.form == "frobenius-like") {
        bk = frobenius_like_ellification(p, args.ell, side);
    } else if (args.form == "symmetric") {
        if (args.ell != 2)
            throw std::invalid_argument("construct: the symmetric form has ell = 2");
        SymmetricQuadratification sq = symmetric_companion_quadratification(p);
        if (!sq.input_symmetric)
            std::cerr << "warning: input polynomial is not symmetric; the template still maps "
                         "back to it\n";
        bk = sq.form;
    } else {
        throw std::invalid_argument("construct: unknown form '" + args.form + "'");
    }

    write_matrix_poly_file(args.output, AnyMatrixPoly(bk.assembled()));
    const std::string side_path = args.sidecar.empty() ? args.output + ".json" : args.sidecar;
    write_sidecar_file(side_path, make_sidecar(args.form, bk));
    std::cout << "wrote " << args.output << " and " << side_path << " (" << args.form
              << ", ell=" << bk.ell << ", epsilon=" << bk.epsilon << ", eta=" << bk.eta << ")\n";
    return 0;
}

int cmd_verify(const std::string& lification, const std::string& sidecar,
               const std::string& target, bool float_check, double tol, unsigned seed) {
    const MatrixPoly<Rational> l = expect_rational(read_matrix_poly_file(lification), "verify");
    const MatrixPoly<Rational> p = expect_rational(read_matrix_poly_file(target), "verify");
    const Sidecar sc = read_sidecar_file(sidecar);

    bool wings_ok = true;
    std::string wing_witness;
    BlockKronecker bk;
    try {
        bk = reassemble_from_sidecar(l, sc);
    } catch (const std::exception& e) {
        wings_ok = false;
        wing_witness = e.what();
    }

    bool overall = wings_ok;
    std::cout << (wings_ok ? "[PASS] " : "[FAIL] ") << "wing-structure"
              << (wing_witness.empty() ? "" : ": " + wing_witness) << '\n';
    if (wings_ok) {
        VerificationReport rep = verify_ellification(bk.as_sbmb(), p);
        for (const auto& c : rep.checks) {
            const char* status = !c.executed ? "[SKIP] " : (c.pass ? "[PASS] " : "[FAIL] ");
            std::cout << status << c.name << (c.witness.empty() ? "" : ": " + c.witness) << '\n';
        }
        overall = rep.overall() && !rep.partial;
        if (float_check) {
            if (!is_regular(p, seed)) {
                std::cout << "[SKIP] eigenvalue-agreement: target is singular\n";
            } else {
                AgreementReport ar = eigenvalue_agreement(p, bk, tol);
                std::cout << (ar.pass ? "[PASS] " : "[FAIL] ") << "eigenvalue-agreement"
                          << (ar.message.empty() ? "" : ": " + ar.message)
                          << " (worst relative error " << ar.worst << ")\n";
                overall = overall && ar.pass;
            }
        }
    }
    std::cout << (overall ? "verification OK" : "verification FAILED") << '\n';
    return overall ? 0 : 1;
}

int cmd_solve(const std::string& input, std::size_t ell, double inf_threshold, unsigned seed) {
    AnyMatrixPoly any = read_matrix_poly_file(input);
    MatrixPoly<Rational> p = std::holds_alternative<MatrixPoly<Rational>>(any)
                                 ? std::get<MatrixPoly<Rational>>(any)
                                 : [&] {
                                       const auto& f = std::get<MatrixPoly<double>>(any);
                                       MatrixPoly<Rational> q(f.rows(), f.cols(), f.grade());
                                       for (std::size_t k = 0; k <= f.grade(); ++k)
                                           for (std::size_t i = 0; i < f.rows(); ++i)
                                               for (std::size_t j = 0; j < f.cols(); ++j)
                                                   q.coeff(k)(i, j) = Rational(f.coeff(k)(i, j));
                                       return q;
                                   }();
    if (!is_regular(p, seed))
        throw std::invalid_argument("solve: the polynomial is singular; eigenvalues are undefined");

    MatrixPoly<double> target;
    if (ell == 1 || ell == p.grade()) {
        target = to_f64(p);
    } else {
        if (p.grade() % ell != 0)
            throw std::invalid_argument("solve: ell must divide the grade");
        const std::size_t k = p.grade() / ell;
        target = to_f64(block_kronecker_companion(p, k - 1 - (k - 1) / 2, (k - 1) / 2, ell)
                            .assembled());
    }
    PolynomialEigen pe = polynomial_eigen(target, false, inf_threshold);
    std::cout << "re\tim\tflag\n";
    char buf[64];
    for (const auto& v : pe.values) {
        std::snprintf(buf, sizeof buf, "%.15g\t%.15g\tfinite", v.real(), v.imag());
        std::cout << buf << '\n';
    }
    for (std::size_t i = 0; i < pe.infinite_count; ++i) std::cout << "inf\tinf\tinfinite\n";
    return 0;
}

int cmd_recover(const std::string& lification, const std::string& sidecar,
                const std::string& vectors, const std::string& side_name, const std::string& at,
                double tol) {
    const Sidecar sc = read_sidecar_file(sidecar);
    const RecoveryContext ctx = sc.to_context();
    const Side side = side_name == "left" ? Side::left : Side::right;
    AnyMatrixPoly lf = read_matrix_poly_file(lification);
    AnyMatrixPoly vf = read_matrix_poly_file(vectors);

    if (at.empty()) {
        // minimal-basis extraction (exact backend)
        const MatrixPoly<Rational>& v = expect_rational(vf, "recover (minimal basis)");
        std::vector<MatrixPoly<Rational>> cols;
        for (std::size_t j = 0; j < v.cols(); ++j) cols.push_back(sub_cols(v, j, 1));
        auto out = extract_minimal_basis_kronecker(cols, ctx, side);
        MatrixPoly<Rational> basis(side == Side::right ? ctx.n : ctx.m, 0, 0);
        if (!out.empty()) {
            basis = out[0];
            for (std::size_t j = 1; j < out.size(); ++j) basis = hstack(basis, out[j]);
        }
        write_matrix_poly(std::cout, basis);
        return 0;
    }

    if (backend_of(lf) != backend_of(vf))
        throw std::invalid_argument("recover: lification and vectors use different backends");

    auto run = [&](const auto& l, const auto& v) {
        using S = typename std::decay_t<decltype(l)>::scalar_type;
        std::optional<S> lambda0;
        if (at != "inf") {
            if constexpr (is_exact_scalar_v<S>)
                lambda0 = Rational::parse(at);
            else
                lambda0 = std::stod(at);
        }
        MatrixPoly<S> recovered(side == Side::right ? ctx.n : ctx.m, v.cols(), 0);
        for (std::size_t j = 0; j < v.cols(); ++j) {
            Matrix<S> z(v.rows(), 1);
            for (std::size_t i = 0; i < v.rows(); ++i) z(i, 0) = v.coeff(0)(i, j);
            Matrix<S> x = recover_eigenvector(l, z, lambda0, ctx, side, tol);
            for (std::size_t i = 0; i < x.rows(); ++i) recovered.coeff(0)(i, j) = x(i, 0);
        }
        write_matrix_poly(std::cout, recovered);
    };
    if (std::holds_alternative<MatrixPoly<Rational>>(lf)) {
        const auto& v = std::get<MatrixPoly<Rational>>(vf);
        if (v.degree() && *v.degree() > 0)
            throw std::invalid_argument("recover: eigenvector recovery expects constant vectors");
        run(std::get<MatrixPoly<Rational>>(lf), v);
    } else {
        run(std::get<MatrixPoly<double>>(lf), std::get<MatrixPoly<double>>(vf));
    }
    return 0;
}

void print_report(const VerificationReport& rep) {
    for (const auto& c : rep.checks) {
        const char* status = !c.executed ? "[SKIP] " : (c.pass ? "[PASS] " : "[FAIL] ");
        std::cout << "  " << status << c.name << (c.witness.empty() ? "" : ": " + c.witness)
                  << '\n';
    }
}

int cmd_demo(const std::string& which) {
    bool all = which == "all";
    bool ok = true;
    bool matched = false;
    if (all || which == "example-5.5") {
        matched = true;
        QuadratificationExample ex = example_symmetric_quadratification();
        std::cout << "symmetric strong quadratification of diag(x^4, 0):\n";
        print_matrix_poly(std::cout, ex.form.assembled());
        VerificationReport rep = verify_ellification(ex.form, ex.target);
        print_report(rep);
        ok = ok && rep.overall();
    }
    if (all || which == "example-5.10") {
        matched = true;
        MatrixPoly<Rational> p = prime_coefficient_poly(6);
        std::cout << "\ngrade-6 scalar stand-in with P_i listed low to high:\n  ";
        for (std::size_t i = 0; i <= 6; ++i)
            std::cout << "P" << i << "=" << p.coeff(i)(0, 0) << (i < 6 ? ", " : "\n");
        struct Form {
            const char* name;
            BlockKronecker bk;
        };
        Form forms[] = {{"strong linearization L(x)", example_grade6_linearization(p)},
                        {"strong quadratification Q(x)", example_grade6_quadratification(p)},
                        {"strong 3-ification C(x)", example_grade6_cubification(p)}};
        for (auto& f : forms) {
            std::cout << f.name << ":\n";
            print_matrix_poly(std::cout, f.bk.assembled());
            VerificationReport rep = verify_ellification(f.bk.as_sbmb(), p);
            print_report(rep);
            ok = ok && rep.overall();
        }
    }
    if (all || which == "example-5.11") {
        matched = true;
        MatrixPoly<Rational> p = prime_coefficient_poly(10);
        std::cout << "\ngrade-10 scalar stand-in with P_i listed low to high:\n  ";
        for (std::size_t i = 0; i <= 10; ++i)
            std::cout << "P" << i << "=" << p.coeff(i)(0, 0) << (i < 10 ? ", " : "\n");
        BlockKronecker bk = example_grade10_symmetric(p);
        std::cout << "symmetric companion quadratification:\n";
        print_matrix_poly(std::cout, bk.assembled());
        VerificationReport rep = verify_ellification(bk.as_sbmb(), p);
        print_report(rep);
        ok = ok && rep.overall();
    }
    if (!matched) throw std::invalid_argument("demo: unknown example '" + which + "'");
    std::cout << (ok ? "demo verification OK" : "demo verification FAILED") << '\n';
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"strong ell-ifications of matrix polynomials via block minimal bases"};
    app.require_subcommand(1);

    std::size_t pm = 0, pn = 0, pd = 0, pell = 0;
    CLI::App* params = app.add_subcommand("params", "enumerate admissible (m1, m2, epsilon, eta)");
    params->add_option("m", pm, "row count")->required();
    params->add_option("n", pn, "column count")->required();
    params->add_option("d", pd, "grade")->required();
    params->add_option("ell", pell, "target degree")->required();

    ConstructArgs cargs;
    CLI::App* construct = app.add_subcommand("construct", "build a strong ell-ification");
    construct->add_option("--input", cargs.input, "target polynomial (.mp, Q backend)")->required();
    construct->add_option("--ell", cargs.ell, "degree of the construction")->required();
    construct->add_option("--epsilon", cargs.epsilon, "right Kronecker index");
    construct->add_option("--eta", cargs.eta, "left Kronecker index");
    construct->add_option("--form", cargs.form, "kronecker|frobenius|frobenius-like|symmetric");
    construct->add_option("--side", cargs.side, "first|second (frobenius variants)");
    construct->add_option("--output", cargs.output, "assembled polynomial output")->required();
    construct->add_option("--sidecar", cargs.sidecar, "sidecar path (default: <output>.json)");

    std::string v_lif, v_side, v_target;
    bool v_float = false;
    double v_tol = 1e-8;
    unsigned seed = 20240517;
    CLI::App* verify = app.add_subcommand("verify", "verify a constructed ell-ification");
    verify->add_option("--lification", v_lif, "assembled polynomial (.mp)")->required();
    verify->add_option("--sidecar", v_side, "sidecar JSON")->required();
    verify->add_option("--target", v_target, "target polynomial (.mp)")->required();
    verify->add_flag("--float-check", v_float, "also match eigenvalue multisets");
    verify->add_option("--tol", v_tol, "matching tolerance for --float-check");
    verify->add_option("--seed", seed, "seed for the randomized regularity points");

    std::string s_input;
    std::size_t s_ell = 1;
    double s_inf = 1e-12;
    CLI::App* solve = app.add_subcommand("solve", "eigenvalues through an ell-ification");
    solve->add_option("--input", s_input, "regular polynomial (.mp)")->required();
    solve->add_option("--ell", s_ell, "degree of the intermediate ell-ification")->required();
    solve->add_option("--inf-threshold", s_inf, "relative beta threshold flagging infinity");
    solve->add_option("--seed", seed, "seed for the randomized regularity points");

    std::string r_lif, r_side_file, r_vectors, r_sidearg = "right", r_at;
    double r_tol = 1e-8;
    CLI::App* recover = app.add_subcommand("recover", "recover eigenvectors or minimal bases");
    recover->add_option("--lification", r_lif, "assembled polynomial (.mp)")->required();
    recover->add_option("--sidecar", r_side_file, "sidecar JSON")->required();
    recover->add_option("--vectors", r_vectors, "vectors of the ell-ification (.mp)")->required();
    recover->add_option("--side", r_sidearg, "right|left");
    recover->add_option("--at", r_at, "eigenvalue (rational/float) or 'inf'; omit for bases");
    recover->add_option("--tol", r_tol, "float residual tolerance");

    std::string d_which = "all";
    CLI::App* demo = app.add_subcommand("demo", "replay the worked examples");
    demo->add_option("which", d_which, "example-5.5|example-5.10|example-5.11|all");

    CLI11_PARSE(app, argc, argv);

    try {
        if (params->parsed()) return cmd_params(pm, pn, pd, pell);
        if (construct->parsed()) return cmd_construct(cargs);
        if (verify->parsed()) return cmd_verify(v_lif, v_side, v_target, v_float, v_tol, seed);
        if (solve->parsed()) return cmd_solve(s_input, s_ell, s_inf, seed);
        if (recover->parsed())
            return cmd_recover(r_lif, r_side_file, r_vectors, r_sidearg, r_at, r_tol);
        if (demo->parsed()) return cmd_demo(d_which);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
