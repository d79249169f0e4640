// Minimal-index bookkeeping on a singular polynomial: quadratize
// diag(x^4, 0), compare the shifted minimal indices, and round-trip a null
// vector through lift and extraction.

#include <iostream>

#include "ellify/io.hpp"
#include "ellify/recovery.hpp"

using namespace ellify;

int main() {
    MatrixPoly<Rational> p(2, 2, 6);  // diag(x^4, 0) declared at grade 6
    p.coeff(4)(0, 0) = Rational(1);

    BlockKronecker bk = block_kronecker_companion(p, 1, 1, 2);
    RecoveryContext ctx = make_recovery_context(bk);

    Eigenstructure ep = minimal_indices_of(p);
    Eigenstructure el = minimal_indices_of(bk.assembled());
    std::cout << "right minimal indices of P:";
    for (auto i : ep.right_minimal_indices) std::cout << ' ' << i;
    std::cout << "\nright minimal indices of L:";
    for (auto i : el.right_minimal_indices) std::cout << ' ' << i;
    std::cout << "\nshift constant deg(N1) = " << ctx.deg_n1 << '\n';

    MatrixPoly<Rational> h(2, 1, 0);
    h.coeff(0)(1, 0) = Rational(1);
    MatrixPoly<Rational> z = lift_right_null_vector(bk.as_sbmb(), h);
    std::cout << "lifted null vector of L:\n";
    print_matrix_poly(std::cout, z);

    auto back = extract_minimal_basis_kronecker({z}, ctx, Side::right, &p);
    bool ok = back.size() == 1 && back[0] == h;
    std::cout << "lift-then-extract returns h: " << (ok ? "yes" : "no") << '\n';
    return ok ? 0 : 1;
}
