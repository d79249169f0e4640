#pragma once

// Text serialization of matrix polynomials. Format:
//   mp <m> <n> <d> <Q|F64>
// followed by d+1 blocks (coefficient of lambda^0 first), each m lines of n
// whitespace-separated entries. Rational entries are "p/q" or integers and
// round-trip bit-exactly; float entries are printed with 17 significant
// digits.

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <variant>

#include "ellify/matrix_polynomial.hpp"

namespace ellify {

enum class Backend { rational, f64 };

using AnyMatrixPoly = std::variant<MatrixPoly<Rational>, MatrixPoly<double>>;

inline Backend backend_of(const AnyMatrixPoly& p) {
    return std::holds_alternative<MatrixPoly<Rational>>(p) ? Backend::rational : Backend::f64;
}

inline void write_matrix_poly(std::ostream& os, const MatrixPoly<Rational>& p) {
    os << "mp " << p.rows() << ' ' << p.cols() << ' ' << p.grade() << " Q\n";
    for (std::size_t k = 0; k <= p.grade(); ++k) {
        for (std::size_t i = 0; i < p.rows(); ++i) {
            for (std::size_t j = 0; j < p.cols(); ++j)
                os << (j ? " " : "") << p.coeff(k)(i, j).str();
            os << '\n';
        }
        if (k != p.grade()) os << '\n';
    }
}

inline void write_matrix_poly(std::ostream& os, const MatrixPoly<double>& p) {
    os << "mp " << p.rows() << ' ' << p.cols() << ' ' << p.grade() << " F64\n";
    char buf[40];
    for (std::size_t k = 0; k <= p.grade(); ++k) {
        for (std::size_t i = 0; i < p.rows(); ++i) {
            for (std::size_t j = 0; j < p.cols(); ++j) {
                std::snprintf(buf, sizeof buf, "%.17g", p.coeff(k)(i, j));
                os << (j ? " " : "") << buf;
            }
            os << '\n';
        }
        if (k != p.grade()) os << '\n';
    }
}

inline void write_matrix_poly(std::ostream& os, const AnyMatrixPoly& p) {
    std::visit([&](const auto& q) { write_matrix_poly(os, q); }, p);
}

inline AnyMatrixPoly read_matrix_poly(std::istream& is) {
    std::string magic, field;
    std::size_t m = 0, n = 0, d = 0;
    if (!(is >> magic >> m >> n >> d >> field) || magic != "mp")
        throw std::invalid_argument("io: expected header 'mp <m> <n> <d> <Q|F64>'");
    auto read_tokens = [&](auto& poly) {
        for (std::size_t k = 0; k <= d; ++k)
            for (std::size_t i = 0; i < m; ++i)
                for (std::size_t j = 0; j < n; ++j) {
                    std::string tok;
                    if (!(is >> tok))
                        throw std::invalid_argument("io: truncated matrix polynomial body");
                    using S = typename std::decay_t<decltype(poly)>::scalar_type;
                    if constexpr (is_exact_scalar_v<S>) {
                        poly.coeff(k)(i, j) = Rational::parse(tok);
                    } else {
                        poly.coeff(k)(i, j) = std::stod(tok);
                    }
                }
    };
    if (field == "Q") {
        MatrixPoly<Rational> p(m, n, d);
        read_tokens(p);
        return p;
    }
    if (field == "F64") {
        MatrixPoly<double> p(m, n, d);
        read_tokens(p);
        return p;
    }
    throw std::invalid_argument("io: unknown field tag '" + field + "'");
}

inline AnyMatrixPoly read_matrix_poly_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("io: cannot open '" + path + "'");
    return read_matrix_poly(in);
}

inline void write_matrix_poly_file(const std::string& path, const AnyMatrixPoly& p) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("io: cannot open '" + path + "' for writing");
    write_matrix_poly(out, p);
}

inline const MatrixPoly<Rational>& expect_rational(const AnyMatrixPoly& p, const char* what) {
    if (!std::holds_alternative<MatrixPoly<Rational>>(p))
        throw std::invalid_argument(std::string("io: ") + what + " requires the Q backend");
    return std::get<MatrixPoly<Rational>>(p);
}

// ---------------------------------------------------------------------------
// Human-readable rendering (demo output).
// ---------------------------------------------------------------------------

inline std::string entry_string(const MatrixPoly<Rational>& p, std::size_t i, std::size_t j) {
    std::ostringstream os;
    bool first = true;
    for (std::size_t k = p.grade() + 1; k-- > 0;) {
        const Rational& c = p.coeff(k)(i, j);
        if (c.is_zero()) continue;
        Rational a = abs(c);
        if (!first)
            os << (c.sign() < 0 ? " - " : " + ");
        else if (c.sign() < 0)
            os << "-";
        first = false;
        bool unit = a == Rational(1);
        if (k == 0 || !unit) os << a.str();
        if (k > 0) {
            if (!unit) os << "*";
            os << "x";
            if (k > 1) os << "^" << k;
        }
    }
    if (first) os << "0";
    return os.str();
}

inline void print_matrix_poly(std::ostream& os, const MatrixPoly<Rational>& p,
                              const std::string& indent = "  ") {
    std::vector<std::vector<std::string>> cells(p.rows(), std::vector<std::string>(p.cols()));
    std::vector<std::size_t> width(p.cols(), 0);
    for (std::size_t i = 0; i < p.rows(); ++i)
        for (std::size_t j = 0; j < p.cols(); ++j) {
            cells[i][j] = entry_string(p, i, j);
            width[j] = std::max(width[j], cells[i][j].size());
        }
    for (std::size_t i = 0; i < p.rows(); ++i) {
        os << indent << "[ ";
        for (std::size_t j = 0; j < p.cols(); ++j) {
            os << cells[i][j];
            for (std::size_t s = cells[i][j].size(); s < width[j]; ++s) os << ' ';
            os << (j + 1 == p.cols() ? " ]\n" : "  ");
        }
    }
}

}  // namespace ellify
