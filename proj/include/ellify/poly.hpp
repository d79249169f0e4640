#pragma once

// Scalar univariate polynomials, fraction-free Bareiss determinants over
// polynomial entries, and deterministic gcd of integer polynomials by the
// subresultant polynomial remainder sequence. These are the primitives
// behind the exact minimal-basis certification.

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "ellify/matrix.hpp"
#include "ellify/rational.hpp"

namespace ellify {

// Dense univariate polynomial; coefficient vector is kept trimmed, the empty
// vector is the zero polynomial.
template <typename T>
class Poly {
public:
    Poly() = default;
    Poly(T constant) {  // NOLINT: implicit, mirrors scalar embedding
        if (!(constant == T(0))) c_.push_back(constant);
    }
    explicit Poly(std::vector<T> coeffs) : c_(std::move(coeffs)) { trim(); }

    static Poly monomial(const T& coef, std::size_t deg) {
        if (coef == T(0)) return Poly();
        std::vector<T> c(deg + 1);
        c[deg] = coef;
        return Poly(std::move(c));
    }

    bool is_zero() const { return c_.empty(); }
    std::optional<std::size_t> degree() const {
        if (c_.empty()) return std::nullopt;
        return c_.size() - 1;
    }
    T coeff(std::size_t i) const { return i < c_.size() ? c_[i] : T(0); }
    const T& leading() const {
        if (c_.empty()) throw std::logic_error("poly: leading coefficient of zero");
        return c_.back();
    }

    Poly& operator+=(const Poly& o) {
        if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), T(0));
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
        trim();
        return *this;
    }
    Poly& operator-=(const Poly& o) {
        if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), T(0));
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
        trim();
        return *this;
    }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }

    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator-(const Poly& a) {
        Poly r = a;
        for (auto& x : r.c_) x = -x;
        return r;
    }
    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return Poly();
        std::vector<T> c(a.c_.size() + b.c_.size() - 1, T(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == T(0)) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
        }
        return Poly(std::move(c));
    }

    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

private:
    void trim() {
        while (!c_.empty() && c_.back() == T(0)) c_.pop_back();
    }

    std::vector<T> c_;
};

// Exact quotient a / b over a field; throws if the division leaves a
// remainder (Bareiss guarantees divisibility, so a remainder means a bug).
inline Poly<Rational> divexact(const Poly<Rational>& a, const Poly<Rational>& b) {
    if (b.is_zero()) throw std::domain_error("poly: division by zero");
    if (a.is_zero()) return {};
    std::size_t da = *a.degree(), db = *b.degree();
    if (da < db) throw std::logic_error("poly: inexact division");
    std::vector<Rational> rem(da + 1), q(da - db + 1);
    for (std::size_t i = 0; i <= da; ++i) rem[i] = a.coeff(i);
    Rational lead_inv = Rational(1) / b.leading();
    for (std::size_t k = da - db + 1; k-- > 0;) {
        Rational f = rem[k + db] * lead_inv;
        q[k] = f;
        if (f.is_zero()) continue;
        for (std::size_t i = 0; i <= db; ++i) rem[k + i] -= f * b.coeff(i);
    }
    for (const auto& r : rem)
        if (!r.is_zero()) throw std::logic_error("poly: inexact division");
    return Poly<Rational>(std::move(q));
}

// Fraction-free Bareiss determinant; entries from an integral domain with
// exact division (rationals, or polynomials over the rationals).
template <typename E>
E bareiss_det(Matrix<E> m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("bareiss: matrix not square");
    const std::size_t n = m.rows();
    if (n == 0) return E(1);
    bool negate = false;
    E prev(1);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        std::size_t piv = k;
        while (piv < n && m(piv, k) == E(0)) ++piv;
        if (piv == n) return E(0);
        if (piv != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(m(piv, j), m(k, j));
            negate = !negate;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                E num = m(i, j) * m(k, k) - m(i, k) * m(k, j);
                m(i, j) = divexact(num, prev);
            }
            m(i, k) = E(0);
        }
        prev = m(k, k);
    }
    E d = m(n - 1, n - 1);
    return negate ? -d : d;
}

inline Rational divexact(const Rational& a, const Rational& b) { return a / b; }

// ---------------------------------------------------------------------------
// Integer polynomials and the subresultant PRS gcd.
// ---------------------------------------------------------------------------

// Trimmed coefficient vector; empty means zero.
using ZPoly = std::vector<mpz_class>;

inline void z_trim(ZPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

inline mpz_class z_content(const ZPoly& p) {
    mpz_class g = 0;
    for (const auto& c : p) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
        if (g == 1) break;
    }
    return g;
}

inline ZPoly z_primitive(ZPoly p) {
    z_trim(p);
    if (p.empty()) return p;
    mpz_class g = z_content(p);
    if (p.back() < 0) g = -g;
    for (auto& c : p) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
    return p;
}

// Pseudo-remainder of a by b: exactly lc(b)^(deg a - deg b + 1) * a mod b.
// The full power matters: the subresultant divisions below are exact only
// for this normalization.
inline ZPoly z_pseudo_rem(ZPoly a, const ZPoly& b) {
    const std::size_t db = b.size() - 1;
    const mpz_class& lb = b.back();
    const std::size_t needed = a.size() - b.size() + 1;
    std::size_t steps = 0;
    while (a.size() >= b.size()) {
        mpz_class lead = a.back();
        std::size_t shift = a.size() - b.size();
        for (auto& c : a) c *= lb;
        for (std::size_t i = 0; i < db; ++i) a[shift + i] -= lead * b[i];
        a.pop_back();
        z_trim(a);
        ++steps;
        if (a.empty()) break;
    }
    for (std::size_t k = steps; k < needed; ++k)
        for (auto& c : a) c *= lb;
    return a;
}

// Deterministic gcd via the subresultant polynomial remainder sequence.
// Returns the primitive gcd with positive leading coefficient.
inline ZPoly z_gcd(ZPoly a, ZPoly b) {
    z_trim(a);
    z_trim(b);
    if (a.empty()) return z_primitive(std::move(b));
    if (b.empty()) return z_primitive(std::move(a));
    a = z_primitive(std::move(a));
    b = z_primitive(std::move(b));
    if (a.size() < b.size()) std::swap(a, b);
    mpz_class g = 1, h = 1;
    while (true) {
        std::size_t delta = a.size() - b.size();
        ZPoly r = z_pseudo_rem(a, b);
        if (r.empty()) return z_primitive(std::move(b));
        if (r.size() == 1) return ZPoly{1};
        a = std::move(b);
        mpz_class divisor = g;
        for (std::size_t i = 0; i < delta; ++i) divisor *= h;
        b = std::move(r);
        for (auto& c : b) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), divisor.get_mpz_t());
        g = a.back();
        if (delta >= 1) {
            mpz_class gp = g;
            for (std::size_t i = 1; i < delta; ++i) gp *= g;
            mpz_class hp = 1;
            for (std::size_t i = 1; i < delta; ++i) hp *= h;
            mpz_divexact(gp.get_mpz_t(), gp.get_mpz_t(), hp.get_mpz_t());
            h = gp;
        }
    }
}

// Clears denominators and strips content: the primitive integer polynomial
// associate of a rational polynomial.
inline ZPoly to_integer_primitive(const Poly<Rational>& p) {
    if (p.is_zero()) return {};
    std::size_t d = *p.degree();
    mpz_class den_lcm = 1;
    for (std::size_t i = 0; i <= d; ++i) {
        mpz_class den = p.coeff(i).denominator();
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), den.get_mpz_t());
    }
    ZPoly z(d + 1);
    for (std::size_t i = 0; i <= d; ++i) {
        Rational c = p.coeff(i);
        z[i] = c.numerator() * (den_lcm / c.denominator());
    }
    return z_primitive(std::move(z));
}

}  // namespace ellify
