#pragma once

// Exact rational scalar backed by GMP. Values are kept canonical at all
// times: fully reduced fraction, denominator > 0.

#include <gmpxx.h>

#include <cstdlib>
#include <ostream>
#include <stdexcept>
#include <string>
#include <type_traits>

namespace ellify {

class Rational {
public:
    Rational() : v_(0) {}
    template <typename I, std::enable_if_t<std::is_integral_v<I>, int> = 0>
    Rational(I n) : v_(static_cast<long>(n)) {}  // NOLINT: implicit by design
    Rational(long num, long den) : v_(num, den) {
        if (den == 0) throw std::invalid_argument("rational: zero denominator");
        v_.canonicalize();
    }
    explicit Rational(const mpz_class& n) : v_(n) {}
    explicit Rational(const mpq_class& q) : v_(q) {
        if (sgn(v_.get_den()) == 0) throw std::invalid_argument("rational: zero denominator");
        v_.canonicalize();
    }
    explicit Rational(double d) : v_(d) { v_.canonicalize(); }

    // Accepts "p", "-p", "p/q" with optional sign.
    static Rational parse(const std::string& s) {
        try {
            mpq_class q(s, 10);
            if (sgn(q.get_den()) == 0)
                throw std::invalid_argument("rational: zero denominator in '" + s + "'");
            q.canonicalize();
            return Rational(q);
        } catch (const std::invalid_argument&) {
            throw std::invalid_argument("rational: cannot parse '" + s + "'");
        }
    }

    bool is_zero() const { return sgn(v_) == 0; }
    int sign() const { return sgn(v_); }

    const mpq_class& raw() const { return v_; }
    mpz_class numerator() const { return v_.get_num(); }
    mpz_class denominator() const { return v_.get_den(); }

    std::string str() const { return v_.get_str(); }
    double to_double() const { return v_.get_d(); }

    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw std::domain_error("rational: division by zero");
        v_ /= o.v_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    friend Rational operator-(const Rational& a) { Rational r; r.v_ = -a.v_; return r; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

    friend Rational abs(const Rational& a) { Rational r; r.v_ = ::abs(a.v_); return r; }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.v_; }

private:
    mpq_class v_;
};

// Exactness tag for the two scalar backends. Structural theorems and
// certifications are only meaningful over an exact field.
template <typename T>
inline constexpr bool is_exact_scalar_v = std::is_same_v<T, Rational>;

inline double to_double(const Rational& r) { return r.to_double(); }
inline double to_double(double d) { return d; }

}  // namespace ellify
