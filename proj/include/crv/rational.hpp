#ifndef CRV_RATIONAL_HPP
#define CRV_RATIONAL_HPP

#include <gmpxx.h>

#include <cstdint>
#include <iosfwd>
#include <string>

namespace crv {

// Exact rational scalar. Canonical form is kept at all times: lowest terms,
// positive denominator. Arithmetic never rounds.
class Rational {
public:
    Rational() : q_(0) {}
    Rational(long n) : q_(n) { q_.canonicalize(); }
    Rational(long n, long d) : q_(n, d) { q_.canonicalize(); }
    explicit Rational(const mpq_class& q) : q_(q) { q_.canonicalize(); }
    static Rational from_string(const std::string& s) { return Rational(mpq_class(s)); }

    Rational operator-() const { return Rational(mpq_class(-q_)); }
    Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
    Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
    Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
    Rational& operator/=(const Rational& o) { q_ /= o.q_; return *this; }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.q_ != b.q_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.q_ < b.q_; }

    bool is_zero() const { return q_ == 0; }
    int sign() const { return sgn(q_); }

    std::string num_string() const { return q_.get_num().get_str(); }
    std::string den_string() const { return q_.get_den().get_str(); }
    std::string str() const { return q_.get_str(); }
    double to_double() const { return q_.get_d(); }

private:
    mpq_class q_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

// Element of Q(i); coefficients of the symbolic layer live here because the
// torsion-derivative terms of the expansion carry factors of i.
struct GaussianRational {
    Rational re;
    Rational im;

    GaussianRational() = default;
    GaussianRational(Rational r) : re(std::move(r)) {}
    GaussianRational(long n) : re(n) {}
    GaussianRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}
    static GaussianRational i_times(const Rational& r) { return {Rational(0), r}; }

    GaussianRational conj() const { return {re, -im}; }
    bool is_zero() const { return re.is_zero() && im.is_zero(); }
    bool is_real() const { return im.is_zero(); }

    GaussianRational operator-() const { return {-re, -im}; }
    GaussianRational& operator+=(const GaussianRational& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    GaussianRational& operator-=(const GaussianRational& o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
    friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
    friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re == b.re && a.im == b.im;
    }
    friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }

    std::string str() const;
};

std::ostream& operator<<(std::ostream& os, const GaussianRational& z);

}  // namespace crv

#endif
