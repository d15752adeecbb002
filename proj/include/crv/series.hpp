#ifndef CRV_SERIES_HPP
#define CRV_SERIES_HPP

#include <map>
#include <stdexcept>
#include <string>
#include <utility>

#include "crv/poly.hpp"

namespace crv {

struct SeriesOrderError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Polynomial coefficient with an opaque remainder tag. A tagged entry stands
// for "the stored value plus an order-3/2-type term that is never expanded";
// tags survive every ring operation against anything that is not known to be
// zero, so a clean final coefficient proves the discarded terms dropped out.
struct TPoly {
    Poly v;
    bool rem = false;

    TPoly() = default;
    TPoly(Poly p) : v(std::move(p)) {}
    TPoly(long n) : v(n) {}
    TPoly(Rational r) : v(std::move(r)) {}
    static TPoly remainder() {
        TPoly t;
        t.rem = true;
        return t;
    }

    bool known_zero() const { return v.is_zero() && !rem; }

    TPoly operator-() const { return {-v, rem}; }
    TPoly& operator+=(const TPoly& o) {
        v += o.v;
        rem = rem || o.rem;
        return *this;
    }
    friend TPoly operator+(TPoly a, const TPoly& b) { return a += b; }
    friend TPoly operator-(TPoly a, const TPoly& b) {
        a.v -= b.v;
        a.rem = a.rem || b.rem;
        return a;
    }
    friend TPoly operator*(const TPoly& a, const TPoly& b) {
        TPoly t;
        t.v = a.v * b.v;
        t.rem = (a.rem && !b.known_zero()) || (b.rem && !a.known_zero());
        return t;
    }

private:
    TPoly(Poly p, bool r) : v(std::move(p)), rem(r) {}
};

// Finite asymptotic series in eps = e^{-r/2}. Orders are integers in eps
// units (e^{2r} has order -4). `lead` is the declared leading order, `qmax`
// the last order the series is valid through; coefficients beyond qmax are
// not merely unstored, asking for them is an error.
template <class C>
class Series {
public:
    Series(int lead, int qmax) : lead_(lead), qmax_(qmax) {
        if (qmax < lead) throw SeriesOrderError("series truncated above its leading order");
    }

    static Series zero(int lead, int qmax) { return Series(lead, qmax); }
    static Series monomial(C c, int order, int qmax) {
        Series s(order, qmax);
        s.set(order, std::move(c));
        return s;
    }

    int lead() const { return lead_; }
    int qmax() const { return qmax_; }

    void set(int k, C c) {
        if (k > qmax_) throw SeriesOrderError("coefficient set beyond truncation order");
        if (k < lead_) lead_ = k;
        if (c.known_zero())
            c_.erase(k);
        else
            c_[k] = std::move(c);
    }

    const C& at(int k) const {
        if (k > qmax_)
            throw SeriesOrderError("coefficient of order " + std::to_string(k) +
                                   " requested beyond truncation order " + std::to_string(qmax_));
        auto it = c_.find(k);
        return it == c_.end() ? zero_coeff() : it->second;
    }

    const std::map<int, C>& stored() const { return c_; }

    Series operator-() const {
        Series s(lead_, qmax_);
        for (auto& [k, c] : c_) s.c_[k] = -c;
        return s;
    }
    friend Series operator+(const Series& a, const Series& b) {
        Series s(std::min(a.lead_, b.lead_), std::min(a.qmax_, b.qmax_));
        for (auto& [k, c] : a.c_)
            if (k <= s.qmax_) s.c_[k] = c;
        for (auto& [k, c] : b.c_)
            if (k <= s.qmax_) {
                auto it = s.c_.find(k);
                if (it == s.c_.end())
                    s.c_[k] = c;
                else {
                    it->second += c;
                    if (it->second.known_zero()) s.c_.erase(it);
                }
            }
        return s;
    }
    friend Series operator-(const Series& a, const Series& b) { return a + (-b); }

    // Cauchy product with o-calculus truncation.
    friend Series operator*(const Series& a, const Series& b) {
        Series s(a.lead_ + b.lead_, std::min(a.qmax_ + b.lead_, b.qmax_ + a.lead_));
        for (auto& [i, ci] : a.c_)
            for (auto& [j, cj] : b.c_) {
                if (i + j > s.qmax_) continue;
                C p = ci * cj;
                if (p.known_zero()) continue;
                auto it = s.c_.find(i + j);
                if (it == s.c_.end())
                    s.c_[i + j] = std::move(p);
                else {
                    it->second += p;
                    if (it->second.known_zero()) s.c_.erase(it);
                }
            }
        return s;
    }

    Series scaled(const C& c) const {
        Series s(lead_, qmax_);
        for (auto& [k, v] : c_) {
            C p = v * c;
            if (!p.known_zero()) s.c_[k] = std::move(p);
        }
        return s;
    }

    // Multiplication by the pure power eps^shift (exact, retunes validity).
    Series shifted(int shift) const {
        Series s(lead_ + shift, qmax_ + shift);
        for (auto& [k, v] : c_) s.c_[k + shift] = v;
        return s;
    }

    // d/dr acting on sum c_k eps^k with eps = e^{-r/2}.
    Series d_dr() const {
        Series s(lead_, qmax_);
        for (auto& [k, v] : c_) {
            if (k == 0) continue;
            C p = v * C(Rational(-k, 2));
            if (!p.known_zero()) s.c_[k] = std::move(p);
        }
        return s;
    }

private:
    static const C& zero_coeff() {
        static const C z{};
        return z;
    }
    int lead_;
    int qmax_;
    std::map<int, C> c_;
};

using ScalarSeries = Series<TPoly>;

// Reciprocal of a series with constant leading coefficient 1 at order 0.
ScalarSeries series_inv(const ScalarSeries& x);
// y with y*y*x = 1 + o(eps^qmax); leading coefficient must be exactly 1.
ScalarSeries series_inv_sqrt(const ScalarSeries& x);

}  // namespace crv

#endif
