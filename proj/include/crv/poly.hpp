#ifndef CRV_POLY_HPP
#define CRV_POLY_HPP

#include <array>
#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "crv/rational.hpp"
#include "crv/symbols.hpp"

namespace crv {

// Commutative monomial over the fixed alphabet, stored as an exponent vector.
struct Monomial {
    std::array<uint8_t, kSymCount> exp{};

    static Monomial one() { return {}; }
    static Monomial of(Sym s, int k = 1) {
        Monomial m;
        m.exp[static_cast<int>(s)] = static_cast<uint8_t>(k);
        return m;
    }

    int degree(Sym s) const { return exp[static_cast<int>(s)]; }
    int total_degree() const {
        int d = 0;
        for (auto e : exp) d += e;
        return d;
    }
    int divergence_degree() const {
        int d = 0;
        for (int i = 0; i < kSymCount; ++i)
            if (is_divergence_class(static_cast<Sym>(i))) d += exp[i];
        return d;
    }
    Monomial operator*(const Monomial& o) const {
        Monomial m;
        for (int i = 0; i < kSymCount; ++i) m.exp[i] = static_cast<uint8_t>(exp[i] + o.exp[i]);
        return m;
    }
    Monomial conj() const {
        Monomial m;
        for (int i = 0; i < kSymCount; ++i)
            m.exp[static_cast<int>(conj_sym(static_cast<Sym>(i)))] = exp[i];
        return m;
    }
    auto operator<=>(const Monomial& o) const = default;
};

struct ReduceLog;

// Exact polynomial in the curvature alphabet with Gaussian-rational
// coefficients. Zero coefficients are never stored.
class Poly {
public:
    using Map = std::map<Monomial, GaussianRational>;

    Poly() = default;
    Poly(long n) { add_term(Monomial::one(), GaussianRational(n)); }
    Poly(Rational r) { add_term(Monomial::one(), GaussianRational(std::move(r))); }
    Poly(GaussianRational c) { add_term(Monomial::one(), std::move(c)); }
    static Poly sym(Sym s) {
        Poly p;
        p.add_term(Monomial::of(s), GaussianRational(1));
        return p;
    }
    static Poly term(GaussianRational c, std::initializer_list<Sym> syms) {
        Monomial m;
        for (Sym s : syms) m = m * Monomial::of(s);
        Poly p;
        p.add_term(m, std::move(c));
        return p;
    }

    bool is_zero() const { return terms_.empty(); }
    const Map& terms() const { return terms_; }
    void add_term(const Monomial& m, const GaussianRational& c) {
        if (c.is_zero()) return;
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            terms_.emplace(m, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    Poly operator-() const {
        Poly p;
        for (auto& [m, c] : terms_) p.terms_.emplace(m, -c);
        return p;
    }
    Poly& operator+=(const Poly& o) {
        for (auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    Poly& operator-=(const Poly& o) {
        for (auto& [m, c] : o.terms_) add_term(m, -c);
        return *this;
    }
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b) {
        Poly p;
        for (auto& [ma, ca] : a.terms_)
            for (auto& [mb, cb] : b.terms_) p.add_term(ma * mb, ca * cb);
        return p;
    }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }
    friend Poly operator*(const GaussianRational& c, const Poly& p) {
        Poly q;
        for (auto& [m, pc] : p.terms_) q.add_term(m, c * pc);
        return q;
    }
    friend Poly operator*(const Rational& c, const Poly& p) { return GaussianRational(c) * p; }
    friend bool operator==(const Poly& a, const Poly& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    Poly conj() const {
        Poly p;
        for (auto& [m, c] : terms_) p.add_term(m.conj(), c.conj());
        return p;
    }
    bool is_real() const { return *this == conj(); }
    bool contains(Sym s) const {
        for (auto& [m, c] : terms_)
            if (m.degree(s) > 0) return true;
        return false;
    }

    // Substitute a polynomial for a symbol (the symbol must appear at most
    // linearly in every monomial, which holds for every use in the engine).
    Poly substituted(Sym s, const Poly& value) const;
    // Re-choose the distinguished torsion eigenvector h -> J0 h: flips the
    // sign of t and of the reeb-torsion marker components.
    Poly flip_torsion_eigenvalue() const;

    std::complex<double> eval(const std::array<std::complex<double>, kSymCount>& vals) const;

    std::string str() const;
    std::string latex() const;

private:
    Map terms_;
};

// Result of quotienting by the divergence ideal: monomials linear in one
// divergence-class symbol are deleted (their integral over the closed
// boundary vanishes); monomials of higher divergence degree are retained and
// flagged, since the Stokes argument only covers linear occurrences.
struct ReduceLog {
    Poly dropped;
    std::vector<std::string> warnings;
};

Poly poly_reduce(const Poly& p, ReduceLog* log = nullptr);

}  // namespace crv

#endif
