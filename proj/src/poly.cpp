#include "crv/poly.hpp"

#include <ostream>
#include <sstream>

namespace crv {

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

std::string GaussianRational::str() const {
    if (im.is_zero()) return re.str();
    std::ostringstream os;
    if (re.is_zero()) {
        os << im.str() << "*i";
    } else {
        os << "(" << re.str() << (im.sign() > 0 ? "+" : "") << im.str() << "*i)";
    }
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const GaussianRational& z) { return os << z.str(); }

Poly Poly::substituted(Sym s, const Poly& value) const {
    Poly out;
    const int si = static_cast<int>(s);
    for (auto& [m, c] : terms_) {
        if (m.exp[si] == 0) {
            out.add_term(m, c);
            continue;
        }
        Monomial base = m;
        int k = base.exp[si];
        base.exp[si] = 0;
        Poly piece;
        piece.add_term(base, c);
        for (int j = 0; j < k; ++j) piece = piece * value;
        out += piece;
    }
    return out;
}

Poly Poly::flip_torsion_eigenvalue() const {
    Poly out;
    const int ti = static_cast<int>(Sym::Tt);
    const int ni = static_cast<int>(Sym::NxTau);
    for (auto& [m, c] : terms_) {
        if ((m.exp[ti] + m.exp[ni]) % 2 == 0)
            out.add_term(m, c);
        else
            out.add_term(m, -c);
    }
    return out;
}

std::complex<double> Poly::eval(const std::array<std::complex<double>, kSymCount>& vals) const {
    std::complex<double> acc = 0.0;
    for (auto& [m, c] : terms_) {
        std::complex<double> t(c.re.to_double(), c.im.to_double());
        for (int i = 0; i < kSymCount; ++i)
            for (int j = 0; j < m.exp[i]; ++j) t *= vals[i];
        acc += t;
    }
    return acc;
}

std::string Poly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& [m, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << c.str();
        for (int i = 0; i < kSymCount; ++i) {
            if (m.exp[i] == 0) continue;
            os << "*" << sym_name(static_cast<Sym>(i));
            if (m.exp[i] > 1) os << "^" << int(m.exp[i]);
        }
    }
    return os.str();
}

namespace {

std::string latex_coeff(const GaussianRational& c, bool lead) {
    std::ostringstream os;
    auto rat = [](const Rational& r) {
        std::string n = r.num_string(), d = r.den_string();
        if (d == "1") return n;
        std::string sign = (n[0] == '-') ? "-" : "";
        if (!sign.empty()) n = n.substr(1);
        return sign + "\\tfrac{" + n + "}{" + d + "}";
    };
    if (c.is_real()) {
        std::string s = rat(c.re);
        if (!lead && s[0] != '-') os << "+";
        os << s;
    } else if (c.re.is_zero()) {
        std::string s = rat(c.im);
        if (!lead && s[0] != '-') os << "+";
        os << s << "i";
    } else {
        if (!lead) os << "+";
        os << "(" << rat(c.re) << (c.im.sign() > 0 ? "+" : "") << rat(c.im) << "i)";
    }
    return os.str();
}

}  // namespace

std::string Poly::latex() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& [m, c] : terms_) {
        bool unit_mono = m.total_degree() == 0;
        GaussianRational one(1), minus(-1L);
        if (!unit_mono && (c == one || c == minus)) {
            if (c == minus)
                os << "-";
            else if (!first)
                os << "+";
        } else {
            os << latex_coeff(c, first);
        }
        for (int i = 0; i < kSymCount; ++i) {
            if (m.exp[i] == 0) continue;
            os << " " << sym_latex(static_cast<Sym>(i));
            if (m.exp[i] > 1) os << "^{" << int(m.exp[i]) << "}";
        }
        first = false;
    }
    return os.str();
}

Poly poly_reduce(const Poly& p, ReduceLog* log) {
    Poly out;
    for (auto& [m, c] : p.terms()) {
        int dd = m.divergence_degree();
        if (dd == 0) {
            out.add_term(m, c);
        } else if (dd == 1 && m.total_degree() == 1) {
            // A bare divergence symbol integrates to zero over the closed
            // boundary; anything multiplying it breaks the Stokes argument.
            if (log) log->dropped.add_term(m, c);
        } else {
            out.add_term(m, c);
            if (log) {
                Poly t;
                t.add_term(m, c);
                log->warnings.push_back("retained monomial with divergence factor: " + t.str());
            }
        }
    }
    return out;
}

}  // namespace crv
