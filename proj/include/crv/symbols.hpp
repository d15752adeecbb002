#ifndef CRV_SYMBOLS_HPP
#define CRV_SYMBOLS_HPP

#include <array>
#include <cstdint>
#include <string_view>

namespace crv {

// Fixed symbol alphabet of the curvature/torsion calculus on the boundary.
// R is the Tanaka-Webster scalar curvature, tau the Reeb torsion, t the
// eigenvalue of J0*tau on the distinguished eigenvector (TauSq == Tt^2 as a
// value, but both are carried as symbols). A2/B2 are the Id_xi and Id_H
// coefficients of the order-2 shape term, Wa/Wb the two free coefficients of
// the order-2 anti-self-dual curvature correction. Comma symbols are iterated
// Tanaka-Webster derivatives; the trailing 'b' marks a bar index.
enum class Sym : uint8_t {
    R,         // Webster scalar curvature
    TauSq,     // |tau|^2
    Tt,        // t, eigenvalue of J0*tau
    A2,        // order-2 shape coefficient on the Reeb direction
    B2,        // order-2 shape coefficient on the contact distribution
    Wa,        // first free coefficient of the order-2 curvature correction
    Wb,        // second free coefficient of the order-2 curvature correction
    R1,        // R,1
    R1b,       // R,1bar
    R11b,      // R,1 1bar
    R1b1,      // R,1bar 1
    LapR,      // Delta R = R,1 1bar + R,1bar 1
    Tau1,      // tau^1_{1bar,1}
    Tau1b,     // tau^{1bar}_{1,1bar}
    Tau11,     // tau^1_{1bar,11}
    Tau1b1b,   // tau^{1bar}_{1,1bar 1bar}
    NxTau,     // marker for nabla_xi tau components
    OTag,      // marker for an already-discarded divergence term
    Count
};

inline constexpr int kSymCount = static_cast<int>(Sym::Count);

// Symbols whose integral over a closed boundary vanishes by the CR Stokes
// formula; monomials linear in one of these drop under reduction. The list is
// the second/third-derivative one: Delta R and its two halves, and the
// third-derivative torsion components that actually occur in the expansion
// (each is a TW derivative of a globally defined form component of unitary
// weight -/+1, so the same Stokes argument applies to them).
inline constexpr bool is_divergence_class(Sym s) {
    switch (s) {
        case Sym::R11b:
        case Sym::R1b1:
        case Sym::LapR:
        case Sym::Tau11:
        case Sym::Tau1b1b:
        case Sym::OTag:
            return true;
        default:
            return false;
    }
}

// Conjugation involution on the alphabet.
inline constexpr Sym conj_sym(Sym s) {
    switch (s) {
        case Sym::R1: return Sym::R1b;
        case Sym::R1b: return Sym::R1;
        case Sym::R11b: return Sym::R1b1;
        case Sym::R1b1: return Sym::R11b;
        case Sym::Tau1: return Sym::Tau1b;
        case Sym::Tau1b: return Sym::Tau1;
        case Sym::Tau11: return Sym::Tau1b1b;
        case Sym::Tau1b1b: return Sym::Tau11;
        default: return s;
    }
}

inline constexpr std::string_view sym_name(Sym s) {
    constexpr std::array<std::string_view, kSymCount> names = {
        "R", "tau_sq", "t", "A", "B", "a", "b",
        "R_1", "R_1b", "R_11b", "R_1b1", "lap_R",
        "tau_1b_1", "tau_1_1b", "tau_1b_11", "tau_1_1b1b",
        "nx_tau", "O"};
    return names[static_cast<int>(s)];
}

inline constexpr std::string_view sym_latex(Sym s) {
    constexpr std::array<std::string_view, kSymCount> names = {
        "R", "|\\tau|^2", "t", "A", "B", "a", "b",
        "R_{,1}", "R_{,\\bar 1}", "R_{,1\\bar 1}", "R_{,\\bar 1 1}", "\\Delta R",
        "\\tau^1_{\\bar 1,1}", "\\tau^{\\bar 1}_{1,\\bar 1}",
        "\\tau^1_{\\bar 1,11}", "\\tau^{\\bar 1}_{1,\\bar 1\\bar 1}",
        "\\nabla_\\xi\\tau", "\\mathcal{O}"};
    return names[static_cast<int>(s)];
}

}  // namespace crv

#endif
