#ifndef CRV_EXPANSION_HPP
#define CRV_EXPANSION_HPP

#include "crv/frame.hpp"
#include "crv/report.hpp"
#include "crv/series.hpp"

namespace crv {

// Named coefficient polynomials of the Kähler-Einstein expansion.
namespace coeffs {
Poly p_base();          // R^2/8 - |tau|^2
Poly t3();              // i (tau^1_{1b,11} - tau^{1b}_{1,1b1b}), a real combination
Poly c_radial();        // p_base - lap_R/6 + (2/3) t3  (dr^2 and eta^2 slot)
Poly c_contact();       // p_base + lap_R/12 - (1/3) t3 (gamma slot)
Poly shape2_reeb();     // expanded A: p_base + O
Poly shape2_contact();  // expanded B: R^2/16 + (5/2)|tau|^2 + O
}  // namespace coeffs

// Substitute |tau|^2 -> t^2 so that exact comparisons live in one variable.
Poly canonical_torsion(const Poly& p);
// Pair even powers of t back into |tau|^2 for display.
Poly display_torsion(const Poly& p);
// Substitute the symbols A and B by their expanded values.
Poly expand_shape_symbols(const Poly& p);

// The formally determined series of the compactified Einstein metric in the
// adapted frame, together with the boundary quantities built from them.
// "stated" members transcribe the reference formulas; "derived" members
// recompute them from the metric and Kähler-form series. eps-order 4
// corresponds to e^{-2r}.
struct FormalExpansion {
    MatSeries metric;  // symmetric graded frame components, identity at order 0
    MatSeries omega;   // Kähler 2-form components
    MatSeries cx_J;    // almost complex structure

    ScalarSeries normal_radial;  // radial factor of the outer unit normal
    bool normal_tangential_tag = false;

    ScalarSeries bulk_volume_density;    // vs e^{2r} dr ^ eta ^ deta
    ScalarSeries sphere_volume_derived;  // vs e^{2r} eta ^ deta
    ScalarSeries sphere_volume_stated;

    MatSeries second_fund_derived;  // graded bilinear form, full frame
    MatSeries second_fund_stated;

    ShapeSeries shape_derived;
    ShapeSeries shape_stated;
    Poly shape_offdiag_discard;  // reeb-torsion off-diagonal dropped when diagonalizing

    explicit FormalExpansion(int qmax)
        : metric(0, qmax),
          omega(0, qmax),
          cx_J(0, qmax),
          normal_radial(0, qmax),
          bulk_volume_density(0, qmax),
          sphere_volume_derived(0, qmax),
          sphere_volume_stated(0, qmax),
          second_fund_derived(0, qmax),
          second_fund_stated(0, qmax),
          shape_derived(0, qmax),
          shape_stated(0, qmax) {}
};

FormalExpansion build_formal_expansion(int qmax = 4);

// phi (as a complex H-block endomorphism series) and J from the boundary
// torsion data; consistency J^2 = -Id is a report check.
struct PhiJ {
    MatSeries phi;
    MatSeries cx_J;
};
PhiJ build_phi_j(int qmax = 4);

// Dual-path checks: stated coefficients against derived ones, J^2 + Id = 0,
// unit normal normalization, reproduction of the second fundamental form,
// and the known internal tension between the metric and Kähler-form sources.
VerificationReport formal_expansion_report(const FormalExpansion& fe);

// LaTeX rendering of a scalar series (for the report artifacts).
std::string series_latex(const ScalarSeries& s);

}  // namespace crv

#endif
