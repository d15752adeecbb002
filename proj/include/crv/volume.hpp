#ifndef CRV_VOLUME_HPP
#define CRV_VOLUME_HPP

#include <optional>

#include "crv/conformal.hpp"
#include "crv/expansion.hpp"
#include "crv/gbc.hpp"
#include "crv/tw.hpp"

namespace crv {

// numeric values of the symbol alphabet at a node (reeb-torsion marker and
// the free curvature-correction coefficients evaluate to zero)
std::array<cplx, kSymCount> symbol_values(const PseudoHermitian3& m, const TWData& tw, int node);

// Volume expansion of the coordinate balls: symbolic densities per unit
// eta ^ d eta measure, and their quadrature values. The genuine constant term
// is not formally determined; it is known only for the model.
struct VolumeExpansion {
    Poly lead_density;    // e^{2r} slot, per measure unit (equals 1)
    Poly sub_density;     // e^{r} slot (-R/2)
    Poly linear_density;  // r-linear slot, reduces to zero in the quotient
    Poly linear_dropped;
    double lead_num = 0;    // coefficient of e^{2r} in vol B(r)
    double sub_num = 0;     // coefficient of e^{r}
    double linear_num = 0;  // quadrature of the r-linear density
    double t_integral = 0;  // integral of R^2/16 - (5/2)|tau|^2
    std::optional<double> renormalized;  // V, model only
    std::optional<double> curly_v;       // (3/2)V - t_integral
};

VolumeExpansion volume_series(const FormalExpansion& fe, const PseudoHermitian3& m,
                              const TWData& tw, Exec ex = Exec::Parallel);

// ----- the model: complex hyperbolic plane, hol. sectional curvature -1 ----

// curvature of ds^2 + sinh(s)^2 s1^2 + 4 sinh(s/2)^2 (s2^2 + s3^2) at radius s
struct ModelCurvature {
    double scal;
    double einstein_residual;  // max |Ric + (3/2) g|
    double weyl_sq;            // operator norm squared
    double bulk_integrand;     // |W|^2 - Scal^2/24
    std::array<double, 6> sectional;  // pair basis (01,02,03,12,13,23)
};
ModelCurvature model_curvature_at(double s);

// closed-form volume expansion of the model ball in the adapted radial
// coordinate; `scale` is the constant multiplying the standard contact form
// of the unit sphere at infinity. The radial gauge shift is solved from the
// engine's own metric coefficients and cross-checked for consistency.
struct Ch2Volume {
    double lead;       // coefficient of e^{2r}  (pi^2 at scale 1/sqrt(2))
    double sub;        // coefficient of e^{r}
    double renormalized;  // the constant term V
    double gauge_shift;   // coefficient of e^{-2r} in the radial change
    double gauge_consistency;  // spread of the three independent solutions
};
Ch2Volume ch2_renormalized_volume(const FormalExpansion& fe, double scale);

// (3/2) V - integral of R^2/16 - (5/2)|tau|^2
double curly_v(double renormalized_volume, double t_integral);

// end-to-end Euler characteristic of the model: bulk integrand vanishes
// pointwise, so chi = curly_v / (4 pi^2) must equal 1
VerificationReport euler_check_ch2(const FormalExpansion& fe, const S3Params& boundary_params);

// CSV row for the volume pipeline
std::string volume_csv_header();
std::string volume_csv_row(const std::string& name, const VolumeExpansion& v);

}  // namespace crv

#endif
