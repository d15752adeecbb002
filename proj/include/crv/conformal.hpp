#ifndef CRV_CONFORMAL_HPP
#define CRV_CONFORMAL_HPP

#include <memory>

#include "crv/tw.hpp"

namespace crv {

// The structure with contact form u * eta (u > 0), carrying the adapted
// coframe f theta^1 + 2i f_{,1bar} eta with f = sqrt(u), and the matching
// dual frame. Shares the base quadrature nodes.
class ConformalStructure final : public PseudoHermitian3 {
public:
    ConformalStructure(const PseudoHermitian3& base, ScalarField u);

    std::string name() const override { return base_.name() + "+conf"; }
    const std::vector<Node>& nodes() const override { return base_.nodes(); }
    FieldJet contact_form(int node, int ord) const override;
    FieldJet unitary_coframe(int node, int ord) const override;
    FieldJet reeb(int node, int ord) const override;
    FieldJet cr_frame(int node, int ord) const override;
    int max_order() const override { return base_.max_order() - 1; }

    const PseudoHermitian3& base() const { return base_; }
    Jet factor_sqrt(int node, int ord) const;  // f = sqrt(u)

private:
    const PseudoHermitian3& base_;
    ScalarField u_;
};

// Pointwise transformation laws for the Webster scalar curvature and the
// torsion under eta -> u eta, evaluated from f = sqrt(u) and base data.
// scalar law:   R_hat = f^{-3} (R f - 4 lap f)
// torsion law:  tau_hat = f^{-2} (tau - 2i f^{-1} f_{,1b1b} + 6i f^{-2} (f_{,1b})^2)
// The *_printed variants carry the reference coefficients that fail the
// recomputation oracle; they are kept for the report only.
double hat_scalar_law(const PseudoHermitian3& m, const TWData& tw, int node, const ScalarField& u);
double hat_scalar_law_printed(const PseudoHermitian3& m, const TWData& tw, int node,
                              const ScalarField& u);
cplx hat_torsion_law(const PseudoHermitian3& m, const TWData& tw, int node, const ScalarField& u);
cplx hat_torsion_law_printed(const PseudoHermitian3& m, const TWData& tw, int node,
                             const ScalarField& u);

struct ConformalLawErrors {
    double scalar_law = 0;      // law vs recomputation, max relative
    double torsion_law = 0;
    double scalar_printed = 0;  // printed coefficients vs recomputation
    double torsion_printed = 0;
    double coframe_residual = 0;  // d(u eta) - i theta_hat ^ theta_hatbar
};

ConformalLawErrors conformal_law_errors(const PseudoHermitian3& m, const TWData& tw,
                                        const ScalarField& u, Exec ex = Exec::Parallel);

// integral of R^2/16 - (5/2)|tau|^2
double t_functional(const PseudoHermitian3& m, const TWData& tw, Exec ex = Exec::Parallel);
double t_functional(const PseudoHermitian3& m, Exec ex = Exec::Parallel);

// renormalized-volume anomaly V(u eta) - V(eta) = (2/3)(T(u eta) - T(eta))
double anomaly(const PseudoHermitian3& m, const ScalarField& u, Exec ex = Exec::Parallel);

// central-difference first variation of the anomaly at u = 1 in direction
// phi, Richardson-extrapolated over h and h/2
struct VariationResult {
    double value;
    double coarse;    // plain central difference at h
    double finer;     // plain central difference at h/2
    double order_est; // observed convergence order
};
VariationResult anomaly_first_variation(const PseudoHermitian3& m, const ScalarField& phi,
                                        double h, Exec ex = Exec::Parallel);

VerificationReport conformal_report(const PseudoHermitian3& m, const TWData& tw,
                                    const ScalarField& u, double tol);

}  // namespace crv

#endif
