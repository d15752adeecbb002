#ifndef CRV_TW_HPP
#define CRV_TW_HPP

#include <optional>
#include <string>
#include <vector>

#include "crv/manifold.hpp"
#include "crv/report.hpp"

namespace crv {

enum class Exec { Serial, Parallel };

// Tanaka-Webster data at one node: connection form components against
// (eta, theta, thetabar), torsion, and scalar curvature, all as jets so that
// covariant derivatives can be iterated.
struct NodeTW {
    Jet om0, om1, om1b;
    Jet tau;
    Jet scal;
};

struct TWData {
    std::vector<NodeTW> node;
    double scal_mean = 0, scal_spread = 0;
    double tau_abs_mean = 0, tau_abs_spread = 0;
};

// Decompose d theta^1 in the coframe basis at every node. `ord` is the jet
// order requested for the connection data (the coframe must support ord + 1).
// Throws on a degenerate coframe.
TWData solve_connection(const PseudoHermitian3& m, int ord = 2, Exec ex = Exec::Parallel);

// residual of d eta = i theta ^ thetabar over all nodes (structure validity)
double contact_structure_residual(const PseudoHermitian3& m);
// residual of the reconstructed structure equation at every node
double structure_equation_residual(const PseudoHermitian3& m, const TWData& tw);

// Covariant derivative of a weighted component along frame directions.
// Directions: '1' = Z, 'b' = Zbar, '0' = reeb. The weight of a component
// counts upper-1 and lower-1bar indices as +1, the conjugates as -1; each
// derivative shifts the weight accordingly.
Jet covariant_derivative(const PseudoHermitian3& m, const TWData& tw, int node, Jet component,
                         int weight, const std::string& dirs);

// sub-Laplacian of a scalar field at a node: u_{,1 1bar} + u_{,1bar 1}
Jet sublaplacian(const PseudoHermitian3& m, const TWData& tw, int node, const ScalarField& u);

// integral against eta ^ d eta
double integrate(const PseudoHermitian3& m, const std::vector<double>& values,
                 Exec ex = Exec::Parallel);
double integrate_field(const PseudoHermitian3& m, const ScalarField& f, Exec ex = Exec::Parallel);
double total_measure(const PseudoHermitian3& m, Exec ex = Exec::Parallel);

// The three routes of the closed-manifold Stokes identity for a (1,0)-form
// alpha = a theta^1: the covariant route integrates a_{,1bar}; the exterior
// route integrates (d alpha) ^ eta; the wedge route integrates alpha ^ d eta,
// which vanishes pointwise. All three must vanish; the first two agree
// pointwise up to the factor recorded in `pointwise_defect`.
struct StokesResult {
    cplx covariant;
    cplx exterior;
    cplx wedge;
    double pointwise_defect;
    double alpha_sup;
};

StokesResult cr_stokes_integrals(const PseudoHermitian3& m, const TWData& tw,
                                 const ScalarField& alpha1, Exec ex = Exec::Parallel);
VerificationReport cr_stokes_check(const PseudoHermitian3& m, const TWData& tw,
                                   const ScalarField& alpha1, double tol);

}  // namespace crv

#endif
