#ifndef CRV_MANIFOLD_HPP
#define CRV_MANIFOLD_HPP

#include <functional>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "crv/jet.hpp"

namespace crv {

struct Node {
    std::array<double, 4> x;
    double w_ref;  // quadrature weight for the reference density
    std::array<std::array<double, 4>, 3> tangent;  // basis used to evaluate 3-forms
};

// Scalar function on a structure, evaluated as an ambient jet at a node.
using ScalarField = std::function<Jet(const std::array<double, 4>&, int)>;

// A closed strictly pseudoconvex 3-manifold with a fixed contact form eta and
// adapted unitary coframe theta^1 (so d eta = i theta^1 ^ theta^1bar), its
// dual frame (reeb field xi and CR frame Z), and a quadrature rule.
class PseudoHermitian3 {
public:
    virtual ~PseudoHermitian3() = default;
    virtual std::string name() const = 0;
    virtual const std::vector<Node>& nodes() const = 0;
    virtual FieldJet contact_form(int node, int ord) const = 0;
    virtual FieldJet unitary_coframe(int node, int ord) const = 0;
    virtual FieldJet reeb(int node, int ord) const = 0;
    virtual FieldJet cr_frame(int node, int ord) const = 0;
    // highest jet order the coframe supports
    virtual int max_order() const { return Jet::kMaxOrd; }
};

// Left-invariant structures on the 3-sphere. squash = 1 is the round CR
// sphere; squash != 1 has constant nonzero torsion. contact_scale multiplies
// the contact form (the normalization with scale = 1/sqrt(2) makes the model
// ball volume lead with pi^2 e^{2r}).
struct S3Params {
    double squash = 1.0;
    double contact_scale = 0.70710678118654752440;
    int n_radial = 16;  // Gauss-Legendre points in the Hopf height
    int n_angle = 16;   // uniform points per angle
};

std::unique_ptr<PseudoHermitian3> make_sphere(const S3Params& p);

// Flat compact quotient of the Heisenberg group, unit square lattice, with
// the z-independent function algebra.
struct HeisenbergParams {
    int n_grid = 24;
};

std::unique_ptr<PseudoHermitian3> make_heisenberg(const HeisenbergParams& p);

// quadrature measure density eta ^ d eta at a node, against the node basis
double measure_density(const PseudoHermitian3& m, int node);
// exact total integral of eta ^ d eta for the built-in structures
double reference_total_measure(const std::string& name);

// random smooth test data (low-degree polynomial / trigonometric fields)
ScalarField random_real_field(const PseudoHermitian3& m, std::mt19937_64& rng, double amplitude);
ScalarField random_complex_field(const PseudoHermitian3& m, std::mt19937_64& rng, double amplitude);

inline std::array<Jet, 4> coordinate_jets(const std::array<double, 4>& x, int ord) {
    return {Jet::coordinate(0, x[0], ord), Jet::coordinate(1, x[1], ord),
            Jet::coordinate(2, x[2], ord), Jet::coordinate(3, x[3], ord)};
}

}  // namespace crv

#endif
