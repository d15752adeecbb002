#ifndef CRV_CONFIG_HPP
#define CRV_CONFIG_HPP

#include <cstdint>
#include <string>

#include "crv/manifold.hpp"

namespace crv {

// Run configuration, parsed from a key = value file ('#' comments allowed).
// Unknown keys are rejected. Symbolic checks are always exact; the
// tolerances here apply to quadrature-based checks only.
struct RunConfig {
    std::string manifold = "s3";  // s3 | heisenberg
    double lambda = 1.0;          // squashing parameter of the sphere family
    double contact_scale = 0.70710678118654752440;
    int n_radial = 16;
    int n_angle = 16;
    int heis_grid = 24;
    int truncation_order = 4;  // eps = e^{-r/2} units
    uint64_t seed = 1;
    std::string out_dir = "out";
    double tol_stokes = 1e-8;
    double tol_conformal = 1e-6;
    double tol_linear = 1e-8;

    static RunConfig from_file(const std::string& path);
    static RunConfig from_string(const std::string& text);

    std::unique_ptr<PseudoHermitian3> make_manifold() const;
    S3Params sphere_params() const;
};

}  // namespace crv

#endif
