// Acceptance suite: runs every gate criterion at its stated tolerance and
// prints one PASS/FAIL line per criterion. Exit code 0 iff all pass.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <vector>

#include "crv/conformal.hpp"
#include "crv/gbc.hpp"
#include "crv/serialize.hpp"
#include "crv/volume.hpp"

using namespace crv;
using clk = std::chrono::steady_clock;

namespace {

constexpr double kPi = std::numbers::pi;
int g_failures = 0;

void criterion(int number, const std::string& what, bool passed, const std::string& detail = "") {
    std::printf("criterion %2d [%s] %s%s%s\n", number, passed ? "PASS" : "FAIL", what.c_str(),
                detail.empty() ? "" : " -- ", detail.c_str());
    if (!passed) ++g_failures;
}

double seconds_since(clk::time_point t0) {
    return std::chrono::duration<double>(clk::now() - t0).count();
}

Poly want_row(int i) {
    const Poly R2 = Poly::term(Rational(1), {Sym::R, Sym::R});
    const Poly ts = Poly::sym(Sym::TauSq);
    switch (i) {
        case 0: return Rational(1, 16) * R2 - Rational(1, 2) * ts;
        case 1: return Rational(-3, 4) * R2;
        case 3:
            return expand_shape_symbols(Rational(3, 2) * Poly::sym(Sym::A2) +
                                        Rational(6) * Poly::sym(Sym::B2));
        case 4: return Rational(-5, 96) * R2 + Rational(5, 12) * ts;
        case 5: return Rational(1, 16) * R2;
        case 6:
            return expand_shape_symbols(-Poly::sym(Sym::A2) -
                                        Rational(1, 2) * Poly::sym(Sym::B2));
        default: return Poly();
    }
}

ScalarField unit_plus(const ScalarField& f) {
    return [f](const std::array<double, 4>& x, int ord) {
        return Jet(cplx(1.0), ord) + f(x, ord);
    };
}

}  // namespace

int main() {
    auto t_all = clk::now();
    FormalExpansion fe = build_formal_expansion();

    // 1 -- exact reproduction of the six consistent table rows
    {
        auto t0 = clk::now();
        auto rows = boundary_table(fe.shape_derived, fe.sphere_volume_derived);
        bool ok = true;
        for (int i : {0, 1, 3, 4, 5, 6}) {
            bool match = rows[i].engine == canonical_torsion(poly_reduce(want_row(i)));
            ok = ok && match && rows[i].matches;
        }
        double dt = seconds_since(t0);
        criterion(1, "six table rows reproduced by exact polynomial equality", ok && dt < 5.0,
                  "runtime " + std::to_string(dt) + " s");
    }

    // 2 -- the discrepant row is localized with both values reported
    {
        auto rows = boundary_table(fe.shape_derived, fe.sphere_volume_derived);
        Poly engine_want = canonical_torsion(
            Rational(3, 8) * Poly::term(Rational(1), {Sym::R, Sym::R}) -
            Rational(6) * Poly::sym(Sym::TauSq));
        Poly printed = canonical_torsion(Rational(3, 2) * Poly::term(Rational(1), {Sym::R, Sym::R}) -
                                         Rational(6) * Poly::sym(Sym::TauSq));
        bool ok = rows[2].engine == engine_want && !(rows[2].engine == printed) && !rows[2].matches;
        criterion(2, "discrepant row: engine value (3/8)R^2 - 6|tau|^2 vs printed (3/2)R^2 - 6|tau|^2",
                  ok, "engine = " + display_torsion(rows[2].engine).latex());
    }

    // 3 -- end-to-end finite boundary term, both derivation paths
    GbcSeries g_derived =
        assemble_gbc_series(fe.shape_derived, fe.sphere_volume_derived, fe.bulk_volume_density);
    GbcSeries g_stated =
        assemble_gbc_series(fe.shape_stated, fe.sphere_volume_stated, fe.bulk_volume_density);
    {
        bool ok = g_derived.constant == g_derived.expected_constant &&
                  g_stated.constant == g_stated.expected_constant &&
                  !g_derived.constant_remainder && !g_derived.constant.contains(Sym::NxTau);
        criterion(3, "finite term equals -(1/4 pi^2)(R^2/16 - (5/2)|tau|^2) exactly mod ideal", ok,
                  display_torsion(g_derived.constant).latex());
    }

    // 4 -- divergent coefficients vanish identically
    {
        bool ok = true;
        for (const GbcSeries* g : {&g_derived, &g_stated})
            ok = ok && g->lead.is_zero() && g->order_one.is_zero() && g->order_half.is_zero() &&
                 g->linear_r.is_zero();
        criterion(4, "e^{2r}, e^{r}, e^{r/2} coefficients of the Euler series vanish identically",
                  ok);
    }

    // 5 -- the order-2 curvature correction contracts to zero in free a, b
    {
        TPoly t = contract_full(fe.shape_derived.at(0), w2_minus());
        criterion(5, "contraction of the leading shape term with the order-2 correction is zero",
                  t.v.is_zero() && !t.rem);
    }

    // 6 -- linear-term vanishing, symbolic and numeric, three structures
    {
        auto t0 = clk::now();
        bool ok = g_derived.linear_r.is_zero();
        std::string detail;
        auto probe = [&](const PseudoHermitian3& m) {
            TWData tw = solve_connection(m, 2);
            VolumeExpansion ve = volume_series(fe, m, tw);
            ok = ok && ve.linear_density.is_zero() && std::abs(ve.linear_num) <= 1e-8;
            detail += m.name() + ": " + std::to_string(ve.linear_num) + "  ";
        };
        S3Params p;
        p.n_radial = 12;
        p.n_angle = 12;
        probe(*make_sphere(p));
        probe(*make_heisenberg({16}));
        for (double s : {0.8, 1.2, 1.6}) {
            S3Params q = p;
            q.squash = s;
            probe(*make_sphere(q));
        }
        double dt = seconds_since(t0);
        criterion(6, "r-linear volume coefficient vanishes (symbolic exact, quadrature <= 1e-8)",
                  ok && dt < 60.0, "runtime " + std::to_string(dt) + " s");
    }

    // 7 -- closed-manifold Stokes on the round sphere, default resolution
    {
        S3Params p;  // defaults: 16 x 16, scale 1/sqrt(2)
        auto m = make_sphere(p);
        TWData tw = solve_connection(*m, 2);
        std::mt19937_64 rng(777);
        bool ok = true;
        double worst = 0;
        for (int trial = 0; trial < 10; ++trial) {
            ScalarField a1 = random_complex_field(*m, rng, 1.0);
            StokesResult r = cr_stokes_integrals(*m, tw, a1);
            double bound = 1e-8 * r.alpha_sup;
            double big = std::max({std::abs(r.covariant), std::abs(r.exterior),
                                   std::abs(r.wedge), std::abs(r.covariant + r.exterior)});
            worst = std::max(worst, big / r.alpha_sup);
            ok = ok && big <= bound;
        }
        criterion(7, "three Stokes routes vanish for 10 seeded (1,0)-forms",
                  ok, "worst |integral|/sup = " + std::to_string(worst));
    }

    // 8 -- conformal transformation laws against recomputation, 20 factors,
    //      two structures, plus composition closure
    {
        std::mt19937_64 rng(4242);
        double worst = 0;
        bool ok = true;
        for (int kind = 0; kind < 2; ++kind) {
            std::unique_ptr<PseudoHermitian3> m;
            if (kind == 0) {
                S3Params p;
                p.squash = 1.3;  // torsion nonzero
                p.n_radial = 12;
                p.n_angle = 12;
                m = make_sphere(p);
            } else {
                m = make_heisenberg({14});
            }
            TWData tw = solve_connection(*m, 2);
            for (int trial = 0; trial < 10; ++trial) {
                ScalarField u = unit_plus(random_real_field(*m, rng, 0.15));
                ConformalLawErrors e = conformal_law_errors(*m, tw, u);
                worst = std::max({worst, e.scalar_law, e.torsion_law});
                ok = ok && e.scalar_law <= 1e-6 && e.torsion_law <= 1e-6 &&
                     e.coframe_residual <= 1e-10;
            }
        }
        // composition closure on the sphere
        S3Params p;
        p.n_radial = 10;
        p.n_angle = 10;
        auto m = make_sphere(p);
        ScalarField u = unit_plus(random_real_field(*m, rng, 0.1));
        ScalarField w = unit_plus(random_real_field(*m, rng, 0.1));
        ScalarField uw = [&](const std::array<double, 4>& x, int ord) {
            return u(x, ord) * w(x, ord);
        };
        ConformalStructure hat_u(*m, u);
        ConformalStructure direct(*m, uw);
        ConformalStructure composed(hat_u, w);
        TWData a = solve_connection(direct, 1);
        TWData b = solve_connection(composed, 1);
        double comp = 0;
        for (size_t i = 0; i < a.node.size(); ++i) {
            double rs = std::max(std::abs(a.node[i].scal.value()), 1e-6);
            comp = std::max(comp,
                            std::abs(a.node[i].scal.value() - b.node[i].scal.value()) / rs);
            comp = std::max(comp, std::abs(a.node[i].tau.value() - b.node[i].tau.value()));
        }
        ok = ok && comp <= 1e-6;
        criterion(8, "curvature/torsion laws match recomputation (20 factors, 2 structures)",
                  ok, "worst law error " + std::to_string(worst) + ", closure " +
                          std::to_string(comp));
    }

    // 9 -- the model: volume lead, pointwise bulk integrand, chi = 1
    {
        S3Params p;
        p.n_radial = 14;
        p.n_angle = 14;
        Ch2Volume cv = ch2_renormalized_volume(fe, p.contact_scale);
        bool lead_ok = std::abs(cv.lead - kPi * kPi) <= 1e-9;

        std::mt19937_64 rng(99);
        std::uniform_real_distribution<double> us(0.3, 6.0);
        double bulk = 0;
        for (int i = 0; i < 100; ++i)
            bulk = std::max(bulk, std::abs(model_curvature_at(us(rng)).bulk_integrand));
        bool bulk_ok = bulk <= 1e-9 * 36.0;

        auto m = make_sphere(p);
        TWData tw = solve_connection(*m, 2);
        VolumeExpansion ve = volume_series(fe, *m, tw);
        double cvv = curly_v(cv.renormalized, ve.t_integral);
        bool chi_ok = std::abs(cvv / (4.0 * kPi * kPi) - 1.0) <= 1e-7 &&
                      std::abs(cvv - 4.0 * kPi * kPi) <= 1e-6;

        // golden value of the model volume
        bool golden_ok = false;
        {
            std::ifstream f(std::string(CRV_GOLDEN_DIR) + "/ch2_volume.json");
            if (f.good()) {
                auto j = nlohmann::ordered_json::parse(f);
                golden_ok =
                    std::abs(cv.renormalized - j.at("renormalized").get<double>()) <= 1e-12;
            }
        }
        criterion(9, "model ball: lead pi^2, pointwise bulk integrand, chi = 1, golden V",
                  lead_ok && bulk_ok && chi_ok && golden_ok,
                  "V = " + std::to_string(cv.renormalized) + ", chi deviation " +
                      std::to_string(cvv / (4.0 * kPi * kPi) - 1.0));
    }

    // 10 -- anomaly functional
    {
        S3Params p;  // default 16 x 16 resolution
        auto m = make_sphere(p);
        ScalarField one = [](const std::array<double, 4>&, int ord) {
            return Jet(cplx(1.0), ord);
        };
        bool unit_ok = anomaly(*m, one) == 0.0;

        std::mt19937_64 rng(31);
        ScalarField u = unit_plus(random_real_field(*m, rng, 0.1));
        ScalarField w = unit_plus(random_real_field(*m, rng, 0.1));
        ScalarField uw = [&](const std::array<double, 4>& x, int ord) {
            return u(x, ord) * w(x, ord);
        };
        ConformalStructure hat_w(*m, w);
        double cocycle = std::abs(anomaly(*m, uw) - anomaly(hat_w, u) - anomaly(*m, w));

        ScalarField p1 = random_real_field(*m, rng, 0.15);
        ScalarField p2 = random_real_field(*m, rng, 0.15);
        ScalarField sum = [&](const std::array<double, 4>& x, int ord) {
            return p1(x, ord) + p2(x, ord);
        };
        VariationResult v1 = anomaly_first_variation(*m, p1, 1e-2);
        VariationResult v2 = anomaly_first_variation(*m, p2, 1e-2);
        VariationResult vs = anomaly_first_variation(*m, sum, 1e-2);
        double scale = std::max({std::abs(v1.value), std::abs(v2.value), 1e-6});
        double lin = std::abs(vs.value - v1.value - v2.value) / scale;
        bool order_ok = v1.order_est > 1.6 && v1.order_est < 2.4;
        criterion(10, "anomaly: unit zero, cocycle <= 1e-8, variation linear, order 2",
                  unit_ok && cocycle <= 1e-8 && lin <= 1e-6 && order_ok,
                  "cocycle " + std::to_string(cocycle) + ", linearity " + std::to_string(lin) +
                      ", order " + std::to_string(v1.order_est));
    }

    std::printf("acceptance total runtime %.1f s, %d failure(s)\n", seconds_since(t_all),
                g_failures);
    return g_failures == 0 ? 0 : 1;
}
