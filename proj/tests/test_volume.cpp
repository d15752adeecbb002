#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <fstream>
#include <numbers>

#include "crv/serialize.hpp"
#include "crv/volume.hpp"

using namespace crv;

namespace {

constexpr double kPi = std::numbers::pi;
const double kScale = 0.70710678118654752440;

nlohmann::ordered_json load_golden(const std::string& name) {
    std::ifstream f(std::string(CRV_GOLDEN_DIR) + "/" + name);
    REQUIRE(f.good());
    return nlohmann::ordered_json::parse(f);
}

S3Params round_params(int nr = 12, int na = 12) {
    S3Params p;
    p.n_radial = nr;
    p.n_angle = na;
    return p;
}

}  // namespace

TEST_CASE("model curvature: Einstein, Scal -6, sectional pattern") {
    for (double s : {0.5, 1.7, 4.2}) {
        ModelCurvature mc = model_curvature_at(s);
        CHECK(std::abs(mc.scal + 6.0) < 1e-11);
        CHECK(mc.einstein_residual < 1e-11);
        CHECK(std::abs(mc.bulk_integrand) < 1e-10);
        // sectional curvatures are exactly the constant-holomorphic pattern
        CHECK(mc.sectional[0] == doctest::Approx(-1.0).epsilon(1e-12));   // (0,1)
        CHECK(mc.sectional[5] == doctest::Approx(-1.0).epsilon(1e-12));   // (2,3)
        for (int p : {1, 2, 3, 4})
            CHECK(mc.sectional[p] == doctest::Approx(-0.25).epsilon(1e-12));
    }
}

TEST_CASE("model volume oracle: exact coefficients and the golden value") {
    FormalExpansion fe = build_formal_expansion();
    Ch2Volume cv = ch2_renormalized_volume(fe, kScale);
    CHECK(cv.gauge_consistency < 1e-12);
    CHECK(cv.lead == doctest::Approx(kPi * kPi).epsilon(1e-12));
    CHECK(cv.sub == doctest::Approx(-2.0 * std::sqrt(2.0) * kPi * kPi).epsilon(1e-12));
    CHECK(cv.renormalized == doctest::Approx(10.0 * kPi * kPi / 3.0).epsilon(1e-12));
    auto g = load_golden("ch2_volume.json");
    CHECK(cv.renormalized ==
          doctest::Approx(g.at("renormalized").get<double>()).epsilon(1e-14));
}

TEST_CASE("volume series: flat quotient has no formal coefficients") {
    FormalExpansion fe = build_formal_expansion();
    auto heis = make_heisenberg({10});
    TWData tw = solve_connection(*heis, 2);
    VolumeExpansion ve = volume_series(fe, *heis, tw);
    CHECK(ve.lead_num == doctest::Approx(0.5).epsilon(1e-13));  // half the unit measure
    CHECK(std::abs(ve.sub_num) < 1e-13);
    CHECK(std::abs(ve.linear_num) < 1e-13);
    CHECK(std::abs(ve.t_integral) < 1e-13);
}

TEST_CASE("volume series on the round sphere matches the model oracle") {
    FormalExpansion fe = build_formal_expansion();
    auto s3 = make_sphere(round_params());
    TWData tw = solve_connection(*s3, 2);
    VolumeExpansion ve = volume_series(fe, *s3, tw);
    CHECK(ve.lead_num == doctest::Approx(kPi * kPi).epsilon(1e-9));
    CHECK(ve.sub_num == doctest::Approx(-2.0 * std::sqrt(2.0) * kPi * kPi).epsilon(1e-9));
    CHECK(std::abs(ve.linear_num) < 1e-8);
    CHECK(ve.t_integral == doctest::Approx(kPi * kPi).epsilon(1e-12));
    // v1 in closed form: -(1/2) integral of R
    std::vector<double> rvals(s3->nodes().size());
    for (size_t i = 0; i < rvals.size(); ++i) rvals[i] = tw.node[i].scal.value().real();
    CHECK(ve.sub_num == doctest::Approx(-0.5 * integrate(*s3, rvals)).epsilon(1e-12));
}

TEST_CASE("r-linear coefficient: symbolic zero and quadrature zero on the sweep") {
    FormalExpansion fe = build_formal_expansion();
    auto s3 = make_sphere(round_params());
    TWData tw = solve_connection(*s3, 2);
    VolumeExpansion ve = volume_series(fe, *s3, tw);
    CHECK(ve.linear_density == Poly());
    CHECK(!ve.linear_dropped.is_zero());  // divergence terms were discarded, visibly
    for (double s : {0.8, 1.0, 1.25}) {
        S3Params p = round_params(10, 10);
        p.squash = s;
        auto m = make_sphere(p);
        TWData tws = solve_connection(*m, 2);
        VolumeExpansion v = volume_series(fe, *m, tws);
        INFO("squash ", s);
        CHECK(std::abs(v.linear_num) < 1e-8);
    }
    auto heis = make_heisenberg({10});
    TWData twh = solve_connection(*heis, 2);
    CHECK(std::abs(volume_series(fe, *heis, twh).linear_num) < 1e-8);
}

TEST_CASE("curly_v combines volume and the t integral") {
    CHECK(curly_v(2.0, 0.0) == doctest::Approx(3.0));  // flat case: (3/2) V
    CHECK(curly_v(10.0 * kPi * kPi / 3.0, kPi * kPi) ==
          doctest::Approx(4.0 * kPi * kPi).epsilon(1e-14));
}

TEST_CASE("end-to-end model check: chi = 1") {
    FormalExpansion fe = build_formal_expansion();
    VerificationReport rep = euler_check_ch2(fe, round_params());
    INFO(rep.text());
    CHECK(rep.all_passed());
}

TEST_CASE("golden: canonical series serialization is stable") {
    FormalExpansion fe = build_formal_expansion();
    auto got = series_to_json(fe.sphere_volume_derived);
    auto want = load_golden("sphere_volume_series.json");
    CHECK(got == want);
}

TEST_CASE("golden: boundary table rows are stable") {
    FormalExpansion fe = build_formal_expansion();
    auto rows = boundary_table(fe.shape_derived, fe.sphere_volume_derived);
    auto want = load_golden("table_rows.json");
    REQUIRE(want.size() == rows.size());
    for (size_t i = 0; i < rows.size(); ++i) {
        CHECK(poly_to_json(rows[i].engine) == want[i].at("engine"));
        CHECK(rows[i].matches == want[i].at("matches_reference").get<bool>());
    }
}

TEST_CASE("symbol values carry the derivative components") {
    S3Params p = round_params(6, 6);
    p.squash = 1.3;
    auto m = make_sphere(p);
    TWData tw = solve_connection(*m, 2);
    auto vals = symbol_values(*m, tw, 3);
    // homogeneous structure: all derivative symbols vanish pointwise
    for (Sym s : {Sym::R1, Sym::R1b, Sym::R11b, Sym::R1b1, Sym::LapR, Sym::Tau1, Sym::Tau1b,
                  Sym::Tau11, Sym::Tau1b1b})
        CHECK(std::abs(vals[static_cast<int>(s)]) < 1e-10);
    // |tau|^2 = t^2 by construction
    cplx t = vals[static_cast<int>(Sym::Tt)];
    CHECK(std::abs(vals[static_cast<int>(Sym::TauSq)] - t * t) < 1e-13);
}

TEST_CASE("csv row for the volume pipeline") {
    VolumeExpansion v;
    v.lead_num = 1.0;
    v.sub_num = -2.0;
    v.linear_num = 0.0;
    v.t_integral = 3.0;
    std::string row = volume_csv_row("s3", v);
    CHECK(row.find("n/a") != std::string::npos);
    v.renormalized = 4.0;
    v.curly_v = 3.0;
    row = volume_csv_row("s3", v);
    CHECK(row.find("n/a") == std::string::npos);
}
