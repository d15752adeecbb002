#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <thread>

#include "crv/gbc.hpp"

using namespace crv;

namespace {

DiagEndo de(Poly a, Poly b, Poly c) { return DiagEndo(TPoly(a), TPoly(b), TPoly(c)); }

DiagEndo random_diag(std::mt19937_64& rng) {
    std::uniform_int_distribution<long> c(-5, 5);
    return de(Poly(c(rng)), Poly(c(rng)), Poly(c(rng)));
}

CurvatureOp random_diag_curv(std::mt19937_64& rng) {
    std::uniform_int_distribution<long> c(-5, 5);
    CurvatureOp rho;
    for (int p = 0; p < 6; ++p) rho.at(p, p) = TPoly(Poly(c(rng)));
    return rho;
}

const Poly R2 = Poly::term(Rational(1), {Sym::R, Sym::R});

}  // namespace

TEST_CASE("triple contraction: permutation-sum values") {
    DiagEndo i0 = de(Poly(1), Poly(Rational(1, 2)), Poly(Rational(1, 2)));
    CHECK(contract_tiii(i0, i0, i0).v == Poly(Rational(3, 2)));
    CHECK(contract_tiii(DiagEndo(), i0, i0).v == Poly());
    // A = (0, a, b), B = C = I0 gives a + b
    DiagEndo ab = de(Poly(), Poly::sym(Sym::Wa), Poly::sym(Sym::Wb));
    CHECK(contract_tiii(ab, i0, i0).v == Poly::sym(Sym::Wa) + Poly::sym(Sym::Wb));
}

TEST_CASE("triple contraction is symmetric and multilinear") {
    std::mt19937_64 rng(42);
    for (int it = 0; it < 100; ++it) {
        DiagEndo a = random_diag(rng), b = random_diag(rng), c = random_diag(rng);
        Poly ref = contract_tiii(a, b, c).v;
        CHECK(contract_tiii(a, c, b).v == ref);
        CHECK(contract_tiii(b, a, c).v == ref);
        CHECK(contract_tiii(c, b, a).v == ref);
        DiagEndo d = random_diag(rng);
        DiagEndo bd = b;
        bd += d;
        CHECK(contract_tiii(a, bd, c).v == ref + contract_tiii(a, d, c).v);
    }
}

TEST_CASE("curvature contraction: circular permutation values") {
    CurvatureOp zero;
    DiagEndo ones = de(Poly(1), Poly(1), Poly(1));
    CHECK(contract_tar(ones, zero).v == Poly());
    CurvatureOp unit;
    for (int p = 0; p < 6; ++p) unit.at(p, p) = TPoly(1);
    CHECK(contract_tar(ones, unit).v == Poly(3));
    DiagEndo i0 = de(Poly(1), Poly(Rational(1, 2)), Poly(Rational(1, 2)));
    CHECK(contract_tar(i0, model_curvature()).v == Poly(Rational(-5, 4)));
}

TEST_CASE("model curvature has the constant-holomorphic pattern") {
    CurvatureOp r0 = model_curvature();
    CHECK(r0.entry(0, 1, 0, 1).v == Poly(-1L));
    CHECK(r0.entry(2, 3, 2, 3).v == Poly(-1L));
    CHECK(r0.entry(0, 2, 0, 2).v == Poly(Rational(-1, 4)));
    CHECK(r0.entry(0, 3, 0, 3).v == Poly(Rational(-1, 4)));
    CHECK(r0.entry(1, 2, 1, 2).v == Poly(Rational(-1, 4)));
    CHECK(r0.entry(1, 3, 1, 3).v == Poly(Rational(-1, 4)));
    CHECK(r0.is_diagonal());
    // antisymmetry bookkeeping of the pair basis
    CHECK(r0.entry(1, 0, 0, 1).v == Poly(1));
}

TEST_CASE("full contraction restricted to diagonal curvature equals the circular sum") {
    std::mt19937_64 rng(2718);
    for (int it = 0; it < 100; ++it) {
        DiagEndo a = random_diag(rng);
        CurvatureOp rho = random_diag_curv(rng);
        CHECK(contract_full(a, rho).v == contract_tar(a, rho).v);
    }
    DiagEndo i0 = de(Poly(1), Poly(Rational(1, 2)), Poly(Rational(1, 2)));
    CHECK(contract_full(i0, model_curvature()).v == Poly(Rational(-5, 4)));
}

TEST_CASE("the order-2 curvature correction contracts to zero against I0") {
    DiagEndo i0 = de(Poly(1), Poly(Rational(1, 2)), Poly(Rational(1, 2)));
    TPoly t = contract_full(i0, w2_minus());
    CHECK(t.v == Poly());
    CHECK(!t.rem);
}

TEST_CASE("boundary table rows, derived path") {
    FormalExpansion fe = build_formal_expansion();
    auto rows = boundary_table(fe.shape_derived, fe.sphere_volume_derived);
    REQUIRE(rows.size() == 7);
    auto want = [](const Poly& p) { return canonical_torsion(p); };
    CHECK(rows[0].engine == want(Rational(1, 16) * R2 - Rational(1, 2) * Poly::sym(Sym::TauSq)));
    CHECK(rows[0].matches);
    CHECK(rows[1].engine == want(Rational(-3, 4) * R2));
    CHECK(rows[1].matches);
    // the discrepant row: engine computes (3/8) R^2 - 6 |tau|^2
    CHECK(rows[2].engine == want(Rational(3, 8) * R2 - Rational(6) * Poly::sym(Sym::TauSq)));
    CHECK(!rows[2].matches);
    CHECK(rows[3].matches);
    CHECK(rows[4].engine == want(Rational(-5, 96) * R2 + Rational(5, 12) * Poly::sym(Sym::TauSq)));
    CHECK(rows[4].matches);
    CHECK(rows[5].engine == want(Rational(1, 16) * R2));
    CHECK(rows[5].matches);
    CHECK(rows[6].matches);
}

TEST_CASE("row 4 and row 7 in shape-symbol form") {
    FormalExpansion fe = build_formal_expansion();
    auto rows = boundary_table(fe.shape_stated, fe.sphere_volume_stated);
    // (3/2) A + 6 B and -A - B/2 after expanding the symbols
    Poly r4 = canonical_torsion(poly_reduce(
        expand_shape_symbols(Rational(3, 2) * Poly::sym(Sym::A2) + Rational(6) * Poly::sym(Sym::B2))));
    CHECK(rows[3].engine == r4);
    Poly r7 = canonical_torsion(poly_reduce(expand_shape_symbols(
        -Poly::sym(Sym::A2) - Rational(1, 2) * Poly::sym(Sym::B2))));
    CHECK(rows[6].engine == r7);
}

TEST_CASE("assembled Euler series: cancellation and the finite term") {
    FormalExpansion fe = build_formal_expansion();
    for (bool derived : {true, false}) {
        GbcSeries g = assemble_gbc_series(derived ? fe.shape_derived : fe.shape_stated,
                                          derived ? fe.sphere_volume_derived : fe.sphere_volume_stated,
                                          fe.bulk_volume_density);
        CHECK(g.lead == Poly());
        CHECK(g.order_one == Poly());
        CHECK(g.order_half == Poly());
        CHECK(g.half_remainder);  // the I3 slot was discarded as integral-null
        CHECK(g.linear_r == Poly());
        CHECK(!g.constant_remainder);
        CHECK(g.constant == g.expected_constant);
        CHECK(!g.constant.contains(Sym::NxTau));
    }
}

TEST_CASE("table and gbc reports pass (row 3 informational)") {
    FormalExpansion fe = build_formal_expansion();
    VerificationReport tr = table_report(fe);
    int informational = 0;
    for (auto& c : tr.checks()) {
        if (c.informational) {
            ++informational;
            CHECK(!c.passed);
        } else {
            INFO(c.id);
            CHECK(c.passed);
        }
    }
    CHECK(informational == 2);  // one discrepant row per path
    CHECK(tr.all_passed());

    VerificationReport gr = gbc_report(fe);
    for (auto& c : gr.checks()) {
        INFO(c.id, " computed ", c.computed);
        CHECK(c.passed);
    }

    // text table renders both values for the discrepant row
    auto rows = boundary_table(fe.shape_derived, fe.sphere_volume_derived);
    std::string txt = table_text(rows);
    CHECK(txt.find("DIFFERS") != std::string::npos);
}

TEST_CASE("engine is safe to drive from concurrent threads") {
    FormalExpansion fe = build_formal_expansion();
    auto rows_ref = boundary_table(fe.shape_derived, fe.sphere_volume_derived);
    std::vector<std::thread> pool;
    std::array<bool, 4> ok{};
    for (int t = 0; t < 4; ++t)
        pool.emplace_back([&, t] {
            auto rows = boundary_table(fe.shape_derived, fe.sphere_volume_derived);
            GbcSeries g = assemble_gbc_series(fe.shape_derived, fe.sphere_volume_derived,
                                              fe.bulk_volume_density);
            bool good = g.constant == g.expected_constant;
            for (size_t i = 0; i < rows.size(); ++i)
                good = good && rows[i].engine == rows_ref[i].engine;
            ok[t] = good;
        });
    for (auto& th : pool) th.join();
    for (bool b : ok) CHECK(b);
}

TEST_CASE("report JSON round trip is lossless") {
    FormalExpansion fe = build_formal_expansion();
    VerificationReport rep = gbc_report(fe);
    auto j = rep.to_json();
    VerificationReport back = VerificationReport::from_json(j);
    CHECK(back.to_json() == j);
    CHECK(back.to_json().dump(2) == j.dump(2));
}
