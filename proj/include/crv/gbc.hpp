#ifndef CRV_GBC_HPP
#define CRV_GBC_HPP

#include <array>
#include <string>
#include <vector>

#include "crv/expansion.hpp"
#include "crv/frame.hpp"
#include "crv/report.hpp"

namespace crv {

// Symmetric operator on 2-forms in the adapted frame, stored against the
// ordered pair basis (01, 02, 03, 12, 13, 23).
struct CurvatureOp {
    std::array<TPoly, 36> k{};

    static int pair_index(int a, int b);  // requires a < b
    TPoly& at(int p, int q) { return k[6 * p + q]; }
    const TPoly& at(int p, int q) const { return k[6 * p + q]; }
    // <rho(e_a ^ e_b), e_c ^ e_d> with antisymmetry in both slots
    TPoly entry(int a, int b, int c, int d) const;
    bool is_diagonal() const;
};

// Model curvature operator: J-invariant planes at sectional value -1, the
// totally real ones at -1/4.
CurvatureOp model_curvature();
// Order-2 anti-self-dual correction with free coefficients a, b.
CurvatureOp w2_minus();

// Sum over all permutations of the tangential indices of products of
// eigenvalues; multilinear and fully symmetric.
TPoly contract_tiii(const DiagEndo& A, const DiagEndo& B, const DiagEndo& C);
// Sum over circular permutations K_{rs} lambda_t for diagonal rho.
TPoly contract_tar(const DiagEndo& A, const CurvatureOp& rho);
// Full alternating contraction, valid for non-diagonal rho; agrees with
// contract_tar when rho is diagonal.
TPoly contract_full(const DiagEndo& A, const CurvatureOp& rho);

// Series-level contractions against the shape-operator series.
ScalarSeries contract_tiii_series(const ShapeSeries& s);
ScalarSeries contract_curvature_series(const ShapeSeries& s, int qmax);

struct TableRow {
    std::string involved;   // which coefficients enter
    Poly reference;         // published value
    Poly engine;            // recomputed value
    bool matches;           // exact equality mod divergence ideal
    bool end_to_end_member; // participates in the main identity as printed
};

// The seven boundary-term contribution rows, from either shape/volume path.
std::vector<TableRow> boundary_table(const ShapeSeries& shape, const ScalarSeries& vol);
VerificationReport table_report(const FormalExpansion& fe);
std::string table_text(const std::vector<TableRow>& rows);

// Fully assembled Euler-characteristic series: the scalar-curvature volume
// term plus the boundary transgression term, per unit eta^deta measure and in
// units of 1/pi^2. Orders -4, -2, -1 must vanish; the r-linear slot must
// reduce to zero; the eps^0 slot is the boundary contribution to the limit.
struct GbcSeries {
    Poly lead;            // e^{2r}
    Poly order_one;       // e^{r}
    Poly order_half;      // e^{r/2}
    bool half_remainder;  // an order-3/2 tag was discarded at integration
    Poly linear_r;        // coefficient of r
    Poly linear_dropped;  // divergence terms removed from the r-linear slot
    Poly constant;        // finite boundary contribution
    bool constant_remainder;  // must stay false: no tag may reach the constant
    Poly constant_dropped;    // divergence terms removed from the constant
    Poly expected_constant;
};

GbcSeries assemble_gbc_series(const ShapeSeries& shape, const ScalarSeries& sphere_vol,
                              const ScalarSeries& bulk_vol);
VerificationReport gbc_report(const FormalExpansion& fe);

}  // namespace crv

#endif
