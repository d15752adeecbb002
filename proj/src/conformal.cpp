#include "crv/conformal.hpp"

#include <cmath>

namespace crv {

ConformalStructure::ConformalStructure(const PseudoHermitian3& base, ScalarField u)
    : base_(base), u_(std::move(u)) {
    for (size_t i = 0; i < base_.nodes().size(); ++i) {
        cplx v = u_(base_.nodes()[i].x, 0).value();
        if (v.real() <= 0 || std::abs(v.imag()) > 1e-10 * std::abs(v))
            throw std::runtime_error("conformal factor is not positive at node " +
                                     std::to_string(i));
    }
}

Jet ConformalStructure::factor_sqrt(int node, int ord) const {
    return u_(base_.nodes()[node].x, ord).sqrt_real();
}

FieldJet ConformalStructure::contact_form(int node, int ord) const {
    FieldJet eta = base_.contact_form(node, ord);
    Jet u = u_(base_.nodes()[node].x, ord);
    FieldJet out;
    for (int i = 0; i < 4; ++i) out[i] = u * eta[i];
    return out;
}

FieldJet ConformalStructure::unitary_coframe(int node, int ord) const {
    FieldJet eta = base_.contact_form(node, ord);
    FieldJet th = base_.unitary_coframe(node, ord);
    FieldJet Zb = base_.cr_frame(node, ord + 1).conj();
    Jet f = factor_sqrt(node, ord + 1);
    Jet f1b = apply_field(Zb, f);  // f_{,1bar} of the base structure
    FieldJet out;
    for (int i = 0; i < 4; ++i) out[i] = f * th[i] + (cplx(0, 2) * f1b) * eta[i];
    return out;
}

FieldJet ConformalStructure::reeb(int node, int ord) const {
    FieldJet xi = base_.reeb(node, ord);
    FieldJet Z = base_.cr_frame(node, ord);
    FieldJet Zb = Z.conj();
    Jet f = factor_sqrt(node, ord + 1);
    Jet fm3 = f.pow_int(-3);
    Jet f1 = apply_field(base_.cr_frame(node, ord + 1), f);
    Jet f1b = apply_field(base_.cr_frame(node, ord + 1).conj(), f);
    Jet a = (f * f).reciprocal();
    FieldJet out;
    for (int i = 0; i < 4; ++i)
        out[i] = a * xi[i] + (cplx(0, -2) * (f1b * fm3)) * Z[i] + (cplx(0, 2) * (f1 * fm3)) * Zb[i];
    return out;
}

FieldJet ConformalStructure::cr_frame(int node, int ord) const {
    FieldJet Z = base_.cr_frame(node, ord);
    Jet finv = factor_sqrt(node, ord).reciprocal();
    FieldJet out;
    for (int i = 0; i < 4; ++i) out[i] = finv * Z[i];
    return out;
}

namespace {

struct HatIngredients {
    double scal;
    cplx tau;
    double f;
    double lapf;
    cplx f1, f1b, f1b1b;
};

HatIngredients ingredients(const PseudoHermitian3& m, const TWData& tw, int node,
                           const ScalarField& u) {
    HatIngredients g;
    const NodeTW& nd = tw.node[node];
    g.scal = nd.scal.value().real();
    g.tau = nd.tau.value();
    Jet f = u(m.nodes()[node].x, 3).sqrt_real();
    g.f = f.value().real();
    Jet f1 = covariant_derivative(m, tw, node, f, 0, "1");
    Jet f1b = covariant_derivative(m, tw, node, f, 0, "b");
    g.f1 = f1.value();
    g.f1b = f1b.value();
    g.f1b1b = covariant_derivative(m, tw, node, f1b, 1, "b").value();
    g.lapf = (covariant_derivative(m, tw, node, f1, -1, "b").value() +
              covariant_derivative(m, tw, node, f1b, 1, "1").value())
                 .real();
    return g;
}

}  // namespace

double hat_scalar_law(const PseudoHermitian3& m, const TWData& tw, int node, const ScalarField& u) {
    HatIngredients g = ingredients(m, tw, node, u);
    return (g.scal * g.f - 4.0 * g.lapf) / (g.f * g.f * g.f);
}

double hat_scalar_law_printed(const PseudoHermitian3& m, const TWData& tw, int node,
                              const ScalarField& u) {
    HatIngredients g = ingredients(m, tw, node, u);
    return (2.0 * g.lapf + g.scal * g.f) / (g.f * g.f * g.f);
}

cplx hat_torsion_law(const PseudoHermitian3& m, const TWData& tw, int node, const ScalarField& u) {
    HatIngredients g = ingredients(m, tw, node, u);
    cplx i(0, 1);
    return (g.tau - 2.0 * i * g.f1b1b / g.f + 6.0 * i * g.f1b * g.f1b / (g.f * g.f)) /
           (g.f * g.f);
}

cplx hat_torsion_law_printed(const PseudoHermitian3& m, const TWData& tw, int node,
                             const ScalarField& u) {
    HatIngredients g = ingredients(m, tw, node, u);
    cplx i(0, 1);
    return (g.tau - 2.0 * i * g.f1b1b / g.f - 6.0 * i * g.f1 * g.f1b / (g.f * g.f)) /
           (g.f * g.f);
}

ConformalLawErrors conformal_law_errors(const PseudoHermitian3& m, const TWData& tw,
                                        const ScalarField& u, Exec ex) {
    ConformalStructure hat(m, u);
    TWData htw = solve_connection(hat, 1, ex);
    const size_t n = m.nodes().size();
    std::vector<ConformalLawErrors> per(n);
    auto body = [&](size_t i) {
        const int node = static_cast<int>(i);
        double r_hat = htw.node[i].scal.value().real();
        cplx t_hat = htw.node[i].tau.value();
        double r_scale = std::max(std::abs(r_hat), 1e-6);
        double t_scale = std::max(std::abs(t_hat), 1e-6);
        ConformalLawErrors e;
        e.scalar_law = std::abs(hat_scalar_law(m, tw, node, u) - r_hat) / r_scale;
        e.scalar_printed = std::abs(hat_scalar_law_printed(m, tw, node, u) - r_hat) / r_scale;
        e.torsion_law = std::abs(hat_torsion_law(m, tw, node, u) - t_hat) / t_scale;
        e.torsion_printed = std::abs(hat_torsion_law_printed(m, tw, node, u) - t_hat) / t_scale;
        per[i] = e;
    };
    if (ex == Exec::Parallel) {
#if defined(_OPENMP)
#pragma omp parallel for schedule(static)
#endif
        for (long i = 0; i < static_cast<long>(n); ++i) body(static_cast<size_t>(i));
    } else {
        for (size_t i = 0; i < n; ++i) body(i);
    }
    ConformalLawErrors worst;
    for (auto& e : per) {
        worst.scalar_law = std::max(worst.scalar_law, e.scalar_law);
        worst.torsion_law = std::max(worst.torsion_law, e.torsion_law);
        worst.scalar_printed = std::max(worst.scalar_printed, e.scalar_printed);
        worst.torsion_printed = std::max(worst.torsion_printed, e.torsion_printed);
    }
    worst.coframe_residual = contact_structure_residual(hat);
    return worst;
}

double t_functional(const PseudoHermitian3& m, const TWData& tw, Exec ex) {
    const size_t n = m.nodes().size();
    std::vector<double> vals(n);
    for (size_t i = 0; i < n; ++i) {
        double r = tw.node[i].scal.value().real();
        double ta = std::abs(tw.node[i].tau.value());
        vals[i] = r * r / 16.0 - 2.5 * ta * ta;
    }
    return integrate(m, vals, ex);
}

double t_functional(const PseudoHermitian3& m, Exec ex) {
    TWData tw = solve_connection(m, 1, ex);
    return t_functional(m, tw, ex);
}

double anomaly(const PseudoHermitian3& m, const ScalarField& u, Exec ex) {
    ConformalStructure hat(m, u);
    double t_hat = t_functional(hat, ex);
    double t_base = t_functional(m, ex);
    return (2.0 / 3.0) * (t_hat - t_base);
}

VariationResult anomaly_first_variation(const PseudoHermitian3& m, const ScalarField& phi,
                                        double h, Exec ex) {
    if (h < 1e-8) throw std::runtime_error("variation step underflow");
    auto shifted = [&phi](double eps) {
        return [&phi, eps](const std::array<double, 4>& x, int ord) {
            return Jet(cplx(1.0), ord) + cplx(eps) * phi(x, ord);
        };
    };
    auto central = [&](double step) {
        double plus = anomaly(m, shifted(step), ex);
        double minus = anomaly(m, shifted(-step), ex);
        return (plus - minus) / (2.0 * step);
    };
    VariationResult r{};
    r.coarse = central(h);
    r.finer = central(h / 2);
    // Richardson for a second-order scheme
    r.value = (4.0 * r.finer - r.coarse) / 3.0;
    double finest = central(h / 4);
    double e1 = std::abs(r.coarse - finest);
    double e2 = std::abs(r.finer - finest);
    r.order_est = (e2 > 0) ? std::log2(e1 / e2) : 2.0;
    return r;
}

VerificationReport conformal_report(const PseudoHermitian3& m, const TWData& tw,
                                    const ScalarField& u, double tol) {
    VerificationReport rep("conformal:" + m.name());
    ConformalLawErrors e = conformal_law_errors(m, tw, u);
    auto add = [&](const std::string& id, const std::string& desc, double err, double bound,
                   bool informational = false, const std::string& note = "") {
        Check c;
        c.id = "conformal." + id;
        c.description = desc;
        c.provenance = informational ? "reference" : "derived";
        char buf[64];
        std::snprintf(buf, sizeof(buf), "<= %.1e", bound);
        c.expected = buf;
        std::snprintf(buf, sizeof(buf), "%.3e", err);
        c.computed = buf;
        c.passed = err <= bound;
        c.informational = informational;
        c.note = note;
        rep.add(std::move(c));
    };
    add("coframe", "d(u eta) = i theta_hat ^ theta_hatbar at the nodes", e.coframe_residual,
        1e-10);
    add("scalar_law", "curvature law matches recomputation from the deformed coframe",
        e.scalar_law, tol);
    add("torsion_law", "torsion law matches recomputation from the deformed coframe",
        e.torsion_law, tol);
    add("scalar_printed", "printed-coefficient curvature variant against recomputation",
        e.scalar_printed, tol, true,
        "expected to fail: the printed coefficient of lap f does not satisfy the "
        "structure equations; the engine law uses R f - 4 lap f");
    add("torsion_printed", "printed-coefficient torsion variant against recomputation",
        e.torsion_printed, tol, true,
        "expected to fail: the printed cross term f_{,1} f_{,1bar} has the wrong unitary "
        "weight; the engine law uses +6i f^{-2} (f_{,1bar})^2");
    {
        Check c;
        c.id = "conformal.sublaplacian_convention";
        c.description = "sub-Laplacian rendering used throughout";
        c.provenance = "reference";
        c.expected = "lap u = u_{,1 1bar} + u_{,1bar 1}";
        c.computed = "lap u = u_{,1 1bar} + u_{,1bar 1}";
        c.passed = true;
        c.informational = true;
        c.note = "an alternate published rendering u_{,1bar 1bar} + u_{,1 1bar} is not "
                 "real-valued and is recorded here as a typographical slip";
        rep.add(std::move(c));
    }
    return rep;
}

}  // namespace crv
