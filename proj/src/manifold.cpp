#include "crv/manifold.hpp"

#include <cmath>
#include <numbers>

namespace crv {

namespace {

constexpr double kPi = std::numbers::pi;

// nodes and weights of the n-point Gauss-Legendre rule on [-1, 1]
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
    x.resize(n);
    w.resize(n);
    for (int i = 0; i < n; ++i) {
        double t = std::cos(kPi * (i + 0.75) / (n + 0.5));
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                double p2 = p1;
                p1 = p0;
                p0 = ((2 * j + 1) * t * p1 - j * p2) / (j + 1);
            }
            double dp = n * (t * p0 - p1) / (t * t - 1.0);
            double dt = p0 / dp;
            t -= dt;
            if (std::abs(dt) < 1e-15) break;
        }
        double p0 = 1.0, p1 = 0.0;
        for (int j = 0; j < n; ++j) {
            double p2 = p1;
            p1 = p0;
            p0 = ((2 * j + 1) * t * p1 - j * p2) / (j + 1);
        }
        double dp = n * (t * p0 - p1) / (t * t - 1.0);
        x[i] = t;
        w[i] = 2.0 / ((1.0 - t * t) * dp * dp);
    }
}

// complex coordinates of the sphere point: z1 = x0 + i x1, z2 = x2 + i x3
struct SphereJets {
    Jet z1, z2, z1b, z2b;
    SphereJets(const std::array<double, 4>& x, int ord) {
        auto c = coordinate_jets(x, ord);
        z1 = c[0] + cplx(0, 1) * c[1];
        z2 = c[2] + cplx(0, 1) * c[3];
        z1b = z1.conj();
        z2b = z2.conj();
    }
};

class SphereStructure final : public PseudoHermitian3 {
public:
    explicit SphereStructure(const S3Params& p) : p_(p) {
        std::vector<double> gx, gw;
        gauss_legendre(p.n_radial, gx, gw);
        const double da = 2.0 * kPi / p.n_angle;
        nodes_.reserve(static_cast<size_t>(p.n_radial) * p.n_angle * p.n_angle);
        for (int iu = 0; iu < p.n_radial; ++iu) {
            double alpha = 0.5 * std::acos(gx[iu]);
            double ca = std::cos(alpha), sa = std::sin(alpha);
            for (int ib = 0; ib < p.n_angle; ++ib)
                for (int ig = 0; ig < p.n_angle; ++ig) {
                    double beta = da * ib, gamma = da * ig;
                    Node nd;
                    nd.x = {ca * std::cos(beta), ca * std::sin(beta), sa * std::cos(gamma),
                            sa * std::sin(gamma)};
                    nd.w_ref = 0.25 * gw[iu] * da * da;
                    const auto& x = nd.x;
                    nd.tangent[0] = {-x[1], x[0], -x[3], x[2]};  // E1 = iz
                    nd.tangent[1] = {x[2], -x[3], -x[0], x[1]};  // E2
                    nd.tangent[2] = {x[3], x[2], -x[1], -x[0]};  // E3
                    nodes_.push_back(nd);
                }
        }
    }

    std::string name() const override { return "s3"; }
    const std::vector<Node>& nodes() const override { return nodes_; }

    FieldJet contact_form(int node, int ord) const override {
        auto c = coordinate_jets(nodes_[node].x, ord);
        const double k = p_.contact_scale * p_.squash;
        FieldJet f;
        f[0] = cplx(-k) * c[1];
        f[1] = cplx(k) * c[0];
        f[2] = cplx(-k) * c[3];
        f[3] = cplx(k) * c[2];
        return f;
    }

    FieldJet unitary_coframe(int node, int ord) const override {
        // zeta = z2 dz1 - z1 dz2 = sigma2 + i sigma3; theta = sqrt(k)(sigma2 + i s sigma3)
        SphereJets z(nodes_[node].x, ord);
        const double rk = std::sqrt(p_.contact_scale);
        const cplx half_sum(0.5 * (1.0 + p_.squash), 0.0);   // coefficient of zeta
        const cplx half_dif(0.5 * (1.0 - p_.squash), 0.0);   // coefficient of conj(zeta)
        FieldJet f;
        // zeta components: (z2, i z2, -z1, -i z1)
        std::array<Jet, 4> zeta = {z.z2, cplx(0, 1) * z.z2, -z.z1, cplx(0, -1) * z.z1};
        for (int i = 0; i < 4; ++i)
            f[i] = cplx(rk) * (half_sum * zeta[i] + half_dif * zeta[i].conj());
        return f;
    }

    FieldJet reeb(int node, int ord) const override {
        auto c = coordinate_jets(nodes_[node].x, ord);
        const double k = 1.0 / (p_.contact_scale * p_.squash);
        FieldJet f;
        f[0] = cplx(-k) * c[1];
        f[1] = cplx(k) * c[0];
        f[2] = cplx(-k) * c[3];
        f[3] = cplx(k) * c[2];
        return f;
    }

    FieldJet cr_frame(int node, int ord) const override {
        // Z_s = (1/(2 sqrt(k))) [ (1 + 1/s) Z + (1 - 1/s) conj(Z) ],
        // Z = (1/2)(z2b, -i z2b, -z1b, i z1b)
        SphereJets z(nodes_[node].x, ord);
        std::array<Jet, 4> zr = {cplx(0.5) * z.z2b, cplx(0, -0.5) * z.z2b, cplx(-0.5) * z.z1b,
                                 cplx(0, 0.5) * z.z1b};
        const double rk = 1.0 / (2.0 * std::sqrt(p_.contact_scale));
        const cplx cp(rk * (1.0 + 1.0 / p_.squash), 0.0);
        const cplx cm(rk * (1.0 - 1.0 / p_.squash), 0.0);
        FieldJet f;
        for (int i = 0; i < 4; ++i) f[i] = cp * zr[i] + cm * zr[i].conj();
        return f;
    }

    const S3Params& params() const { return p_; }

private:
    S3Params p_;
    std::vector<Node> nodes_;
};

class HeisenbergStructure final : public PseudoHermitian3 {
public:
    explicit HeisenbergStructure(const HeisenbergParams& p) : p_(p) {
        const int n = p.n_grid;
        nodes_.reserve(static_cast<size_t>(n) * n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                Node nd;
                nd.x = {double(i) / n, double(j) / n, 0.0, 0.0};
                nd.w_ref = 1.0 / double(n) / double(n);
                nd.tangent[0] = {1, 0, nd.x[1], 0};  // X = d/dx + y d/dz
                nd.tangent[1] = {0, 1, 0, 0};        // Y = d/dy
                nd.tangent[2] = {0, 0, 1, 0};        // reeb
                nodes_.push_back(nd);
            }
    }

    std::string name() const override { return "heisenberg"; }
    const std::vector<Node>& nodes() const override { return nodes_; }

    FieldJet contact_form(int node, int ord) const override {
        auto c = coordinate_jets(nodes_[node].x, ord);
        FieldJet f;
        f[0] = -c[1];  // -y dx
        f[1] = Jet(cplx(0), ord);
        f[2] = Jet(cplx(1), ord);  // dz
        f[3] = Jet(cplx(0), ord);
        return f;
    }

    FieldJet unitary_coframe(int, int ord) const override {
        const double r = 1.0 / std::sqrt(2.0);
        FieldJet f;
        f[0] = Jet(cplx(r), ord);
        f[1] = Jet(cplx(0, r), ord);
        f[2] = Jet(cplx(0), ord);
        f[3] = Jet(cplx(0), ord);
        return f;
    }

    FieldJet reeb(int, int ord) const override {
        FieldJet f;
        f[0] = Jet(cplx(0), ord);
        f[1] = Jet(cplx(0), ord);
        f[2] = Jet(cplx(1), ord);
        f[3] = Jet(cplx(0), ord);
        return f;
    }

    FieldJet cr_frame(int node, int ord) const override {
        auto c = coordinate_jets(nodes_[node].x, ord);
        const double r = 1.0 / std::sqrt(2.0);
        FieldJet f;
        f[0] = Jet(cplx(r), ord);
        f[1] = Jet(cplx(0, -r), ord);
        f[2] = cplx(r) * c[1];  // y / sqrt(2) d/dz
        f[3] = Jet(cplx(0), ord);
        return f;
    }

private:
    HeisenbergParams p_;
    std::vector<Node> nodes_;
};

}  // namespace

std::unique_ptr<PseudoHermitian3> make_sphere(const S3Params& p) {
    return std::make_unique<SphereStructure>(p);
}

std::unique_ptr<PseudoHermitian3> make_heisenberg(const HeisenbergParams& p) {
    return std::make_unique<HeisenbergStructure>(p);
}

double measure_density(const PseudoHermitian3& m, int node) {
    // eta ^ d eta = i eta ^ theta ^ thetabar
    FieldJet eta = m.contact_form(node, 1);
    FieldJet th = m.unitary_coframe(node, 1);
    cplx v = cplx(0, 1) * wedge3_value(eta, th, th.conj(), m.nodes()[node].tangent);
    return v.real();
}

double reference_total_measure(const std::string& name) {
    if (name == "heisenberg") return 1.0;
    throw std::runtime_error("no reference measure for " + name);
}

namespace {

// real polynomial of degree <= 2 in (z, zbar) restricted to the sphere
ScalarField random_sphere_poly(std::mt19937_64& rng, double amplitude, bool real_valued) {
    std::normal_distribution<double> g(0.0, 1.0);
    // monomial exponents over (z1, z1b, z2, z2b)
    static const std::vector<std::array<int, 4>> mons = {
        {0, 0, 0, 0}, {1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1},
        {1, 1, 0, 0}, {0, 0, 1, 1}, {1, 0, 0, 1}, {0, 1, 1, 0}, {2, 0, 0, 0},
        {0, 0, 2, 0}, {1, 0, 1, 0}, {0, 1, 0, 1}};
    std::vector<cplx> coefs;
    double norm = 0;
    for (size_t i = 0; i < mons.size(); ++i) {
        cplx c(g(rng), g(rng));
        coefs.push_back(c);
        norm += std::abs(c);
    }
    double scale = amplitude / std::max(norm, 1e-12);
    return [coefs, scale, real_valued](const std::array<double, 4>& x, int ord) {
        SphereJets z(x, ord);
        Jet acc(cplx(0), ord);
        for (size_t i = 0; i < mons.size(); ++i) {
            const auto& e = mons[i];
            Jet t(cplx(scale) * coefs[i], ord);
            for (int k = 0; k < e[0]; ++k) t = t * z.z1;
            for (int k = 0; k < e[1]; ++k) t = t * z.z1b;
            for (int k = 0; k < e[2]; ++k) t = t * z.z2;
            for (int k = 0; k < e[3]; ++k) t = t * z.z2b;
            acc += t;
        }
        return real_valued ? acc + acc.conj() : acc;
    };
}

// trigonometric polynomial in (x, y) on the Heisenberg quotient
ScalarField random_heis_trig(std::mt19937_64& rng, double amplitude, bool real_valued) {
    std::normal_distribution<double> g(0.0, 1.0);
    std::vector<std::array<int, 2>> modes;
    std::vector<cplx> coefs;
    double norm = 0;
    for (int k1 = -2; k1 <= 2; ++k1)
        for (int k2 = -2; k2 <= 2; ++k2) {
            if (std::abs(k1) + std::abs(k2) > 2) continue;
            cplx c(g(rng), g(rng));
            modes.push_back({k1, k2});
            coefs.push_back(c);
            norm += std::abs(c);
        }
    double scale = amplitude / std::max(norm, 1e-12);
    return [modes, coefs, scale, real_valued](const std::array<double, 4>& x, int ord) {
        Jet acc(cplx(0), ord);
        for (size_t i = 0; i < modes.size(); ++i) {
            // e^{2 pi i (k1 x + k2 y)} has closed-form partials
            double k1 = 2 * kPi * modes[i][0], k2 = 2 * kPi * modes[i][1];
            cplx val = std::exp(cplx(0, k1 * x[0] + k2 * x[1]));
            Jet t(cplx(0), ord);
            for (int p = 0; p < jet_detail::count_through_degree(ord); ++p) {
                const auto& a = jet_detail::alpha_of(p);
                if (a[2] || a[3]) continue;
                cplx d = std::pow(cplx(0, k1), a[0]) * std::pow(cplx(0, k2), a[1]) * val;
                t.coeff(a) = d;
            }
            acc += (cplx(scale) * coefs[i]) * t;
        }
        return real_valued ? acc + acc.conj() : acc;
    };
}

}  // namespace

ScalarField random_real_field(const PseudoHermitian3& m, std::mt19937_64& rng, double amplitude) {
    if (m.name() == "heisenberg") return random_heis_trig(rng, amplitude, true);
    return random_sphere_poly(rng, amplitude, true);
}

ScalarField random_complex_field(const PseudoHermitian3& m, std::mt19937_64& rng, double amplitude) {
    if (m.name() == "heisenberg") return random_heis_trig(rng, amplitude, false);
    return random_sphere_poly(rng, amplitude, false);
}

}  // namespace crv
