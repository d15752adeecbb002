#include "crv/jet.hpp"

namespace crv {

namespace jet_detail {

namespace {

struct Tables {
    std::vector<std::array<int, 4>> alphas;
    std::vector<int> degree;
    std::array<int, Jet::kMaxOrd + 2> offset{};  // first index of each degree
    int lookup[6][6][6][6];

    Tables() {
        for (auto& p0 : lookup)
            for (auto& p1 : p0)
                for (auto& p2 : p1)
                    for (auto& p3 : p2) p3 = -1;
        for (int d = 0; d <= Jet::kMaxOrd; ++d) {
            offset[d] = static_cast<int>(alphas.size());
            for (int a0 = d; a0 >= 0; --a0)
                for (int a1 = d - a0; a1 >= 0; --a1)
                    for (int a2 = d - a0 - a1; a2 >= 0; --a2) {
                        int a3 = d - a0 - a1 - a2;
                        alphas.push_back({a0, a1, a2, a3});
                        degree.push_back(d);
                        lookup[a0][a1][a2][a3] = static_cast<int>(alphas.size()) - 1;
                    }
        }
        offset[Jet::kMaxOrd + 1] = static_cast<int>(alphas.size());
    }
};

const Tables& tables() {
    static const Tables t;
    return t;
}

}  // namespace

int index_of(const std::array<int, 4>& a) {
    return tables().lookup[a[0]][a[1]][a[2]][a[3]];
}
const std::array<int, 4>& alpha_of(int idx) { return tables().alphas[idx]; }
int degree_of(int idx) { return tables().degree[idx]; }
int count_through_degree(int d) { return tables().offset[d + 1]; }

}  // namespace jet_detail

using namespace jet_detail;

Jet Jet::coordinate(int i, double value, int ord) {
    Jet j(cplx(value), ord);
    std::array<int, 4> e{};
    e[i] = 1;
    if (ord >= 1) j.c_[index_of(e)] = 1.0;
    return j;
}

cplx& Jet::coeff(const std::array<int, 4>& alpha) { return c_[index_of(alpha)]; }
cplx Jet::coeff(const std::array<int, 4>& alpha) const { return c_[index_of(alpha)]; }

Jet Jet::operator-() const {
    Jet j = *this;
    for (int i = 0; i < count_through_degree(ord_); ++i) j.c_[i] = -j.c_[i];
    return j;
}

Jet operator+(const Jet& a, const Jet& b) {
    Jet j(cplx(0), std::min(a.ord_, b.ord_));
    for (int i = 0; i < count_through_degree(j.ord_); ++i) j.c_[i] = a.c_[i] + b.c_[i];
    return j;
}

Jet operator-(const Jet& a, const Jet& b) {
    Jet j(cplx(0), std::min(a.ord_, b.ord_));
    for (int i = 0; i < count_through_degree(j.ord_); ++i) j.c_[i] = a.c_[i] - b.c_[i];
    return j;
}

Jet operator*(const Jet& a, const Jet& b) {
    Jet j(cplx(0), std::min(a.ord_, b.ord_));
    const int na = count_through_degree(std::min(a.ord_, j.ord_));
    const int nb = count_through_degree(std::min(b.ord_, j.ord_));
    for (int p = 0; p < na; ++p) {
        if (a.c_[p] == cplx(0)) continue;
        const auto& al = alpha_of(p);
        const int da = degree_of(p);
        for (int q = 0; q < nb; ++q) {
            if (degree_of(q) + da > j.ord_) break;
            if (b.c_[q] == cplx(0)) continue;
            const auto& be = alpha_of(q);
            std::array<int, 4> s = {al[0] + be[0], al[1] + be[1], al[2] + be[2], al[3] + be[3]};
            // partial derivatives compose with binomial weights
            double mult = 1.0;
            for (int v = 0; v < 4; ++v)
                for (int t = 0; t < al[v]; ++t) mult *= double(s[v] - t) / double(t + 1);
            j.c_[index_of(s)] += mult * a.c_[p] * b.c_[q];
        }
    }
    return j;
}

Jet operator*(cplx s, const Jet& a) {
    Jet j = a;
    for (int i = 0; i < count_through_degree(j.ord_); ++i) j.c_[i] *= s;
    return j;
}

Jet Jet::deriv(int i) const {
    // coefficients are plain partial derivatives, so shifting the
    // multi-index is the whole job
    if (ord_ <= 0) throw std::runtime_error("jet differentiated beyond its order");
    Jet j(cplx(0), ord_ - 1);
    for (int p = 0; p < count_through_degree(j.ord_); ++p) {
        std::array<int, 4> a = alpha_of(p);
        a[i] += 1;
        j.c_[p] = c_[index_of(a)];
    }
    return j;
}

Jet Jet::conj() const {
    Jet j = *this;
    for (auto& z : j.c_) z = std::conj(z);
    return j;
}

Jet Jet::real() const {
    Jet j = *this;
    for (auto& z : j.c_) z = cplx(z.real(), 0.0);
    return j;
}

Jet Jet::imag() const {
    Jet j = *this;
    for (auto& z : j.c_) z = cplx(z.imag(), 0.0);
    return j;
}

Jet Jet::reciprocal() const {
    cplx v = value();
    if (std::abs(v) < 1e-300) throw std::runtime_error("jet reciprocal at a zero value");
    Jet dev = *this - Jet(v, ord_);
    Jet acc(1.0 / v, ord_);
    Jet pw(1.0, ord_);
    for (int k = 1; k <= ord_; ++k) {
        pw = pw * dev;
        cplx coef = ((k % 2) ? -1.0 : 1.0) / std::pow(v, double(k + 1));
        acc += coef * pw;
    }
    return acc;
}

Jet Jet::sqrt_real() const {
    cplx v = value();
    if (v.real() <= 0 || std::abs(v.imag()) > 1e-12 * std::abs(v))
        throw std::runtime_error("jet sqrt of a non-positive value");
    double r = std::sqrt(v.real());
    Jet dev = *this - Jet(v, ord_);
    Jet acc(r, ord_);
    Jet pw(1.0, ord_);
    double binom = 1.0;
    for (int k = 1; k <= ord_; ++k) {
        pw = pw * dev;
        binom *= (0.5 - (k - 1)) / k;
        acc += (binom * r / std::pow(v, double(k))) * pw;
    }
    return acc;
}

Jet Jet::pow_int(int n) const {
    if (n < 0) return reciprocal().pow_int(-n);
    Jet acc(1.0, ord_);
    for (int i = 0; i < n; ++i) acc = acc * *this;
    return acc;
}

Jet apply_field(const FieldJet& V, const Jet& f) {
    Jet acc(cplx(0), f.ord() - 1);
    for (int i = 0; i < 4; ++i) acc += V[i] * f.deriv(i);
    return acc;
}

Jet pair_form(const FieldJet& form, const FieldJet& field) {
    Jet acc(cplx(0), std::min(form[0].ord(), field[0].ord()));
    for (int i = 0; i < 4; ++i) acc += form[i] * field[i];
    return acc;
}

Jet d_form_on(const FieldJet& form, const FieldJet& V, const FieldJet& W) {
    // d(theta)(V, W) = sum_{i<j} (d_i theta_j - d_j theta_i)(V_i W_j - V_j W_i)
    Jet acc(cplx(0), form[0].ord() - 1);
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) {
            Jet comp = form[j].deriv(i) - form[i].deriv(j);
            acc += comp * (V[i] * W[j] - V[j] * W[i]);
        }
    return acc;
}

cplx wedge3_value(const FieldJet& a, const FieldJet& b, const FieldJet& g,
                  const std::array<std::array<double, 4>, 3>& basis) {
    cplx m[3][3];
    for (int col = 0; col < 3; ++col) {
        cplx va = 0, vb = 0, vg = 0;
        for (int i = 0; i < 4; ++i) {
            va += a[i].value() * basis[col][i];
            vb += b[i].value() * basis[col][i];
            vg += g[i].value() * basis[col][i];
        }
        m[0][col] = va;
        m[1][col] = vb;
        m[2][col] = vg;
    }
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
           m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

}  // namespace crv
