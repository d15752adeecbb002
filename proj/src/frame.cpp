#include "crv/frame.hpp"

namespace crv {

MatSeries mat_series_mul(const MatSeries& x, const MatSeries& y) {
    MatSeries s(x.lead() + y.lead(), std::min(x.qmax() + y.lead(), y.qmax() + x.lead()));
    for (auto& [i, ci] : x.stored())
        for (auto& [j, cj] : y.stored()) {
            if (i + j > s.qmax()) continue;
            Mat4 p = ci * cj;
            if (!p.known_zero()) s.set(i + j, s.at(i + j) + p);
        }
    return s;
}

MatSeries mat_series_scale(const MatSeries& x, const ScalarSeries& f) {
    MatSeries s(x.lead() + f.lead(), std::min(x.qmax() + f.lead(), f.qmax() + x.lead()));
    for (auto& [i, ci] : x.stored())
        for (auto& [j, cj] : f.stored()) {
            if (i + j > s.qmax()) continue;
            Mat4 p = ci * cj;
            if (!p.known_zero()) s.set(i + j, s.at(i + j) + p);
        }
    return s;
}

MatSeries mat_series_inv(const MatSeries& g) {
    if (g.lead() != 0) throw SeriesOrderError("matrix series inverse requires leading order 0");
    {
        Mat4 id = Mat4::identity();
        const Mat4& g0 = g.at(0);
        for (int i = 0; i < 16; ++i)
            if (!(g0.a[i].v == id.a[i].v) || g0.a[i].rem)
                throw SeriesOrderError("matrix series inverse requires identity leading coefficient");
    }
    if (g.qmax() < 1) {
        MatSeries acc(0, g.qmax());
        acc.set(0, Mat4::identity());
        return acc;
    }
    MatSeries e(1, g.qmax());
    for (auto& [k, c] : g.stored())
        if (k > 0) e.set(k, c);
    // (I + E)^{-1} = I - E + E^2 - ...; E starts at order >= 1 so the sum is
    // finite within the truncation.
    MatSeries acc(0, g.qmax());
    acc.set(0, Mat4::identity());
    MatSeries pw = e;
    int sign = -1;
    while (!pw.stored().empty()) {
        for (auto& [k, c] : pw.stored()) {
            if (k > acc.qmax()) continue;
            Mat4 t = sign < 0 ? -c : c;
            acc.set(k, acc.at(k) + t);
        }
        if (pw.lead() + e.lead() > g.qmax()) break;
        pw = mat_series_mul(pw, e);
        sign = -sign;
    }
    return acc;
}

MatSeries graded_form_dr(const MatSeries& g) {
    MatSeries s(g.lead(), g.qmax());
    for (auto& [k, c] : g.stored()) {
        Mat4 m;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                Rational factor(kFrameWeight2[i] + kFrameWeight2[j] - k, 2);
                // factor 0 means the graded entry is r-independent, so the
                // derivative vanishes even for tagged content
                if (factor.is_zero()) continue;
                m(i, j) = c(i, j) * TPoly(factor);
            }
        if (!m.known_zero()) s.set(k, m);
    }
    return s;
}

}  // namespace crv
