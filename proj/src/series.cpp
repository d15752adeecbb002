#include "crv/series.hpp"

namespace crv {

namespace {

void require_unit_lead(const ScalarSeries& x, const char* what) {
    if (x.lead() != 0 || !(x.at(0).v == Poly(1)) || x.at(0).rem)
        throw SeriesOrderError(std::string(what) + " requires leading coefficient 1 at order 0");
}

}  // namespace

ScalarSeries series_inv(const ScalarSeries& x) {
    require_unit_lead(x, "series_inv");
    ScalarSeries y(0, x.qmax());
    y.set(0, TPoly(1));
    for (int k = 1; k <= x.qmax(); ++k) {
        TPoly acc;
        for (int j = 1; j <= k; ++j) acc += x.at(j) * y.at(k - j);
        y.set(k, -acc);
    }
    return y;
}

ScalarSeries series_inv_sqrt(const ScalarSeries& x) {
    require_unit_lead(x, "series_inv_sqrt");
    ScalarSeries y(0, x.qmax());
    y.set(0, TPoly(1));
    for (int k = 1; k <= x.qmax(); ++k) {
        // order-k coefficient of y^2 x over the already-known part of y; the
        // full coefficient must vanish and the missing part is 2 y_k x_0.
        TPoly acc;
        for (int i = 0; i <= k; ++i)
            for (int j = 0; i + j <= k; ++j) {
                if (i == k || j == k) continue;
                acc += y.at(i) * y.at(j) * x.at(k - i - j);
            }
        y.set(k, acc * TPoly(Rational(-1, 2)));
    }
    return y;
}

}  // namespace crv
