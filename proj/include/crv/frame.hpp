#ifndef CRV_FRAME_HPP
#define CRV_FRAME_HPP

#include <array>

#include "crv/series.hpp"

namespace crv {

// Components of tensors in the adapted frame of the compactification:
//   e0 = d/dr,  e1 = e^{-r} xi,  e2 = e^{-r/2} h,  e3 = e^{-r/2} J0 h,
// where h is a gamma-unit eigenvector of J0*tau with eigenvalue +t. The dual
// coframe carries e^{r}-weights (0, 1, 1/2, 1/2), stored doubled so they stay
// integral.
inline constexpr std::array<int, 4> kFrameWeight2 = {0, 2, 1, 1};

struct Mat4 {
    std::array<TPoly, 16> a{};

    static Mat4 identity() {
        Mat4 m;
        for (int i = 0; i < 4; ++i) m(i, i) = TPoly(1);
        return m;
    }
    TPoly& operator()(int i, int j) { return a[4 * i + j]; }
    const TPoly& operator()(int i, int j) const { return a[4 * i + j]; }

    bool known_zero() const {
        for (auto& t : a)
            if (!t.known_zero()) return false;
        return true;
    }
    Mat4 operator-() const {
        Mat4 m;
        for (int i = 0; i < 16; ++i) m.a[i] = -a[i];
        return m;
    }
    Mat4& operator+=(const Mat4& o) {
        for (int i = 0; i < 16; ++i) a[i] += o.a[i];
        return *this;
    }
    friend Mat4 operator+(Mat4 x, const Mat4& y) { return x += y; }
    friend Mat4 operator-(Mat4 x, const Mat4& y) {
        for (int i = 0; i < 16; ++i) x.a[i] = x.a[i] - y.a[i];
        return x;
    }
    friend Mat4 operator*(const Mat4& x, const Mat4& y) {
        Mat4 m;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                TPoly acc;
                for (int k = 0; k < 4; ++k) acc += x(i, k) * y(k, j);
                m(i, j) = acc;
            }
        return m;
    }
    Mat4 operator*(const TPoly& c) const {
        Mat4 m;
        for (int i = 0; i < 16; ++i) m.a[i] = a[i] * c;
        return m;
    }
    Mat4 operator*(const Rational& r) const { return *this * TPoly(r); }
    Mat4 transposed() const {
        Mat4 m;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) m(i, j) = (*this)(i, j);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < i; ++j) std::swap(m(i, j), m(j, i));
        return m;
    }
    bool is_symmetric() const {
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < i; ++j) {
                if (!((*this)(i, j).v == (*this)(j, i).v)) return false;
                if ((*this)(i, j).rem != (*this)(j, i).rem) return false;
            }
        return true;
    }
};

using MatSeries = Series<Mat4>;

// Diagonal endomorphism of the tangent space of the coordinate sphere, in
// the frame directions (e1, e2, e3).
struct DiagEndo {
    std::array<TPoly, 3> lam{};

    DiagEndo() = default;
    DiagEndo(TPoly l1, TPoly l2, TPoly l3) : lam{std::move(l1), std::move(l2), std::move(l3)} {}
    static DiagEndo remainder() {
        DiagEndo d;
        for (auto& l : d.lam) l.rem = true;
        return d;
    }

    bool known_zero() const {
        return lam[0].known_zero() && lam[1].known_zero() && lam[2].known_zero();
    }
    DiagEndo operator-() const { return {-lam[0], -lam[1], -lam[2]}; }
    DiagEndo& operator+=(const DiagEndo& o) {
        for (int i = 0; i < 3; ++i) lam[i] += o.lam[i];
        return *this;
    }
    friend DiagEndo operator+(DiagEndo a, const DiagEndo& b) { return a += b; }
    DiagEndo operator*(const TPoly& c) const { return {lam[0] * c, lam[1] * c, lam[2] * c}; }
};

using ShapeSeries = Series<DiagEndo>;

// Series-level matrix helpers.
MatSeries mat_series_mul(const MatSeries& x, const MatSeries& y);
MatSeries mat_series_scale(const MatSeries& x, const ScalarSeries& s);
// Inverse by Neumann expansion about the order-0 identity coefficient.
MatSeries mat_series_inv(const MatSeries& g);
// d/dr of the bilinear form sum G_ij(r) F^i F^j including the coframe
// weights e^{w_i r}.
MatSeries graded_form_dr(const MatSeries& g);

}  // namespace crv

#endif
