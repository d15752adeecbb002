#ifndef CRV_JET_HPP
#define CRV_JET_HPP

#include <array>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace crv {

using cplx = std::complex<double>;

// Truncated Taylor expansion (value plus partial derivatives) of a complex
// function of 4 real variables, to total order <= ord. The coefficient array
// stores plain partials indexed by multi-index; operations track how many
// orders remain valid the way series truncation does.
class Jet {
public:
    static constexpr int kVars = 4;
    static constexpr int kMaxOrd = 5;
    static constexpr int kSize = 126;  // multi-indices of total degree <= 5

    Jet() : ord_(kMaxOrd) { c_.fill(cplx(0)); }
    explicit Jet(cplx value, int ord = kMaxOrd) : ord_(ord) {
        c_.fill(cplx(0));
        c_[0] = value;
    }
    static Jet coordinate(int i, double value, int ord);
    static Jet constant(cplx v, int ord) { return Jet(v, ord); }

    int ord() const { return ord_; }
    cplx value() const { return c_[0]; }
    cplx& coeff(const std::array<int, 4>& alpha);
    cplx coeff(const std::array<int, 4>& alpha) const;

    Jet operator-() const;
    friend Jet operator+(const Jet& a, const Jet& b);
    friend Jet operator-(const Jet& a, const Jet& b);
    friend Jet operator*(const Jet& a, const Jet& b);
    friend Jet operator*(cplx s, const Jet& a);
    friend Jet operator+(const Jet& a, cplx s) { return a + Jet(s, a.ord()); }
    Jet& operator+=(const Jet& o) { return *this = *this + o; }
    Jet& operator-=(const Jet& o) { return *this = *this - o; }

    // partial derivative d/dx_i, one order shorter
    Jet deriv(int i) const;
    Jet conj() const;
    Jet real() const;
    Jet imag() const;
    // 1/f, requires f(0) != 0
    Jet reciprocal() const;
    // sqrt of a real positive function
    Jet sqrt_real() const;
    Jet pow_int(int n) const;

private:
    int ord_;
    std::array<cplx, kSize> c_;
};

// index bookkeeping shared by the jet implementation
namespace jet_detail {
int index_of(const std::array<int, 4>& alpha);
const std::array<int, 4>& alpha_of(int idx);
int degree_of(int idx);
int count_through_degree(int d);
}  // namespace jet_detail

// Vector field and 1-form at a point: componentwise jets over the ambient
// coordinates.
struct FieldJet {
    std::array<Jet, 4> v;
    Jet& operator[](int i) { return v[i]; }
    const Jet& operator[](int i) const { return v[i]; }
    FieldJet conj() const {
        FieldJet f;
        for (int i = 0; i < 4; ++i) f.v[i] = v[i].conj();
        return f;
    }
};

// directional derivative of a function jet along a field jet
Jet apply_field(const FieldJet& V, const Jet& f);
// pairing <form, field>
Jet pair_form(const FieldJet& form, const FieldJet& field);
// exterior derivative of a 1-form, evaluated on two fields
Jet d_form_on(const FieldJet& form, const FieldJet& V, const FieldJet& W);
// (alpha ^ beta ^ gamma)(V1, V2, V3)
cplx wedge3_value(const FieldJet& a, const FieldJet& b, const FieldJet& g,
                  const std::array<std::array<double, 4>, 3>& basis);

}  // namespace crv

#endif
