#ifndef CRV_SERIALIZE_HPP
#define CRV_SERIALIZE_HPP

#include "json.hpp"

#include "crv/series.hpp"

namespace crv {

// Canonical JSON for exact polynomials: monomials in their canonical sorted
// order, coefficients as numerator/denominator strings.
inline std::string monomial_key(const Monomial& m) {
    std::string s;
    for (int i = 0; i < kSymCount; ++i) {
        if (m.exp[i] == 0) continue;
        if (!s.empty()) s += "*";
        s += std::string(sym_name(static_cast<Sym>(i)));
        if (m.exp[i] > 1) s += "^" + std::to_string(int(m.exp[i]));
    }
    return s.empty() ? "1" : s;
}

inline nlohmann::ordered_json poly_to_json(const Poly& p) {
    auto arr = nlohmann::ordered_json::array();
    for (auto& [m, c] : p.terms()) {
        nlohmann::ordered_json t;
        t["m"] = monomial_key(m);
        t["re_num"] = c.re.num_string();
        t["re_den"] = c.re.den_string();
        t["im_num"] = c.im.num_string();
        t["im_den"] = c.im.den_string();
        arr.push_back(std::move(t));
    }
    return arr;
}

inline nlohmann::ordered_json series_to_json(const ScalarSeries& s) {
    nlohmann::ordered_json j;
    j["lead"] = s.lead();
    j["qmax"] = s.qmax();
    auto coeff = nlohmann::ordered_json::object();
    auto rem = nlohmann::ordered_json::array();
    for (auto& [k, c] : s.stored()) {
        coeff[std::to_string(k)] = poly_to_json(c.v);
        if (c.rem) rem.push_back(k);
    }
    j["coeff"] = std::move(coeff);
    j["remainder_orders"] = std::move(rem);
    return j;
}

}  // namespace crv

#endif
