#pragma once

#include <string>

#include "algext.hpp"
#include "fp.hpp"
#include "poly.hpp"
#include "ratfunc.hpp"
#include "util.hpp"

namespace pcurv {

// Canonical, deterministic element formats used by reports and golden files:
//   F_p residues       decimal in [0, p)
//   F_p(L) elements    "num" or "(num)/(den)", lambda written L, terms in
//                      ascending exponents, e.g. "2+3*L+L^2"
//   extension elements components in ascending powers of the generator (w for
//                      finite fields, b for accessory-parameter extensions)
inline std::string fmt(const Fp& x) { return std::to_string(x.v); }

template <class K>
std::string fmt_poly(const Poly<K>& f, const std::string& var) {
    if (f.is_zero()) return "0";
    std::string s;
    for (std::size_t i = 0; i < f.c.size(); ++i) {
        if (f.c[i].is_zero()) continue;
        std::string cs = fmt(f.c[i]);
        bool composite = cs.find_first_of("+/*") != std::string::npos;
        std::string term;
        if (i == 0) {
            term = composite ? "(" + cs + ")" : cs;
        } else {
            std::string pw = var;
            if (i > 1) pw += "^" + std::to_string(i);
            if (cs == "1")
                term = pw;
            else
                term = (composite ? "(" + cs + ")" : cs) + "*" + pw;
        }
        if (!s.empty()) s += "+";
        s += term;
    }
    return s;
}

template <class F>
std::string fmt(const RatFunc<F>& x) {
    if (x.den_is_one()) return fmt_poly(x.num, "L");
    return "(" + fmt_poly(x.num, "L") + ")/(" + fmt_poly(x.den, "L") + ")";
}

inline std::string fmt(const AlgExt<Fp>& x) {
    Poly<Fp> f(x.ctx->modulus.field(), x.c);
    return fmt_poly(f, "w");
}

template <class F>
std::string fmt(const AlgExt<RatFunc<F>>& x) {
    Poly<RatFunc<F>> f(x.ctx->modulus.field(), x.c);
    return fmt_poly(f, "b");
}

inline std::string fmt(const Frac& x) { return x.str(); }

}  // namespace pcurv
