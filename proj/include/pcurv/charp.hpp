#pragma once

#include <cstdint>
#include <type_traits>
#include <utility>
#include <vector>

#include "algext.hpp"
#include "fp.hpp"
#include "poly.hpp"
#include "ratfunc.hpp"

namespace pcurv {

template <class K>
struct IsFiniteField : std::false_type {};
template <>
struct IsFiniteField<Fp> : std::true_type {};
template <class F>
struct IsFiniteField<AlgExt<F>> : IsFiniteField<F> {};

template <class K>
struct IsRatFuncField : std::false_type {};
template <class F>
struct IsRatFuncField<RatFunc<F>> : std::true_type {};

template <class K>
Poly<K> derivative_iter(Poly<K> f, std::uint64_t k) {
    for (std::uint64_t i = 0; i < k && !f.is_zero(); ++i) f = f.derivative();
    return f;
}

// D^(p-1) in closed form: the multiplier n(n-1)...(n-p+2) covers p-1
// consecutive residues and so vanishes unless n = p-1 (mod p), where it is
// (p-1)! = -1 by Wilson's theorem.
template <class K>
Poly<K> wilson_derivative(const Poly<K>& f) {
    const std::uint64_t p = f.field().characteristic();
    Poly<K> out(f.field());
    if (f.is_zero()) return out;
    out.c.assign(f.c.size(), f.field().zero());
    for (std::size_t n = 0; n < f.c.size(); ++n) {
        if (f.c[n].is_zero()) continue;
        if (n % p == p - 1) out.c[n - (p - 1)] = -f.c[n];
    }
    out.trim();
    return out;
}

// D^(p-1)(A/B) = D^(p-1)(A B^(p-1)) / B^p, since B^p is killed by D.
template <class K>
RatFunc<K> rational_wilson_derivative(const RatFunc<K>& f) {
    const std::uint64_t p = f.num.field().characteristic();
    Poly<K> m = wilson_derivative(f.num * f.den.pow(p - 1));
    return RatFunc<K>(std::move(m), f.den.pow(p));
}

// Coefficient of (x - tau)^(-1) at tau, by Taylor shift and series division.
// The cap on the pole order guards against malformed input (0 = use 2p).
template <class K>
K residue_at(const RatFunc<K>& f, const K& tau, int cap = 0) {
    const auto& fld = f.num.field();
    if (cap <= 0) cap = static_cast<int>(2 * fld.characteristic());
    if (f.is_zero()) return fld.zero();
    Poly<K> n = f.num.shift(tau), d = f.den.shift(tau);
    int vn = 0, vd = 0;
    while (vn < static_cast<int>(n.c.size()) && n.c[static_cast<std::size_t>(vn)].is_zero()) ++vn;
    while (vd < static_cast<int>(d.c.size()) && d.c[static_cast<std::size_t>(vd)].is_zero()) ++vd;
    if (vd > cap) throw Error("residue_at: pole order exceeds cap");
    int want = vd - vn - 1;
    if (want < 0) return fld.zero();
    // first want+1 coefficients of the series (n/y^vn) / (d/y^vd)
    K d0inv = d.c[static_cast<std::size_t>(vd)].inv();
    std::vector<K> t(static_cast<std::size_t>(want) + 1, fld.zero());
    for (int j = 0; j <= want; ++j) {
        K acc = n.coeff(static_cast<std::size_t>(vn + j));
        for (int i = 0; i < j; ++i)
            acc -= t[static_cast<std::size_t>(i)] * d.coeff(static_cast<std::size_t>(vd + j - i));
        t[static_cast<std::size_t>(j)] = acc * d0inv;
    }
    return t[static_cast<std::size_t>(want)];
}

// Exponent-only deflation: g with g(x^p) = f.
template <class K>
Poly<K> deflate_p(const Poly<K>& f) {
    const std::uint64_t p = f.field().characteristic();
    Poly<K> g(f.field());
    if (f.is_zero()) return g;
    g.c.assign(f.c.size() / p + 1, f.field().zero());
    for (std::size_t i = 0; i < f.c.size(); ++i) {
        if (f.c[i].is_zero()) continue;
        if (i % p != 0) throw NotPPower("deflate_p: exponent not divisible by p");
        g.c[i / p] = f.c[i];
    }
    g.trim();
    return g;
}

namespace detail {

template <class K>
void squarefree_rec(const Poly<K>& f, int scale,
                    std::vector<std::pair<Poly<K>, int>>& out) {
    const std::uint64_t p = f.field().characteristic();
    if (f.degree() <= 0) return;
    Poly<K> f1 = f.derivative();
    if (f1.is_zero()) {
        Poly<K> g = deflate_p(f);
        // f = h^p only when the coefficients themselves are p-th powers;
        // otherwise (possible over F_p(lambda)) f is already squarefree.
        Poly<K> h(f.field());
        h.c.assign(g.c.size(), f.field().zero());
        bool rooted = true;
        for (std::size_t i = 0; i < g.c.size(); ++i) {
            auto r = frobenius_root(g.c[i]);
            if (!r) {
                rooted = false;
                break;
            }
            h.c[i] = *r;
        }
        if (rooted) {
            h.trim();
            squarefree_rec(h, scale * static_cast<int>(p), out);
        } else {
            out.emplace_back(f, scale);
        }
        return;
    }
    Poly<K> c = gcd(f, f1);
    Poly<K> w = f / c;
    int i = 1;
    while (w.degree() > 0) {
        Poly<K> y = gcd(w, c);
        Poly<K> z = w / y;
        if (z.degree() > 0) out.emplace_back(z, i * scale);
        c = c / y;
        w = std::move(y);
        ++i;
    }
    if (c.degree() > 0) squarefree_rec(c, scale, out);
}

}  // namespace detail

// Pairwise-coprime monic squarefree factors g_i with f = lc * prod g_i^(m_i).
template <class K>
std::vector<std::pair<Poly<K>, int>> squarefree_decomposition(const Poly<K>& f) {
    if (f.is_zero()) throw Error("squarefree_decomposition: zero polynomial");
    std::vector<std::pair<Poly<K>, int>> out;
    detail::squarefree_rec(f.monic(), 1, out);
    return out;
}

// Roots with multiplicities inside the supported search space: exhaustive
// scan for finite fields (order <= 10^4), and roots of the form c*lambda + d
// with c, d in F_p over a rational function field.
template <class K>
std::vector<std::pair<K, int>> roots_over(const typename K::Field& fld, const Poly<K>& f) {
    if (f.is_zero()) throw Error("roots_over: zero polynomial");
    std::vector<std::pair<K, int>> out;
    if (f.degree() <= 0) return out;
    auto take_root = [&](Poly<K>& g, const K& x) {
        auto [m, rest] = order_at(g, x);
        if (m > 0) {
            out.emplace_back(x, m);
            g = std::move(rest);
        }
    };
    Poly<K> g = f;
    if constexpr (IsFiniteField<K>::value) {
        std::uint64_t q = fld.order();
        if (q > 10000)
            throw UnsupportedSearchSpace("roots_over: field too large for exhaustive scan");
        for (std::uint64_t i = 0; i < q && g.degree() > 0; ++i) {
            K x = fld.element(i);
            if (g.eval(x).is_zero()) take_root(g, x);
        }
    } else if constexpr (IsRatFuncField<K>::value) {
        const std::uint64_t p = fld.characteristic();
        auto lam = fld.variable();
        for (std::uint64_t c = 0; c < p && g.degree() > 0; ++c) {
            for (std::uint64_t d = 0; d < p && g.degree() > 0; ++d) {
                K x = lam * fld.from_int(static_cast<std::int64_t>(c)) +
                      fld.from_int(static_cast<std::int64_t>(d));
                if (g.eval(x).is_zero()) take_root(g, x);
            }
        }
    } else {
        if (f.degree() == 1) {
            out.emplace_back(-(f.c[0] / f.c[1]), 1);
            return out;
        }
        throw UnsupportedSearchSpace("roots_over: unsupported field/shape combination");
    }
    return out;
}

}  // namespace pcurv
