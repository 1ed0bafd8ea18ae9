#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "charp.hpp"
#include "poly.hpp"
#include "ratfunc.hpp"

namespace pcurv {

// Lagrange interpolation through (pts[i], vals[i]), pairwise distinct pts.
template <class K>
Poly<K> interpolate(const typename K::Field& fld, const std::vector<K>& pts,
                    const std::vector<K>& vals) {
    Poly<K> r(fld);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        Poly<K> li(fld, {fld.one()});
        K denom = fld.one();
        for (std::size_t j = 0; j < pts.size(); ++j) {
            if (j == i) continue;
            li = li * Poly<K>(fld, {-pts[j], fld.one()});
            denom *= pts[i] - pts[j];
        }
        r += li * (vals[i] / denom);
    }
    return r;
}

// Second-order operator D^2 + p1 D + p2 with marked finite singularities
// x_1..x_{r-1}; x_r = infinity is always an implicit singularity.
template <class K>
struct FuchsianOperator {
    using Field = typename K::Field;

    struct Normalized {
        std::vector<std::uint64_t> alpha;  // alpha_1..alpha_r as residues
        std::uint64_t d = 0;
        std::vector<K> beta;  // beta_0..beta_{r-4}
    };

    std::uint64_t p = 0;
    Field fld;
    std::vector<K> finite_singularities;
    RatFunc<K> p1, p2;
    std::optional<Normalized> normalized;

    int r() const { return static_cast<int>(finite_singularities.size()) + 1; }

    bool operator==(const FuchsianOperator& o) const {
        return finite_singularities == o.finite_singularities && p1 == o.p1 && p2 == o.p2;
    }
};

template <class K>
struct PSplit {
    Poly<K> P0, P1, P2, P3;  // p1 = P1/P0, p2 = P2/P0 + P3/P0^2
};

template <class K>
PSplit<K> psplit(const FuchsianOperator<K>& L) {
    const auto& fld = L.fld;
    Poly<K> P0 = poly_from_roots<K>(fld, L.finite_singularities);
    auto [q1, r1] = divmod(P0, L.p1.den);
    if (!r1.is_zero()) throw Error("operator is not Fuchsian: p1 pole outside pattern");
    Poly<K> P1 = L.p1.num * q1;
    if (P1.degree() > L.r() - 2) throw Error("operator is not Fuchsian: p1 pole order at infinity");
    auto [q2, r2] = divmod(P0 * P0, L.p2.den);
    if (!r2.is_zero()) throw Error("operator is not Fuchsian: p2 pole outside pattern");
    Poly<K> full = L.p2.num * q2;  // p2 * P0^2
    if (!full.is_zero() && full.degree() > 2 * P0.degree() - 2)
        throw Error("operator is not Fuchsian: p2 pole order at infinity");
    std::vector<K> vals;
    vals.reserve(L.finite_singularities.size());
    for (const auto& xi : L.finite_singularities) vals.push_back(full.eval(xi));
    Poly<K> P3 = interpolate<K>(fld, L.finite_singularities, vals);
    Poly<K> P2 = (full - P3) / P0;
    if (P2.degree() > L.r() - 3) throw Error("operator is not Fuchsian: p2 pole order at infinity");
    return {std::move(P0), std::move(P1), std::move(P2), std::move(P3)};
}

template <class K>
FuchsianOperator<K> make_operator(const typename K::Field& fld, std::uint64_t p,
                                  std::vector<K> singularities, RatFunc<K> p1, RatFunc<K> p2) {
    if (singularities.size() < 2) throw BadArity("Fuchsian operator needs r >= 3");
    for (std::size_t i = 0; i < singularities.size(); ++i)
        for (std::size_t j = i + 1; j < singularities.size(); ++j)
            if (singularities[i] == singularities[j])
                throw DuplicateSingularity("duplicate singularity");
    FuchsianOperator<K> L{p, fld, std::move(singularities), std::move(p1), std::move(p2), {}};
    psplit(L);  // validates the Fuchs conditions
    return L;
}

// Normalized-form operator: p1 = sum (1-alpha_i)/(x-x_i) and p2 with
// numerator d(d-alpha_r) x^(r-3) + beta_{r-4} x^(r-4) + ... + beta_0 over
// prod (x-x_i). The ordering beta[j] is the x^j coefficient.
template <class K>
FuchsianOperator<K> make_normalized(const typename K::Field& fld, std::uint64_t p,
                                    const std::vector<K>& singularities,
                                    const std::vector<std::uint64_t>& alpha, std::uint64_t d,
                                    const std::vector<K>& beta) {
    const std::size_t r = singularities.size() + 1;
    if (r < 3) throw BadArity("make_normalized: need r >= 3");
    if (alpha.size() != r) throw BadArity("make_normalized: |alpha| must be r");
    if (beta.size() != r - 3) throw BadArity("make_normalized: |beta| must be r-3");
    // the exponent labels at infinity are (-d, -d+alpha_r) only when
    // 2d = sum(alpha) - (r-2) mod p; anything else would mislabel them
    {
        std::uint64_t s = 0;
        for (auto a : alpha) s = (s + a) % p;
        std::uint64_t lhs = (2 * (d % p)) % p;
        std::uint64_t rhs = (s + 2 * p - static_cast<std::uint64_t>(r - 2) % p) % p;
        if (lhs != rhs % p)
            throw Error("make_normalized: d inconsistent with alpha (2d != sum(alpha)-(r-2) mod p)");
    }
    Poly<K> P0 = poly_from_roots<K>(fld, singularities);
    for (std::size_t i = 0; i < singularities.size(); ++i)
        for (std::size_t j = i + 1; j < singularities.size(); ++j)
            if (singularities[i] == singularities[j])
                throw DuplicateSingularity("duplicate singularity");
    Poly<K> P1(fld);
    for (std::size_t i = 0; i < singularities.size(); ++i) {
        Poly<K> rest = P0 / Poly<K>(fld, {-singularities[i], fld.one()});
        P1 += rest * fld.from_int(1 - static_cast<std::int64_t>(alpha[i]));
    }
    std::vector<K> num(r - 2, fld.zero());
    for (std::size_t j = 0; j + 3 < r; ++j) num[j] = beta[j];
    num[r - 3] = fld.from_int(static_cast<std::int64_t>(d)) *
                 fld.from_int(static_cast<std::int64_t>(d) - static_cast<std::int64_t>(alpha[r - 1]));
    Poly<K> P2(fld, std::move(num));
    FuchsianOperator<K> L{p, fld, singularities, RatFunc<K>(P1, P0), RatFunc<K>(P2, P0), {}};
    L.normalized = typename FuchsianOperator<K>::Normalized{alpha, d, beta};
    return L;
}

// Local exponents at one singular point: the roots of t^2 - sum*t + prod.
template <class K>
struct ExponentPair {
    bool at_infinity = false;
    K point;
    K sum, prod;
    bool in_prime_field = false;
    std::uint64_t alpha = 0, alpha_prime = 0;  // residues, alpha <= alpha_prime
};

template <class K>
std::vector<ExponentPair<K>> local_exponents(const FuchsianOperator<K>& L) {
    auto sp = psplit(L);
    const auto& fld = L.fld;
    const std::uint64_t p = L.p;
    Poly<K> P0d = sp.P0.derivative();
    std::vector<ExponentPair<K>> out;
    auto solve = [&](ExponentPair<K>& e) {
        auto s = in_prime_subfield(e.sum);
        auto pr = in_prime_subfield(e.prod);
        if (!s || !pr) return;
        for (std::uint64_t a = 0; a < p; ++a) {
            std::uint64_t lhs = (detail::mulmod(a, a, p) + *pr) % p;
            std::uint64_t rhs = detail::mulmod(a, *s, p);
            if (lhs == rhs) {
                std::uint64_t b = (*s + p - a % p) % p;
                e.in_prime_field = true;
                e.alpha = std::min(a, b);
                e.alpha_prime = std::max(a, b);
                return;
            }
        }
    };
    for (const auto& xi : L.finite_singularities) {
        ExponentPair<K> e{false, xi, fld.zero(), fld.zero(), false, 0, 0};
        K d = P0d.eval(xi);
        e.sum = fld.one() - sp.P1.eval(xi) / d;
        e.prod = sp.P3.eval(xi) / (d * d);
        solve(e);
        out.push_back(std::move(e));
    }
    ExponentPair<K> inf{true, fld.zero(), fld.zero(), fld.zero(), false, 0, 0};
    inf.sum = -fld.one() + sp.P1.coeff(static_cast<std::size_t>(L.r() - 2));
    inf.prod = sp.P2.coeff(static_cast<std::size_t>(L.r() - 3));
    solve(inf);
    out.push_back(std::move(inf));
    return out;
}

template <class K>
bool exponents_in_prime_field(const std::vector<ExponentPair<K>>& e) {
    for (const auto& x : e)
        if (!x.in_prime_field) return false;
    return true;
}

// Riemann relation: sum over all singularities of (alpha + alpha') = r - 2.
// The relation is an identity on Fuchsian operators; a perturbation that
// leaves the Fuchsian class breaks the exponent computation and reports
// false.
template <class K>
bool riemann_check(const FuchsianOperator<K>& L) {
    std::vector<ExponentPair<K>> exps;
    try {
        exps = local_exponents(L);
    } catch (const Error&) {
        return false;
    }
    K s = L.fld.zero();
    for (const auto& e : exps) s += e.sum;
    return s == L.fld.from_int(L.r() - 2);
}

// Equivalent operator whose exponents at x_i are {alpha_i - mu_i,
// alpha'_i - mu_i}: conjugation by v = prod (x-x_i)^(p - mu_i), a polynomial
// multiplier realizing the shift -mu_i mod p. With g = v'/v this is
// p1 -> p1 - 2g, p2 -> p2 - p1 g + g^2 - g'.
template <class K>
FuchsianOperator<K> gauge_transform(const FuchsianOperator<K>& L,
                                    const std::vector<std::uint64_t>& mu) {
    if (mu.size() != L.finite_singularities.size())
        throw BadArity("gauge_transform: one exponent per finite singularity");
    bool all_zero = true;
    for (auto m : mu)
        if (m % L.p != 0) all_zero = false;
    if (all_zero) return L;
    const auto& fld = L.fld;
    RatFunc<K> g(fld);
    for (std::size_t i = 0; i < mu.size(); ++i) {
        Poly<K> lin(fld, {-L.finite_singularities[i], fld.one()});
        g += RatFunc<K>(Poly<K>(fld, {fld.from_int(-static_cast<std::int64_t>(mu[i] % L.p))}),
                        lin);
    }
    RatFunc<K> two = RatFunc<K>(Poly<K>(fld, {fld.from_int(2)}));
    RatFunc<K> p1 = L.p1 - two * g;
    RatFunc<K> p2 = L.p2 - L.p1 * g + g * g - g.derivative();
    return make_operator<K>(fld, L.p, L.finite_singularities, std::move(p1), std::move(p2));
}

// The first-order factor data of the Wronskian equation.
template <class K>
RatFunc<K> wronskian(const FuchsianOperator<K>& L) {
    return L.p1;
}

}  // namespace pcurv
