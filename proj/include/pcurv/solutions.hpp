#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "linalg.hpp"
#include "operators.hpp"

namespace pcurv {

template <class K>
struct SolutionSet {
    std::optional<std::pair<Poly<K>, int>> minimal;  // monic, degree
    std::optional<std::pair<Poly<K>, int>> second;   // monic, next noncongruent degree
    int rank_mod_p_powers = 0;
    int search_bound = 0;
};

// Denominator-cleared coefficients (A, B, C): solutions of L are the kernel
// of u -> A u'' + B u' + C u.
template <class K>
std::array<Poly<K>, 3> cleared_form(const FuchsianOperator<K>& L) {
    Poly<K> c0 = lcm(L.p1.den, L.p2.den);
    Poly<K> a = c0;
    Poly<K> b = L.p1.num * (c0 / L.p1.den);
    Poly<K> c = L.p2.num * (c0 / L.p2.den);
    return {std::move(a), std::move(b), std::move(c)};
}

template <class K>
Poly<K> operator_apply(const FuchsianOperator<K>& L, const Poly<K>& u) {
    auto [a, b, c] = cleared_form(L);
    return a * derivative_iter(u, 2) + b * u.derivative() + c * u;
}

// All degrees 0 <= n <= bound with n = -alpha_r or -alpha'_r (mod p).
template <class K>
std::set<int> admissible_degrees(const FuchsianOperator<K>& L, int bound) {
    auto exps = local_exponents(L);
    const auto& inf = exps.back();
    if (!inf.in_prime_field)
        throw ExponentsNotInPrimeField("admissible_degrees: exponents at infinity not in F_p");
    const std::int64_t p = static_cast<std::int64_t>(L.p);
    std::set<int> out;
    for (std::int64_t n = 0; n <= bound; ++n) {
        std::int64_t m = n % p;
        if (m == (p - static_cast<std::int64_t>(inf.alpha)) % p ||
            m == (p - static_cast<std::int64_t>(inf.alpha_prime)) % p)
            out.insert(static_cast<int>(n));
    }
    return out;
}

namespace detail {

// Reduce a kernel basis so all leading degrees are distinct. The degrees of
// the reduced basis are then exactly the degrees attained by nonzero kernel
// elements.
template <class K>
std::vector<Poly<K>> degree_reduce(std::vector<Poly<K>> basis) {
    std::vector<Poly<K>> red;
    for (auto& v : basis) {
        for (;;) {
            if (v.is_zero()) break;
            bool hit = false;
            for (const auto& w : red) {
                if (w.degree() == v.degree()) {
                    v -= w * (v.lc() / w.lc());
                    hit = true;
                    break;
                }
            }
            if (!hit) {
                red.push_back(v.monic());
                break;
            }
        }
    }
    return red;
}

}  // namespace detail

// Exact nullspace of the banded coefficient map of L on polynomials of
// degree <= bound. The rank is the dimension over the subring of p-th
// powers, read off from the noncongruent leading degrees (at most two).
template <class K>
SolutionSet<K> polynomial_kernel(const FuchsianOperator<K>& L, int bound) {
    auto [a, b, c] = cleared_form(L);
    const auto& fld = L.fld;
    int md = 0;
    if (!a.is_zero()) md = std::max(md, a.degree() - 2);
    if (!b.is_zero()) md = std::max(md, b.degree() - 1);
    if (!c.is_zero()) md = std::max(md, c.degree());
    const std::size_t cols = static_cast<std::size_t>(bound) + 1;
    const std::size_t rows = static_cast<std::size_t>(bound + md) + 1;
    Matrix<K> M(fld, rows, cols);
    for (std::size_t i = 0; i < cols; ++i) {
        auto add = [&](const Poly<K>& f, std::int64_t scale, int shift) {
            if (shift < 0 || scale % static_cast<std::int64_t>(L.p) == 0) return;
            K s = fld.from_int(scale);
            for (std::size_t j = 0; j < f.c.size(); ++j)
                M.at(j + static_cast<std::size_t>(shift), i) += f.c[j] * s;
        };
        auto ii = static_cast<std::int64_t>(i);
        add(a, ii * (ii - 1), static_cast<int>(i) - 2);
        add(b, ii, static_cast<int>(i) - 1);
        add(c, 1, static_cast<int>(i));
    }
    auto basis_vecs = nullspace(std::move(M));
    std::vector<Poly<K>> basis;
    basis.reserve(basis_vecs.size());
    for (auto& v : basis_vecs) basis.emplace_back(fld, std::move(v));
    auto red = detail::degree_reduce(std::move(basis));

    SolutionSet<K> out;
    out.search_bound = bound;
    if (red.empty()) return out;
    std::sort(red.begin(), red.end(),
              [](const Poly<K>& x, const Poly<K>& y) { return x.degree() < y.degree(); });
    const int p = static_cast<int>(L.p);
    std::set<int> classes;
    for (const auto& v : red) classes.insert(v.degree() % p);
    if (classes.size() > 2)
        throw InternalInconsistency("polynomial_kernel: more than two degree classes mod p");
    out.rank_mod_p_powers = static_cast<int>(classes.size());
    out.minimal = {red.front(), red.front().degree()};
    for (const auto& v : red) {
        if (v.degree() % p != red.front().degree() % p) {
            out.second = {v, v.degree()};
            break;
        }
    }
    return out;
}

// Sound search bound for arbitrary Fuchsian input: a minimal solution of a
// nilpotent operator has degree at most (r-1)(p-1) + (p-1)(r-2)/2 (vanishing
// orders below p at each finite singularity plus the Dwork bound on the
// reduced degree), and a zero-curvature witness pair fits below
// (r-1)p - (2r-3).
template <class K>
int classify_bound(const FuchsianOperator<K>& L) {
    const int p = static_cast<int>(L.p), r = L.r();
    return std::max((r - 1) * p, (r - 1) * (p - 1) + ((p - 1) * (r - 2)) / 2);
}

template <class K>
std::optional<std::pair<Poly<K>, int>> minimal_solution(const FuchsianOperator<K>& L) {
    return polynomial_kernel(L, (L.r() - 1) * static_cast<int>(L.p)).minimal;
}

template <class K>
struct ZeroCurvaturePair {
    Poly<K> u1, u2;
    int delta = 0;
};

template <class K>
std::optional<ZeroCurvaturePair<K>> zero_curvature_pair(const FuchsianOperator<K>& L) {
    auto ks = polynomial_kernel(L, (L.r() - 1) * static_cast<int>(L.p));
    if (ks.rank_mod_p_powers != 2) return std::nullopt;
    return ZeroCurvaturePair<K>{ks.minimal->first, ks.second->first,
                                ks.minimal->second + ks.second->second};
}

}  // namespace pcurv
