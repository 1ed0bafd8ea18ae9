#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "solutions.hpp"

namespace pcurv {

enum class PClass { Zero, NilpotentNonzero, NotNilpotent };

inline const char* to_string(PClass c) {
    switch (c) {
        case PClass::Zero: return "Zero";
        case PClass::NilpotentNonzero: return "NilpotentNonzero";
        default: return "NotNilpotent";
    }
}

namespace detail {

template <class K>
std::pair<Poly<K>, K> clear_poly_denominators(const Poly<K>& f) {
    return {f, f.field().one()};
}

template <class F>
std::pair<Poly<RatFunc<F>>, RatFunc<F>> clear_poly_denominators(const Poly<RatFunc<F>>& f) {
    auto base = f.fld.base;
    Poly<F> l(base, {base.one()});
    for (const auto& e : f.c)
        if (!e.den_is_one()) l = lcm(l, e.den);
    RatFunc<F> s{l};
    if (l.degree() == 0) return {f, f.fld.one()};
    return {f * s, s};
}

template <class F>
std::pair<Poly<AlgExt<RatFunc<F>>>, AlgExt<RatFunc<F>>> clear_poly_denominators(
    const Poly<AlgExt<RatFunc<F>>>& f) {
    auto base = f.fld.ctx->modulus.field().base;
    Poly<F> l(base, {base.one()});
    for (const auto& e : f.c)
        for (const auto& comp : e.c)
            if (!comp.den_is_one()) l = lcm(l, comp.den);
    if (l.degree() == 0) return {f, f.fld.one()};
    auto s = f.fld.from_base(RatFunc<F>{l});
    return {f * s, s};
}

}  // namespace detail

// Exponents [rho_i] of Q = prod (x-x_i)^[rho_i], rho_i the residue of p1.
template <class K>
std::vector<std::uint64_t> q_exponents(const FuchsianOperator<K>& L) {
    const auto& fld = L.fld;
    std::vector<std::uint64_t> out;
    for (const auto& xi : L.finite_singularities) {
        K rho = fld.zero();
        if (L.p1.den.eval(xi).is_zero()) {
            Poly<K> lin(fld, {-xi, fld.one()});
            Poly<K> rest = L.p1.den / lin;
            if (rest.eval(xi).is_zero())
                throw P1MismatchQ("q_polynomial: p1 has a higher-order pole");
            rho = L.p1.num.eval(xi) / rest.eval(xi);
        }
        auto r = in_prime_subfield(rho);
        if (!r) throw P1MismatchQ("q_polynomial: residue of p1 not in F_p");
        out.push_back(*r);
    }
    return out;
}

// The monic Q with p1 = Q'/Q; for a normalized-form operator this is
// prod (x-x_i)^[1-alpha_i].
template <class K>
Poly<K> q_polynomial(const FuchsianOperator<K>& L) {
    auto qe = q_exponents(L);
    const auto& fld = L.fld;
    Poly<K> q(fld, {fld.one()});
    for (std::size_t i = 0; i < qe.size(); ++i)
        q = q * Poly<K>(fld, {-L.finite_singularities[i], fld.one()}).pow(qe[i]);
    if (!(RatFunc<K>(q.derivative(), q) == L.p1))
        throw P1MismatchQ("q_polynomial: p1 is not Q'/Q");
    return q;
}

// Reduced D^(p-1)(1/(Q u^2)), computed as wilson((Qu^2)^(p-1)) / (Qu^2)^p and
// reduced against the known factorization of the denominator.
template <class K>
RatFunc<K> curvature_indicator(const FuchsianOperator<K>& L, const Poly<K>& u) {
    const auto& fld = L.fld;
    const std::uint64_t p = L.p;
    auto qe = q_exponents(L);
    Poly<K> q(fld, {fld.one()});
    for (std::size_t i = 0; i < qe.size(); ++i)
        q = q * Poly<K>(fld, {-L.finite_singularities[i], fld.one()}).pow(qe[i]);

    auto [uc, scale] = detail::clear_poly_denominators(u);
    // part of u away from the singularities, for separating the
    // supersingular contribution from the spikes
    Poly<K> ured = uc;
    std::vector<int> umult;
    for (const auto& xi : L.finite_singularities) {
        auto [mm, rest] = order_at(ured, xi);
        umult.push_back(mm);
        ured = rest;
    }

    Poly<K> b = q * uc * uc;
    Poly<K> m = wilson_derivative(b.pow(p - 1));
    if (m.is_zero()) return RatFunc<K>(fld);

    Poly<K> num(fld, {fld.one()}), den(fld, {fld.one()});
    for (std::size_t i = 0; i < L.finite_singularities.size(); ++i) {
        const auto& xi = L.finite_singularities[i];
        auto [e, rest] = order_at(m, xi);
        m = rest;
        long net = static_cast<long>(e) -
                   static_cast<long>(p) * (static_cast<long>(qe[i]) + 2 * umult[i]);
        Poly<K> lin(fld, {-xi, fld.one()});
        if (net > 0)
            num = num * lin.pow(static_cast<std::uint64_t>(net));
        else if (net < 0)
            den = den * lin.pow(static_cast<std::uint64_t>(-net));
    }
    if (ured.degree() > 0) {
        auto [f, rest] = order_of_factor(m, ured);
        m = rest;
        // dividing by the non-monic factor absorbed powers of its unit
        m = m * ured.lc().pow(static_cast<std::uint64_t>(f));
        long net = static_cast<long>(f) - 2 * static_cast<long>(p);
        Poly<K> umonic = ured.monic();
        if (net > 0)
            num = num * umonic.pow(static_cast<std::uint64_t>(net));
        else if (net < 0)
            den = den * umonic.pow(static_cast<std::uint64_t>(-net));
    }
    // undo the coefficient scaling of u: the true leftover is m / scale^(2(p-1))
    m = m * scale.pow(2 * (p - 1)).inv();

    RatFunc<K> out(fld);
    out.num = num * m;
    out.den = std::move(den);  // monic, coprime to the numerator
    return out;
}

template <class K>
struct PCurvatureReport {
    PClass cls = PClass::NotNilpotent;
    std::optional<Poly<K>> Q;
    std::optional<RatFunc<K>> indicator;
    SolutionSet<K> solutions;
    std::vector<ExponentPair<K>> exponents;
};

// Trichotomy: NotNilpotent if the exponents leave F_p or no polynomial
// solution exists below the bound; otherwise Zero iff the solution rank is 2,
// which must agree with the vanishing of the indicator.
template <class K>
PCurvatureReport<K> classify(const FuchsianOperator<K>& L) {
    PCurvatureReport<K> rep;
    rep.exponents = local_exponents(L);
    if (!exponents_in_prime_field(rep.exponents)) {
        rep.cls = PClass::NotNilpotent;
        return rep;
    }
    rep.solutions = polynomial_kernel(L, classify_bound(L));
    rep.Q = q_polynomial(L);
    if (rep.solutions.rank_mod_p_powers == 0) {
        rep.cls = PClass::NotNilpotent;
        return rep;
    }
    rep.indicator = curvature_indicator(L, rep.solutions.minimal->first);
    const bool rank2 = rep.solutions.rank_mod_p_powers == 2;
    if (rank2 != rep.indicator->is_zero())
        throw InternalInconsistency("classify: rank and indicator verdicts disagree");
    rep.cls = rank2 ? PClass::Zero : PClass::NilpotentNonzero;
    return rep;
}

template <class K>
struct LogShape {
    K eps_pm1;                     // -(leading unit of the indicator)
    std::vector<int> nu_at_sing;   // nu_i at the finite singularities
    Poly<K> spike_frobenius;       // V with V(x^p) = spike part; roots are p-th
                                   // powers of the spike locations
};

// Shape check of Lemma-style logarithmic indicators: the reduced indicator
// must be a unit times prod (x-x_i)^(p(nu_i-1)) over the finite critical
// points. Returns nullopt on the exact (zero) case.
template <class K>
std::optional<LogShape<K>> logarithmic_test(const RatFunc<K>& ind,
                                            const std::vector<K>& singularities,
                                            std::uint64_t p) {
    if (ind.is_zero()) return std::nullopt;
    const auto& fld = ind.num.field();
    LogShape<K> out{fld.zero(), {}, Poly<K>(fld)};
    Poly<K> den = ind.den;
    Poly<K> num = ind.num;
    std::vector<int> dord, nord;
    for (const auto& xi : singularities) {
        auto [ed, drest] = order_at(den, xi);
        den = drest;
        auto [en, nrest] = order_at(num, xi);
        num = nrest;
        if (ed != 0 && en != 0)
            throw InternalInconsistency("logarithmic_test: indicator not reduced");
        if (ed != 0 && ed != static_cast<int>(p))
            throw NotLogarithmicShape("denominator exponent is not p");
        if (en % static_cast<int>(p) != 0)
            throw NotLogarithmicShape("numerator exponent not divisible by p");
        out.nu_at_sing.push_back(ed != 0 ? 0 : en / static_cast<int>(p) + 1);
    }
    if (den.degree() != 0)
        throw NotLogarithmicShape("denominator has factors outside the singularities");
    out.eps_pm1 = -(num.lc() / den.lc());
    Poly<K> w = num.monic();
    out.spike_frobenius = deflate_p(w);  // throws NotPPower on shape failure
    return out;
}

}  // namespace pcurv
