#pragma once

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <initializer_list>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace pcurv {

// Dense univariate polynomial over a coefficient field F, lowest degree
// first. Canonical form: no trailing zero coefficients, the zero polynomial
// has an empty coefficient vector.
template <class F>
struct Poly {
    using Field = typename F::Field;

    Field fld;
    std::vector<F> c;

    explicit Poly(const Field& f) : fld(f) {}
    Poly(const Field& f, std::vector<F> coeffs) : fld(f), c(std::move(coeffs)) { trim(); }

    void trim() {
        while (!c.empty() && c.back().is_zero()) c.pop_back();
    }

    const Field& field() const { return fld; }
    bool is_zero() const { return c.empty(); }
    int degree() const { return static_cast<int>(c.size()) - 1; }
    bool is_constant() const { return c.size() <= 1; }

    F coeff(std::size_t i) const { return i < c.size() ? c[i] : fld.zero(); }
    const F& lc() const {
        assert(!c.empty());
        return c.back();
    }

    bool operator==(const Poly& o) const { return c == o.c; }
    bool operator!=(const Poly& o) const { return !(*this == o); }

    Poly operator+(const Poly& o) const {
        Poly r(fld);
        r.c.resize(std::max(c.size(), o.c.size()), fld.zero());
        for (std::size_t i = 0; i < r.c.size(); ++i) r.c[i] = coeff(i) + o.coeff(i);
        r.trim();
        return r;
    }
    Poly operator-(const Poly& o) const {
        Poly r(fld);
        r.c.resize(std::max(c.size(), o.c.size()), fld.zero());
        for (std::size_t i = 0; i < r.c.size(); ++i) r.c[i] = coeff(i) - o.coeff(i);
        r.trim();
        return r;
    }
    Poly operator-() const {
        Poly r = *this;
        for (auto& x : r.c) x = -x;
        return r;
    }
    Poly operator*(const Poly& o) const {
        if (is_zero() || o.is_zero()) return Poly(fld);
        Poly r(fld);
        r.c.assign(c.size() + o.c.size() - 1, fld.zero());
        for (std::size_t i = 0; i < c.size(); ++i) {
            if (c[i].is_zero()) continue;
            for (std::size_t j = 0; j < o.c.size(); ++j)
                r.c[i + j] += c[i] * o.c[j];
        }
        r.trim();
        return r;
    }
    Poly operator*(const F& s) const {
        Poly r = *this;
        for (auto& x : r.c) x = x * s;
        r.trim();
        return r;
    }
    Poly& operator+=(const Poly& o) { return *this = *this + o; }
    Poly& operator-=(const Poly& o) { return *this = *this - o; }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }

    // Multiply by x^k.
    Poly shifted_up(std::size_t k) const {
        if (is_zero()) return *this;
        Poly r(fld);
        r.c.assign(c.size() + k, fld.zero());
        std::copy(c.begin(), c.end(), r.c.begin() + static_cast<long>(k));
        return r;
    }

    F eval(const F& x) const {
        F r = fld.zero();
        for (std::size_t i = c.size(); i-- > 0;) r = r * x + c[i];
        return r;
    }

    Poly derivative() const {
        Poly r(fld);
        if (c.size() <= 1) return r;
        r.c.resize(c.size() - 1, fld.zero());
        for (std::size_t i = 1; i < c.size(); ++i)
            r.c[i - 1] = c[i] * fld.from_int(static_cast<std::int64_t>(i));
        r.trim();
        return r;
    }

    Poly monic() const {
        if (is_zero()) return *this;
        return *this * lc().inv();
    }

    // f(x + a)
    Poly shift(const F& a) const {
        Poly r(fld);
        Poly lin(fld, {a, fld.one()});
        for (std::size_t i = c.size(); i-- > 0;) {
            r = r * lin;
            r += Poly(fld, {c[i]});
        }
        return r;
    }

    // f(x^k)
    Poly inflate(std::size_t k) const {
        if (is_zero() || k == 1) return *this;
        Poly r(fld);
        r.c.assign((c.size() - 1) * k + 1, fld.zero());
        for (std::size_t i = 0; i < c.size(); ++i) r.c[i * k] = c[i];
        r.trim();
        return r;
    }

    Poly pow(std::uint64_t e) const {
        Poly r(fld, {fld.one()});
        Poly b = *this;
        while (e) {
            if (e & 1) r = r * b;
            if (e >>= 1) b = b * b;
        }
        return r;
    }
};

template <class F>
Poly<F> operator*(const F& s, const Poly<F>& f) {
    return f * s;
}

template <class F>
std::pair<Poly<F>, Poly<F>> divmod(const Poly<F>& a, const Poly<F>& b) {
    if (b.is_zero()) throw Error("Poly: division by zero polynomial");
    Poly<F> q(a.field()), r = a;
    if (r.degree() < b.degree()) return {q, r};
    q.c.assign(static_cast<std::size_t>(r.degree() - b.degree()) + 1, a.field().zero());
    F li = b.lc().inv();
    while (!r.is_zero() && r.degree() >= b.degree()) {
        std::size_t k = static_cast<std::size_t>(r.degree() - b.degree());
        F f = r.lc() * li;
        q.c[k] = f;
        for (std::size_t i = 0; i < b.c.size(); ++i)
            r.c[k + i] -= f * b.c[i];
        r.trim();
    }
    q.trim();
    return {q, r};
}

template <class F>
Poly<F> operator/(const Poly<F>& a, const Poly<F>& b) {
    auto [q, r] = divmod(a, b);
    if (!r.is_zero()) throw Error("Poly: inexact division");
    return q;
}

template <class F>
Poly<F> operator%(const Poly<F>& a, const Poly<F>& b) {
    return divmod(a, b).second;
}

template <class F>
Poly<F> gcd(Poly<F> a, Poly<F> b) {
    while (!b.is_zero()) {
        Poly<F> r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    if (a.is_zero()) return a;
    return a.monic();
}

template <class F>
Poly<F> lcm(const Poly<F>& a, const Poly<F>& b) {
    if (a.is_zero() || b.is_zero()) return Poly<F>(a.field());
    return ((a * b) / gcd(a, b)).monic();
}

// Multiplicity of (x - pt) in f; also returns f with the factor removed.
template <class F>
std::pair<int, Poly<F>> order_at(Poly<F> f, const F& pt) {
    if (f.is_zero()) throw Error("order_at: zero polynomial");
    int ord = 0;
    Poly<F> lin(f.field(), {-pt, f.field().one()});
    while (f.eval(pt).is_zero()) {
        f = f / lin;
        ++ord;
    }
    return {ord, f};
}

// Largest j with g^j | f; also returns f / g^j.
template <class F>
std::pair<int, Poly<F>> order_of_factor(Poly<F> f, const Poly<F>& g) {
    if (f.is_zero() || g.is_constant()) throw Error("order_of_factor: bad input");
    int ord = 0;
    for (;;) {
        auto [q, r] = divmod(f, g);
        if (!r.is_zero()) break;
        f = std::move(q);
        ++ord;
    }
    return {ord, f};
}

template <class F>
Poly<F> make_poly(const typename F::Field& fld, std::initializer_list<std::int64_t> coeffs) {
    std::vector<F> c;
    c.reserve(coeffs.size());
    for (auto n : coeffs) c.push_back(fld.from_int(n));
    return Poly<F>(fld, std::move(c));
}

// Monic product of (x - pts[i]).
template <class F>
Poly<F> poly_from_roots(const typename F::Field& fld, const std::vector<F>& pts) {
    Poly<F> r(fld, {fld.one()});
    for (const auto& pt : pts) r = r * Poly<F>(fld, {-pt, fld.one()});
    return r;
}

}  // namespace pcurv
