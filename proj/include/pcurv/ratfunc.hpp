#pragma once

#include <cassert>
#include <cstdint>
#include <optional>
#include <utility>

#include "poly.hpp"

namespace pcurv {

template <class F>
struct RatFunc;

template <class F>
struct RatFuncField {
    typename F::Field base;

    RatFuncField() = default;
    explicit RatFuncField(const typename F::Field& b) : base(b) {}

    std::uint64_t characteristic() const { return base.characteristic(); }
    static constexpr bool finite() { return false; }
    bool operator==(const RatFuncField& o) const { return base == o.base; }
    bool operator!=(const RatFuncField& o) const { return !(*this == o); }

    RatFunc<F> zero() const;
    RatFunc<F> one() const;
    RatFunc<F> from_int(std::int64_t n) const;
    RatFunc<F> variable() const;
};

// Reduced fraction of polynomials: gcd(num, den) = 1, den monic and nonzero;
// the zero element is 0/1.
template <class F>
struct RatFunc {
    using Field = RatFuncField<F>;

    Poly<F> num, den;

    explicit RatFunc(const typename F::Field& base)
        : num(base), den(base, {base.one()}) {}
    RatFunc(Poly<F> n, Poly<F> d) : num(std::move(n)), den(std::move(d)) { reduce(); }
    explicit RatFunc(Poly<F> n) : num(std::move(n)), den(num.field(), {num.field().one()}) {}

    void reduce() {
        if (den.is_zero()) throw Error("RatFunc: zero denominator");
        if (num.is_zero()) {
            den = Poly<F>(num.field(), {num.field().one()});
            return;
        }
        if (den.degree() > 0 || num.degree() > 0) {
            Poly<F> g = gcd(num, den);
            if (g.degree() > 0) {
                num = num / g;
                den = den / g;
            }
        }
        F l = den.lc();
        if (!(l == num.field().one())) {
            F li = l.inv();
            num = num * li;
            den = den * li;
        }
    }

    Field field() const { return Field(num.field()); }
    bool is_zero() const { return num.is_zero(); }
    bool den_is_one() const { return den.degree() == 0; }
    bool is_polynomial() const { return den_is_one(); }
    bool is_constant() const { return num.is_constant() && den_is_one(); }

    bool operator==(const RatFunc& o) const { return num == o.num && den == o.den; }
    bool operator!=(const RatFunc& o) const { return !(*this == o); }

    RatFunc operator+(const RatFunc& o) const {
        if (den_is_one() && o.den_is_one()) return RatFunc(num + o.num);
        return RatFunc(num * o.den + o.num * den, den * o.den);
    }
    RatFunc operator-(const RatFunc& o) const {
        if (den_is_one() && o.den_is_one()) return RatFunc(num - o.num);
        return RatFunc(num * o.den - o.num * den, den * o.den);
    }
    RatFunc operator-() const {
        RatFunc r = *this;
        r.num = -r.num;
        return r;
    }
    RatFunc operator*(const RatFunc& o) const {
        if (is_zero() || o.is_zero()) return RatFunc(num.field());
        if (den_is_one() && o.den_is_one()) return RatFunc(num * o.num);
        // cross-reduce so intermediate products stay small
        Poly<F> g1 = gcd(num, o.den), g2 = gcd(o.num, den);
        Poly<F> n = (g1.degree() > 0 ? num / g1 : num) * (g2.degree() > 0 ? o.num / g2 : o.num);
        Poly<F> d = (g2.degree() > 0 ? den / g2 : den) * (g1.degree() > 0 ? o.den / g1 : o.den);
        RatFunc r(num.field());
        r.num = std::move(n);
        r.den = std::move(d);
        F l = r.den.lc();
        if (!(l == num.field().one())) {
            F li = l.inv();
            r.num = r.num * li;
            r.den = r.den * li;
        }
        return r;
    }
    RatFunc inv() const {
        if (is_zero()) throw Error("RatFunc: division by zero");
        RatFunc r = *this;
        std::swap(r.num, r.den);
        F l = r.den.lc();
        if (!(l == num.field().one())) {
            F li = l.inv();
            r.num = r.num * li;
            r.den = r.den * li;
        }
        return r;
    }
    RatFunc operator/(const RatFunc& o) const { return *this * o.inv(); }
    RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
    RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
    RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
    RatFunc& operator/=(const RatFunc& o) { return *this = *this / o; }

    RatFunc derivative() const {
        return RatFunc(num.derivative() * den - num * den.derivative(), den * den);
    }

    RatFunc pow(std::uint64_t e) const {
        RatFunc r = field().one();
        RatFunc b = *this;
        while (e) {
            if (e & 1) r = r * b;
            if (e >>= 1) b = b * b;
        }
        return r;
    }

    // Evaluate at a point of the coefficient field; the point must not be a
    // pole.
    F eval(const F& x) const {
        F d = den.eval(x);
        if (d.is_zero()) throw Error("RatFunc: evaluation at a pole");
        return num.eval(x) / d;
    }
};

template <class F>
RatFunc<F> RatFuncField<F>::zero() const {
    return RatFunc<F>(base);
}
template <class F>
RatFunc<F> RatFuncField<F>::one() const {
    return RatFunc<F>(Poly<F>(base, {base.one()}));
}
template <class F>
RatFunc<F> RatFuncField<F>::from_int(std::int64_t n) const {
    return RatFunc<F>(Poly<F>(base, {base.from_int(n)}));
}
template <class F>
RatFunc<F> RatFuncField<F>::variable() const {
    return RatFunc<F>(Poly<F>(base, {base.zero(), base.one()}));
}

template <class F>
std::optional<std::uint64_t> in_prime_subfield(const RatFunc<F>& x) {
    if (!x.den_is_one() || x.num.degree() > 0) return std::nullopt;
    if (x.num.is_zero()) return 0;
    return in_prime_subfield(x.num.c[0]);
}

// p-th root of an element of F(t) that lies in F(t^p) with p-th-power
// coefficients; nullopt otherwise.
template <class F>
std::optional<RatFunc<F>> frobenius_root(const RatFunc<F>& x) {
    auto root_poly = [](const Poly<F>& f, std::uint64_t p) -> std::optional<Poly<F>> {
        Poly<F> r(f.field());
        if (f.is_zero()) return r;
        r.c.assign(static_cast<std::size_t>(f.degree() / static_cast<int>(p)) + 1,
                   f.field().zero());
        for (std::size_t i = 0; i < f.c.size(); ++i) {
            if (f.c[i].is_zero()) continue;
            if (i % p != 0) return std::nullopt;
            auto cr = frobenius_root(f.c[i]);
            if (!cr) return std::nullopt;
            r.c[i / p] = *cr;
        }
        r.trim();
        return r;
    };
    std::uint64_t p = x.field().characteristic();
    auto n = root_poly(x.num, p);
    auto d = root_poly(x.den, p);
    if (!n || !d) return std::nullopt;
    return RatFunc<F>(std::move(*n), std::move(*d));
}

template <class F>
std::size_t size_metric(const RatFunc<F>& x) {
    return static_cast<std::size_t>(2 + x.num.degree() + x.den.degree());
}

}  // namespace pcurv
