#pragma once

#include <cassert>
#include <cstdint>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "poly.hpp"

namespace pcurv {

template <class F>
struct AlgExt;

template <class F>
struct AlgExtCtx {
    Poly<F> modulus;                // monic, degree k >= 2, irreducible over F
    std::vector<std::vector<F>> red;  // t^(k+i) mod modulus, i = 0..k-2

    explicit AlgExtCtx(Poly<F> m) : modulus(std::move(m)) {
        if (modulus.degree() < 2 || !(modulus.lc() == modulus.field().one()))
            throw Error("AlgExt: modulus must be monic of degree >= 2");
        const auto k = static_cast<std::size_t>(modulus.degree());
        const auto& fld = modulus.field();
        std::vector<F> cur(k, fld.zero());
        for (std::size_t i = 0; i < k; ++i) cur[i] = -modulus.c[i];  // t^k
        red.push_back(cur);
        for (std::size_t step = 1; step + 1 < k; ++step) {
            std::vector<F> nxt(k, fld.zero());
            // multiply cur by t, folding the overflow through t^k
            F top = cur[k - 1];
            for (std::size_t i = k - 1; i > 0; --i) nxt[i] = cur[i - 1];
            nxt[0] = fld.zero();
            if (!top.is_zero())
                for (std::size_t i = 0; i < k; ++i) nxt[i] += top * red[0][i];
            red.push_back(nxt);
            cur = std::move(nxt);
        }
    }

    std::size_t deg() const { return static_cast<std::size_t>(modulus.degree()); }
};

template <class F>
struct AlgExtField {
    std::shared_ptr<const AlgExtCtx<F>> ctx;

    AlgExtField() = default;
    explicit AlgExtField(Poly<F> modulus)
        : ctx(std::make_shared<AlgExtCtx<F>>(std::move(modulus))) {}
    explicit AlgExtField(std::shared_ptr<const AlgExtCtx<F>> context) : ctx(std::move(context)) {}

    std::uint64_t characteristic() const { return ctx->modulus.field().characteristic(); }
    bool finite() const { return ctx->modulus.field().finite(); }
    std::uint64_t order() const {
        std::uint64_t q = 1;
        for (std::size_t i = 0; i < ctx->deg(); ++i) q *= ctx->modulus.field().order();
        return q;
    }
    bool operator==(const AlgExtField& o) const {
        if (ctx == o.ctx) return true;
        return ctx && o.ctx && ctx->modulus == o.ctx->modulus;
    }
    bool operator!=(const AlgExtField& o) const { return !(*this == o); }

    AlgExt<F> zero() const;
    AlgExt<F> one() const;
    AlgExt<F> from_int(std::int64_t n) const;
    AlgExt<F> from_base(const F& x) const;
    AlgExt<F> generator() const;
    AlgExt<F> element(std::uint64_t i) const;  // finite base only
};

// F[t]/(modulus): coefficient vector of fixed length k = deg(modulus).
template <class F>
struct AlgExt {
    using Field = AlgExtField<F>;

    std::shared_ptr<const AlgExtCtx<F>> ctx;
    std::vector<F> c;

    AlgExt() = default;
    AlgExt(std::shared_ptr<const AlgExtCtx<F>> context, std::vector<F> coeffs)
        : ctx(std::move(context)), c(std::move(coeffs)) {
        assert(c.size() == ctx->deg());
    }

    Field field() const { return Field{ctx}; }
    bool is_zero() const {
        for (const auto& x : c)
            if (!x.is_zero()) return false;
        return true;
    }
    bool operator==(const AlgExt& o) const { return c == o.c; }
    bool operator!=(const AlgExt& o) const { return !(*this == o); }

    AlgExt operator+(const AlgExt& o) const {
        AlgExt r = *this;
        for (std::size_t i = 0; i < c.size(); ++i) r.c[i] += o.c[i];
        return r;
    }
    AlgExt operator-(const AlgExt& o) const {
        AlgExt r = *this;
        for (std::size_t i = 0; i < c.size(); ++i) r.c[i] -= o.c[i];
        return r;
    }
    AlgExt operator-() const {
        AlgExt r = *this;
        for (auto& x : r.c) x = -x;
        return r;
    }
    AlgExt operator*(const AlgExt& o) const {
        const std::size_t k = c.size();
        const auto& fld = ctx->modulus.field();
        std::vector<F> full(2 * k - 1, fld.zero());
        for (std::size_t i = 0; i < k; ++i) {
            if (c[i].is_zero()) continue;
            for (std::size_t j = 0; j < k; ++j) full[i + j] += c[i] * o.c[j];
        }
        std::vector<F> out(full.begin(), full.begin() + static_cast<long>(k));
        for (std::size_t i = k; i < full.size(); ++i) {
            if (full[i].is_zero()) continue;
            const auto& row = ctx->red[i - k];
            for (std::size_t j = 0; j < k; ++j) out[j] += full[i] * row[j];
        }
        return AlgExt{ctx, std::move(out)};
    }
    AlgExt inv() const {
        if (is_zero()) throw Error("AlgExt: division by zero");
        const auto& fld = ctx->modulus.field();
        // extended Euclid in F[t] against the modulus
        Poly<F> a(fld, c), b = ctx->modulus;
        Poly<F> s0(fld, {fld.one()}), s1(fld);
        while (!b.is_zero()) {
            auto [q, r] = divmod(a, b);
            Poly<F> s2 = s0 - q * s1;
            a = std::move(b);
            b = std::move(r);
            s0 = std::move(s1);
            s1 = std::move(s2);
        }
        if (a.degree() != 0)
            throw Error("AlgExt: modulus not irreducible (zero divisor found)");
        Poly<F> invp = s0 * a.c[0].inv();
        std::vector<F> out(c.size(), fld.zero());
        for (std::size_t i = 0; i < invp.c.size(); ++i) out[i] = invp.c[i];
        return AlgExt{ctx, std::move(out)};
    }
    AlgExt operator/(const AlgExt& o) const { return *this * o.inv(); }
    AlgExt& operator+=(const AlgExt& o) { return *this = *this + o; }
    AlgExt& operator-=(const AlgExt& o) { return *this = *this - o; }
    AlgExt& operator*=(const AlgExt& o) { return *this = *this * o; }
    AlgExt& operator/=(const AlgExt& o) { return *this = *this / o; }

    AlgExt pow(std::uint64_t e) const {
        AlgExt r = field().one();
        AlgExt b = *this;
        while (e) {
            if (e & 1) r = r * b;
            if (e >>= 1) b = b * b;
        }
        return r;
    }
};

template <class F>
AlgExt<F> AlgExtField<F>::zero() const {
    return AlgExt<F>{ctx, std::vector<F>(ctx->deg(), ctx->modulus.field().zero())};
}
template <class F>
AlgExt<F> AlgExtField<F>::one() const {
    auto r = zero();
    r.c[0] = ctx->modulus.field().one();
    return r;
}
template <class F>
AlgExt<F> AlgExtField<F>::from_int(std::int64_t n) const {
    auto r = zero();
    r.c[0] = ctx->modulus.field().from_int(n);
    return r;
}
template <class F>
AlgExt<F> AlgExtField<F>::from_base(const F& x) const {
    auto r = zero();
    r.c[0] = x;
    return r;
}
template <class F>
AlgExt<F> AlgExtField<F>::generator() const {
    auto r = zero();
    r.c[1] = ctx->modulus.field().one();
    return r;
}
template <class F>
AlgExt<F> AlgExtField<F>::element(std::uint64_t i) const {
    auto r = zero();
    std::uint64_t q = ctx->modulus.field().order();
    for (std::size_t j = 0; j < ctx->deg(); ++j) {
        r.c[j] = ctx->modulus.field().element(i % q);
        i /= q;
    }
    return r;
}

template <class F>
std::optional<std::uint64_t> in_prime_subfield(const AlgExt<F>& x) {
    for (std::size_t i = 1; i < x.c.size(); ++i)
        if (!x.c[i].is_zero()) return std::nullopt;
    return in_prime_subfield(x.c[0]);
}

template <class F>
std::size_t size_metric(const AlgExt<F>& x) {
    std::size_t s = 1;
    for (const auto& e : x.c) s += size_metric(e);
    return s;
}

// p-th root in F[t]/(m). Solving sum_i y_i (t^p)^i = x over the base field
// gives y_i = z_i^p for the candidate root z; the final check makes the
// routine self-verifying.
template <class F>
std::optional<AlgExt<F>> frobenius_root(const AlgExt<F>& x) {
    const std::size_t k = x.c.size();
    const auto fld = x.field();
    const std::uint64_t p = fld.characteristic();
    AlgExt<F> s = fld.generator().pow(p);
    std::vector<AlgExt<F>> cols;
    AlgExt<F> cur = fld.one();
    for (std::size_t i = 0; i < k; ++i) {
        cols.push_back(cur);
        if (i + 1 < k) cur = cur * s;
    }
    const auto& base = x.ctx->modulus.field();
    std::vector<std::vector<F>> m(k, std::vector<F>(k + 1, base.zero()));
    for (std::size_t r = 0; r < k; ++r) {
        for (std::size_t i = 0; i < k; ++i) m[r][i] = cols[i].c[r];
        m[r][k] = x.c[r];
    }
    std::size_t row = 0;
    std::vector<int> pivot_of_col(k, -1);
    for (std::size_t col = 0; col < k && row < k; ++col) {
        std::size_t pr = row;
        while (pr < k && m[pr][col].is_zero()) ++pr;
        if (pr == k) continue;
        std::swap(m[pr], m[row]);
        F pinv = m[row][col].inv();
        for (std::size_t j = col; j <= k; ++j) m[row][j] = m[row][j] * pinv;
        for (std::size_t i = 0; i < k; ++i) {
            if (i == row || m[i][col].is_zero()) continue;
            F f = m[i][col];
            for (std::size_t j = col; j <= k; ++j) m[i][j] = m[i][j] - f * m[row][j];
        }
        pivot_of_col[col] = static_cast<int>(row);
        ++row;
    }
    for (std::size_t i = row; i < k; ++i)
        if (!m[i][k].is_zero()) return std::nullopt;
    std::vector<F> z(k, base.zero());
    for (std::size_t col = 0; col < k; ++col) {
        F y = pivot_of_col[col] >= 0 ? m[static_cast<std::size_t>(pivot_of_col[col])][k]
                                     : base.zero();
        auto zi = frobenius_root(y);
        if (!zi) return std::nullopt;
        z[col] = *zi;
    }
    AlgExt<F> out{x.ctx, std::move(z)};
    if (!(out.pow(p) == x)) return std::nullopt;
    return out;
}

// Deterministic search for a monic irreducible polynomial of degree k over a
// finite field, by Rabin's test.
template <class F>
Poly<F> find_irreducible(const typename F::Field& fld, std::size_t k) {
    if (k < 2) throw Error("find_irreducible: degree must be >= 2");
    auto powmod_x = [&](const Poly<F>& f, std::uint64_t q, std::uint64_t e) {
        // x^(q^e) mod f by iterated q-power
        Poly<F> x(fld, {fld.zero(), fld.one()});
        Poly<F> r = x;
        for (std::uint64_t i = 0; i < e; ++i) {
            // r -> r^q mod f
            Poly<F> acc(fld, {fld.one()});
            Poly<F> b = r;
            std::uint64_t ee = q;
            while (ee) {
                if (ee & 1) acc = (acc * b) % f;
                if (ee >>= 1) b = (b * b) % f;
            }
            r = acc;
        }
        return r;
    };
    std::uint64_t q = fld.order();
    std::vector<std::uint64_t> prime_divs;
    {
        std::uint64_t m = k;
        for (std::uint64_t d = 2; d * d <= m; ++d)
            while (m % d == 0) {
                if (prime_divs.empty() || prime_divs.back() != d) prime_divs.push_back(d);
                m /= d;
            }
        if (m > 1) prime_divs.push_back(m);
    }
    Poly<F> x(fld, {fld.zero(), fld.one()});
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < k; ++i) {
        if (total > (1ull << 40)) throw Error("find_irreducible: search space too large");
        total *= q;
    }
    for (std::uint64_t idx = 0; idx < total; ++idx) {
        std::vector<F> coeffs(k + 1, fld.zero());
        std::uint64_t t = idx;
        for (std::size_t j = 0; j < k; ++j) {
            coeffs[j] = fld.element(t % q);
            t /= q;
        }
        coeffs[k] = fld.one();
        Poly<F> f(fld, std::move(coeffs));
        if (f.degree() != static_cast<int>(k)) continue;
        if (!((powmod_x(f, q, k) - x) % f).is_zero()) continue;
        bool ok = true;
        for (auto pd : prime_divs) {
            Poly<F> g = gcd(powmod_x(f, q, k / pd) - x, f);
            if (g.degree() != 0) {
                ok = false;
                break;
            }
        }
        if (ok) return f;
    }
    throw Error("find_irreducible: no irreducible polynomial found");
}

}  // namespace pcurv
