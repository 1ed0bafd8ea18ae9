#pragma once

#include <cassert>
#include <cstdint>
#include <optional>

#include "errors.hpp"

namespace pcurv {
namespace detail {

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

inline std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

}  // namespace detail

struct Fp;

// Prime field F_p with the (odd) modulus carried at runtime.
struct FpField {
    std::uint64_t p = 0;

    FpField() = default;
    explicit FpField(std::uint64_t prime) : p(prime) {
        if (prime == 2 || !detail::is_prime(prime))
            throw Error("FpField: modulus must be an odd prime");
    }

    std::uint64_t characteristic() const { return p; }
    std::uint64_t order() const { return p; }
    static constexpr bool finite() { return true; }
    bool operator==(const FpField& o) const { return p == o.p; }
    bool operator!=(const FpField& o) const { return p != o.p; }

    Fp zero() const;
    Fp one() const;
    Fp from_int(std::int64_t n) const;
    Fp element(std::uint64_t i) const;
};

struct Fp {
    using Field = FpField;

    std::uint64_t v = 0;
    std::uint64_t p = 0;

    Fp() = default;
    Fp(std::uint64_t value, std::uint64_t prime) : v(value % prime), p(prime) {}

    Field field() const { return FpField{p}; }
    bool is_zero() const { return v == 0; }
    bool operator==(const Fp& o) const { return v == o.v && p == o.p; }
    bool operator!=(const Fp& o) const { return !(*this == o); }

    Fp operator+(const Fp& o) const {
        assert(p == o.p);
        std::uint64_t s = v + o.v;
        if (s >= p) s -= p;
        return Fp{s, p};
    }
    Fp operator-(const Fp& o) const {
        assert(p == o.p);
        return Fp{v >= o.v ? v - o.v : v + p - o.v, p};
    }
    Fp operator-() const { return Fp{v == 0 ? 0 : p - v, p}; }
    Fp operator*(const Fp& o) const {
        assert(p == o.p);
        return Fp{detail::mulmod(v, o.v, p), p};
    }
    Fp inv() const {
        if (v == 0) throw Error("Fp: division by zero");
        return Fp{detail::powmod(v, p - 2, p), p};
    }
    Fp operator/(const Fp& o) const { return *this * o.inv(); }
    Fp& operator+=(const Fp& o) { return *this = *this + o; }
    Fp& operator-=(const Fp& o) { return *this = *this - o; }
    Fp& operator*=(const Fp& o) { return *this = *this * o; }
    Fp& operator/=(const Fp& o) { return *this = *this / o; }

    Fp pow(std::uint64_t e) const { return Fp{detail::powmod(v, e, p), p}; }
};

inline Fp FpField::zero() const { return Fp{0, p}; }
inline Fp FpField::one() const { return Fp{1, p}; }
inline Fp FpField::from_int(std::int64_t n) const {
    std::int64_t m = n % static_cast<std::int64_t>(p);
    if (m < 0) m += static_cast<std::int64_t>(p);
    return Fp{static_cast<std::uint64_t>(m), p};
}
inline Fp FpField::element(std::uint64_t i) const { return Fp{i % p, p}; }

inline std::optional<std::uint64_t> in_prime_subfield(const Fp& x) { return x.v; }
inline std::optional<Fp> frobenius_root(const Fp& x) { return x; }

// Rough size of an element, used to pick small pivots during elimination.
inline std::size_t size_metric(const Fp&) { return 1; }

}  // namespace pcurv
