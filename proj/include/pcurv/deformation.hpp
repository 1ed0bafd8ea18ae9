#pragma once

#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pcurvature.hpp"
#include "util.hpp"

namespace pcurv {

enum class PointKind { Singular, Supersingular, Spike };

inline const char* to_string(PointKind k) {
    switch (k) {
        case PointKind::Singular: return "singular";
        case PointKind::Supersingular: return "supersingular";
        default: return "spike";
    }
}

template <class K>
struct CriticalPoint {
    enum class Loc { Finite, Infinity, Placeholder, Abstract };

    Loc loc = Loc::Abstract;
    std::optional<K> point;           // when Finite
    std::optional<Poly<K>> minpoly;   // when Placeholder; in the Frobenius
                                      // image variable y = x^p unless noted
    int count = 1;                    // geometric points represented
    PointKind kind = PointKind::Singular;
    int a = 0;                        // 0 <= a < p-1
    int nu = 0;                       // nu >= 0
    long long h = 0;                  // a + (p-1) nu = (p-1) sigma
    long long m = 1;                  // (p-1)/gcd(a, p-1)
    long long n_x = 0;                // strength contribution
    int epsilon = 0;                  // versal-ring reading, 0 <= j < nu
    int epsilon_literal = 0;          // literal range 0 <= j <= nu
    long long n_x_ord = 0;            // ord-formula value (diagnostic only)

    Frac sigma(std::uint64_t p) const { return Frac(h, static_cast<long long>(p) - 1); }
};

namespace detail {

inline int epsilon_count(int a, int nu, std::uint64_t p, bool include_boundary) {
    int e = 0;
    for (int j = 0; j <= nu - (include_boundary ? 0 : 1); ++j)
        if ((j - a) % static_cast<int>(p) == 0) ++e;
    return e;
}

}  // namespace detail

template <class K>
struct DeformationDatum {
    std::uint64_t p = 0;
    int r = 0;  // number of singularities, x_r = infinity included
    std::vector<CriticalPoint<K>> points;  // singularities (infinity last among
                                           // them), then spikes
    std::optional<Poly<K>> u;  // monic, simple zeros = the supersingular points
    std::optional<Poly<K>> Q;
    int d = 0;  // deg u = number of supersingular points
    long long strength_n = 0;
    std::optional<K> eps_pm1;
    bool rastdef_readings_differ = false;

    int spike_count() const {
        int s = 0;
        for (const auto& cp : points)
            if (cp.kind == PointKind::Spike) s += cp.count;
        return s;
    }
    std::vector<Frac> signature() const {
        std::vector<Frac> sig;
        for (const auto& cp : points)
            for (int i = 0; i < cp.count; ++i) sig.push_back(cp.sigma(p));
        return sig;
    }
};

namespace detail {

template <class K>
CriticalPoint<K> make_point(std::uint64_t p, int a, int nu, PointKind kind) {
    if (a < 0 || a >= static_cast<int>(p) - 1) throw ShapeError("invariant a out of range");
    if (nu < 0) throw ShapeError("invariant nu negative");
    CriticalPoint<K> cp;
    cp.kind = kind;
    cp.a = a;
    cp.nu = nu;
    cp.h = a + (static_cast<long long>(p) - 1) * nu;
    cp.m = (static_cast<long long>(p) - 1) / std::gcd<long long>(a, static_cast<long long>(p) - 1);
    switch (kind) {
        case PointKind::Supersingular: cp.n_x = 0; break;
        case PointKind::Singular: cp.n_x = cp.h; break;
        case PointKind::Spike: cp.n_x = cp.h - (static_cast<long long>(p) - 1); break;
    }
    cp.epsilon = epsilon_count(a, nu, p, false);
    cp.epsilon_literal = epsilon_count(a, nu, p, true);
    return cp;
}

// sigma = 1 (mod p) as a congruence of fractions with denominator p-1.
inline bool sigma_is_one_mod_p(long long h, std::uint64_t p) {
    return (h - (static_cast<long long>(p) - 1)) % static_cast<long long>(p) == 0;
}

}  // namespace detail

// Extraction of the deformation datum attached to a nilpotent-nonzero pair
// (L, u): nu_i from the vanishing orders of the indicator, a_i from
// a_i = -alpha_i + nu_i (mod p), sigma at infinity from the global relation
// sum(sigma_i) + 2d/(p-1) + sum_spikes(sigma_i - 1) = r - 2.
template <class K>
DeformationDatum<K> extract_datum(const FuchsianOperator<K>& L, const Poly<K>& u,
                                  const PCurvatureReport<K>& rep) {
    const auto& fld = L.fld;
    const std::uint64_t p = L.p;
    const int r = L.r();
    if (rep.cls != PClass::NilpotentNonzero)
        throw Error("extract_datum: operator is not nilpotent-nonzero");
    if (!(u == rep.solutions.minimal->first))
        throw Error("extract_datum: u is not the minimal monic solution");
    for (const auto& xi : L.finite_singularities)
        if (u.eval(xi).is_zero()) throw UMeetsSingularity("u vanishes at a singularity");
    {
        Poly<K> du = u.derivative();
        if (u.degree() > 0 && (du.is_zero() || gcd(u, du).degree() > 0))
            throw UNonSquarefree("u is not squarefree");
    }
    auto shape = logarithmic_test(*rep.indicator, L.finite_singularities, p);
    if (!shape) throw InternalInconsistency("extract_datum: indicator is zero");

    DeformationDatum<K> datum;
    datum.p = p;
    datum.r = r;
    datum.u = u;
    datum.Q = *rep.Q;
    datum.d = std::max(u.degree(), 0);

    // finite singularities
    for (std::size_t i = 0; i + 1 < static_cast<std::size_t>(r); ++i) {
        const auto& e = rep.exponents[i];
        // u does not vanish at x_i, so one local exponent is 0; alpha_i is
        // the other one
        std::uint64_t alpha;
        if (e.alpha == 0)
            alpha = e.alpha_prime;
        else if (e.alpha_prime == 0)
            alpha = e.alpha;
        else
            throw InternalInconsistency("extract_datum: no zero exponent at a singularity");
        int nu = shape->nu_at_sing[i];
        int a = static_cast<int>(
            ((static_cast<std::int64_t>(nu) - static_cast<std::int64_t>(alpha)) %
                 static_cast<std::int64_t>(p) +
             static_cast<std::int64_t>(p)) %
            static_cast<std::int64_t>(p));
        if (a == static_cast<int>(p) - 1)
            throw ShapeError("extract_datum: sigma = 1 (mod p) at a singularity");
        auto cp = detail::make_point<K>(p, a, nu, PointKind::Singular);
        cp.loc = CriticalPoint<K>::Loc::Finite;
        cp.point = L.finite_singularities[i];
        cp.n_x_ord = static_cast<long long>(p) * nu;
        datum.points.push_back(std::move(cp));
    }

    // spikes from the deflated leftover of the indicator numerator
    std::vector<CriticalPoint<K>> spikes;
    Poly<K> v = shape->spike_frobenius;
    if (v.degree() > 0) {
        // v is the Frobenius image of the true spike polynomial; recover it
        // coefficientwise when possible
        Poly<K> t(fld);
        t.c.assign(v.c.size(), fld.zero());
        bool rooted = true;
        for (std::size_t i = 0; i < v.c.size(); ++i) {
            auto cr = frobenius_root(v.c[i]);
            if (!cr) {
                rooted = false;
                break;
            }
            t.c[i] = *cr;
        }
        if (rooted) t.trim();
        Poly<K> work = rooted ? t : v;
        for (auto&& [g, mult] : squarefree_decomposition(work)) {
            const int nu = mult + 1;
            const int a = nu - 1;
            auto new_spike = [&](int cnt) {
                auto cp = detail::make_point<K>(p, a, nu, PointKind::Spike);
                cp.count = cnt;
                cp.n_x_ord = static_cast<long long>(p) * (nu - 1);
                return cp;
            };
            Poly<K> residual = g;
            std::vector<K> located;
            try {
                for (auto&& [root, rm] : roots_over<K>(fld, g))
                    for (int j = 0; j < rm; ++j) located.push_back(root);
            } catch (const UnsupportedSearchSpace&) {
            }
            for (const auto& root : located) {
                residual = residual / Poly<K>(fld, {-root, fld.one()});
                auto cp = new_spike(1);
                // without a coefficient root the location is only known as a
                // Frobenius image
                cp.loc = rooted ? CriticalPoint<K>::Loc::Finite
                                : CriticalPoint<K>::Loc::Placeholder;
                cp.point = root;
                spikes.push_back(std::move(cp));
            }
            if (residual.degree() == 1) {
                auto cp = new_spike(1);
                cp.loc = rooted ? CriticalPoint<K>::Loc::Finite
                                : CriticalPoint<K>::Loc::Placeholder;
                cp.point = -(residual.c[0] / residual.c[1]);
                spikes.push_back(std::move(cp));
            } else if (residual.degree() > 1) {
                auto cp = new_spike(residual.degree());
                cp.loc = CriticalPoint<K>::Loc::Placeholder;
                cp.minpoly = residual;
                spikes.push_back(std::move(cp));
            }
        }
    }

    // sigma at infinity from the global relation, in units of h = (p-1)sigma
    long long hsum = 0;
    for (const auto& cp : datum.points) hsum += cp.h * cp.count;
    long long hsp = 0;
    for (const auto& cp : spikes)
        hsp += (cp.h - (static_cast<long long>(p) - 1)) * cp.count;
    long long hinf = static_cast<long long>(r - 2) * (static_cast<long long>(p) - 1) -
                     2 * datum.d - hsum - hsp;
    if (hinf < 0) throw ShapeError("extract_datum: negative sigma at infinity");
    {
        int a = static_cast<int>(hinf % (static_cast<long long>(p) - 1));
        int nu = static_cast<int>(hinf / (static_cast<long long>(p) - 1));
        auto cp = detail::make_point<K>(p, a, nu, PointKind::Singular);
        cp.loc = CriticalPoint<K>::Loc::Infinity;
        // consistency with the exponents at infinity: the pair there is
        // (-d, -d+alpha_r) with -d matching deg(u), so alpha_r is the
        // difference of the two exponents, and sigma_r = alpha_r (mod p)
        const auto& e = rep.exponents.back();
        std::uint64_t mdeg = (p - static_cast<std::uint64_t>(u.degree()) % p) % p;
        std::uint64_t alpha_r;
        if (e.alpha == mdeg)
            alpha_r = (e.alpha_prime + p - e.alpha) % p;
        else if (e.alpha_prime == mdeg)
            alpha_r = (e.alpha + p - e.alpha_prime) % p;
        else
            throw InternalInconsistency("extract_datum: deg(u) does not match an exponent at infinity");
        long long want = ((static_cast<long long>(nu) - static_cast<long long>(alpha_r)) %
                              static_cast<long long>(p) +
                          static_cast<long long>(p)) %
                         static_cast<long long>(p);
        if (want != a % static_cast<long long>(p))
            throw InternalInconsistency("extract_datum: sigma at infinity does not match alpha_r");
        datum.points.push_back(std::move(cp));
    }
    for (auto& cp : spikes) datum.points.push_back(std::move(cp));

    datum.strength_n = static_cast<long long>(r - 2) * (static_cast<long long>(p) - 1) -
                       2 * datum.d;
    datum.eps_pm1 = shape->eps_pm1;
    for (const auto& cp : datum.points)
        if (cp.epsilon != cp.epsilon_literal) datum.rastdef_readings_differ = true;
    return datum;
}

template <class K>
DeformationDatum<K> extract_datum(const FuchsianOperator<K>& L, const Poly<K>& u) {
    return extract_datum(L, u, classify(L));
}

template <class K>
DeformationDatum<K> extract_datum(const FuchsianOperator<K>& L) {
    auto rep = classify(L);
    if (rep.cls != PClass::NilpotentNonzero)
        throw Error("extract_datum: operator is not nilpotent-nonzero");
    return extract_datum(L, rep.solutions.minimal->first, rep);
}

// Strength: sum of the local contributions, checked against
// (r-2)(p-1) - 2d.
template <class K>
long long strength(const DeformationDatum<K>& datum) {
    long long n = 0;
    for (const auto& cp : datum.points) n += cp.n_x * cp.count;
    long long alt = static_cast<long long>(datum.r - 2) *
                        (static_cast<long long>(datum.p) - 1) -
                    2 * datum.d;
    if (n != alt) throw StrengthMismatch("strength: local sum disagrees with (r-2)(p-1)-2d");
    return n;
}

// All alpha_i (as residues) read back from sigma_i = alpha_i (mod p) at the
// singularities.
template <class K>
std::vector<std::uint64_t> singular_alpha(const DeformationDatum<K>& datum) {
    std::vector<std::uint64_t> out;
    const auto p = static_cast<long long>(datum.p);
    for (const auto& cp : datum.points) {
        if (cp.kind != PointKind::Singular) continue;
        long long s = ((cp.nu - cp.a) % p + p) % p;
        for (int i = 0; i < cp.count; ++i) out.push_back(static_cast<std::uint64_t>(s));
    }
    return out;
}

template <class K>
std::vector<std::string> validate_datum(const DeformationDatum<K>& datum) {
    std::vector<std::string> bad;
    const long long p = static_cast<long long>(datum.p);
    const long long pm1 = p - 1;
    long long n = 0;
    long long global = 0;  // sum of (sigma-1) in units of 1/(p-1), all critical points
    bool logarithmic = true;
    long long lower_bound = 0;
    long long alpha_sum = 0;
    for (const auto& cp : datum.points) {
        if (cp.a < 0 || cp.a >= pm1) bad.push_back("a out of [0, p-1)");
        if (cp.h < 0) bad.push_back("negative sigma");
        if (pm1 % cp.m != 0) bad.push_back("m does not divide p-1");
        // h/m in lowest terms: gcd(h_red, m) must be 1
        if (cp.h != 0) {
            long long g0 = std::gcd(cp.h, pm1);
            if (std::gcd(cp.h / g0, cp.m) != 1) bad.push_back("h and m not coprime");
            if ((cp.h / g0) % p == 0) bad.push_back("p divides h");
        }
        bool is_one_mod_p = detail::sigma_is_one_mod_p(cp.h, datum.p);
        switch (cp.kind) {
            case PointKind::Singular:
                if (cp.h == pm1) bad.push_back("sigma = 1 at a critical point");
                if (cp.a == 2 && cp.nu == 1) bad.push_back("supersingular invariants at a singularity");
                if (is_one_mod_p && cp.h != pm1) bad.push_back("spike invariants at a singularity");
                break;
            case PointKind::Spike:
                if (!is_one_mod_p || cp.h == pm1) bad.push_back("spike without sigma = 1 (mod p)");
                if (cp.nu < 2) bad.push_back("spike with nu < 2");
                break;
            case PointKind::Supersingular:
                if (!(cp.a == 2 && cp.nu == 1)) bad.push_back("supersingular point without (a,nu)=(2,1)");
                break;
        }
        n += cp.n_x * cp.count;
        global += (cp.h - pm1) * cp.count;
        if (cp.kind == PointKind::Singular) {
            long long alpha = ((cp.nu - cp.a) % p + p) % p;
            alpha_sum += alpha * cp.count;
            if (alpha != 0) {
                logarithmic = false;
                lower_bound += (p - alpha) * cp.count;
            }
        }
    }
    global += 2 * datum.d;  // supersingular points contribute sigma-1 = 2/(p-1)
    if (global != -2 * pm1) bad.push_back("global sum of (sigma-1) is not -2");
    if (n != static_cast<long long>(datum.r - 2) * pm1 - 2 * datum.d)
        bad.push_back("strength does not equal (r-2)(p-1)-2d");
    if (n % 2 != 0) bad.push_back("n is odd");
    if (((n + alpha_sum) % p + p) % p != 0) bad.push_back("n is not -sum(alpha) (mod p)");
    if (n < lower_bound) bad.push_back("n below sum over alpha_i != 0 of (p-alpha_i)");
    if (logarithmic) {
        if (n % (2 * p) != 0) bad.push_back("logarithmic case: n not 0 (mod 2p)");
        if (datum.r < n / p + 3) bad.push_back("logarithmic case: r < n/p + 3");
    }
    if (datum.u) {
        const auto& u = *datum.u;
        if (u.degree() != datum.d) bad.push_back("deg(u) != d");
        if (u.degree() > 0) {
            Poly<K> du = u.derivative();
            if (du.is_zero() || gcd(u, du).degree() > 0) bad.push_back("u not squarefree");
        }
    }
    return bad;
}

// The datum -> operator direction: u'' + (Q'/Q) u' + p2 u = 0 has a rational
// solution for p2 exactly when u divides (Q u')'; the result must be a
// normalized-form operator.
template <class K>
FuchsianOperator<K> induced_operator(const Poly<K>& u, const Poly<K>& q,
                                     const std::vector<K>& singularities, std::uint64_t p) {
    const auto& fld = u.field();
    const int r = static_cast<int>(singularities.size()) + 1;
    Poly<K> num = q * derivative_iter(u, 2) + q.derivative() * u.derivative();  // (Q u')'
    auto [quo, rem] = divmod(num, u);
    if (!rem.is_zero())
        throw ResidueObstruction("induced_operator: nonzero residue at a supersingular point");
    RatFunc<K> p2(-quo, q);
    Poly<K> p0 = poly_from_roots<K>(fld, singularities);
    RatFunc<K> full = p2 * RatFunc<K>(p0);
    if (!full.is_polynomial())
        throw ShapeError("induced_operator: p2 has a pole outside the singularities");
    Poly<K> P2 = full.num;
    if (P2.degree() > r - 3) throw ShapeError("induced_operator: p2 pole order at infinity");
    std::vector<std::uint64_t> alpha;
    std::uint64_t asum = 0;
    for (std::size_t i = 0; i < singularities.size(); ++i) {
        auto [qi, rest] = order_at(q, singularities[i]);
        std::uint64_t ai = (1 + p - static_cast<std::uint64_t>(qi) % p) % p;
        alpha.push_back(ai);
        asum = (asum + ai) % p;
    }
    const std::uint64_t d = static_cast<std::uint64_t>(std::max(u.degree(), 0));
    std::uint64_t alpha_r =
        ((static_cast<std::uint64_t>(r) - 2) % p + p - asum % p + 2 * (d % p)) % p;
    alpha.push_back(alpha_r);
    K lead = fld.from_int(static_cast<std::int64_t>(d % p)) *
             fld.from_int(static_cast<std::int64_t>(d % p) - static_cast<std::int64_t>(alpha_r));
    if (!(P2.coeff(static_cast<std::size_t>(r - 3)) == lead))
        throw ShapeError("induced_operator: leading coefficient is not d(d-alpha_r)");
    std::vector<K> beta;
    for (int j = 0; j + 3 < r; ++j) beta.push_back(P2.coeff(static_cast<std::size_t>(j)));
    return make_normalized<K>(fld, p, singularities, alpha, d % p, beta);
}

struct KummerEntry {
    std::string location;
    int a = 0;
    long long m = 1;
    int count = 1;
};

// Exponent vector of the Kummer model z^(p-1) = prod (x-x_i)^(a_i) u^2.
template <class K>
std::vector<KummerEntry> kummer_exponents(const DeformationDatum<K>& datum) {
    std::vector<KummerEntry> out;
    for (const auto& cp : datum.points) {
        KummerEntry e;
        e.a = cp.a;
        e.m = cp.m;
        e.count = cp.count;
        e.location = cp.loc == CriticalPoint<K>::Loc::Infinity ? "inf" : "finite";
        out.push_back(e);
    }
    // each supersingular point enters through u^2
    if (datum.d > 0) {
        KummerEntry e;
        e.a = 2;
        e.m = (static_cast<long long>(datum.p) - 1) /
              std::gcd<long long>(2, static_cast<long long>(datum.p) - 1);
        e.count = datum.d;
        e.location = "supersingular";
        out.push_back(e);
    }
    return out;
}

struct LogSpaceDim {
    long long dim = 0;
    long long N = 0;
};

// dim H^0 = |B| - 1 - (sum a_i)/(p-1) over all critical points including the
// supersingular ones; N = (sum a_i)/(p-1) - 1.
template <class K>
LogSpaceDim log_space_dim(const DeformationDatum<K>& datum) {
    long long asum = 2 * datum.d;
    long long bcount = datum.d;
    for (const auto& cp : datum.points) {
        asum += static_cast<long long>(cp.a) * cp.count;
        bcount += cp.count;
    }
    const long long pm1 = static_cast<long long>(datum.p) - 1;
    if (asum % pm1 != 0) throw DivisibilityError("log_space_dim: (p-1) does not divide sum(a_i)");
    LogSpaceDim out;
    out.N = asum / pm1 - 1;
    out.dim = bcount - 1 - asum / pm1;
    return out;
}

// epsilon_i = #{0 <= j <= nu_i - 1 : j = a_i (mod p)} per critical point
// (versal-ring index range); supersingular points all have epsilon = 0.
template <class K>
std::vector<int> epsilon_invariants(const DeformationDatum<K>& datum) {
    if (static_cast<long long>(datum.p) <= datum.r - 2)
        throw HypothesisViolated("epsilon_invariants: needs p > r-2");
    std::vector<int> out;
    for (const auto& cp : datum.points) {
        if (cp.kind == PointKind::Spike && cp.epsilon != 1)
            throw InternalInconsistency("epsilon_invariants: spike with epsilon != 1");
        if (cp.kind == PointKind::Supersingular && cp.epsilon != 0)
            throw InternalInconsistency("epsilon_invariants: supersingular with epsilon != 0");
        out.push_back(cp.epsilon);
    }
    return out;
}

struct DimensionResult {
    long long dim = 0;
    bool maximal = false;
};

// dim = N + sum(epsilon_i); maximal (= r-3) iff nu_i = 0 at singularities and
// nu_i = 2 at spikes.
template <class K>
DimensionResult deformation_dimension(const DeformationDatum<K>& datum) {
    auto ls = log_space_dim(datum);
    auto eps = epsilon_invariants(datum);
    long long dim = ls.N;
    std::size_t i = 0;
    bool pattern = true;
    for (const auto& cp : datum.points) {
        dim += static_cast<long long>(eps[i++]) * cp.count;
        if (cp.kind == PointKind::Singular && cp.nu != 0) pattern = false;
        if (cp.kind == PointKind::Spike && cp.nu != 2) pattern = false;
    }
    DimensionResult out{dim, dim == datum.r - 3};
    if (out.maximal != pattern)
        throw InternalInconsistency("deformation_dimension: maximality criterion mismatch");
    return out;
}

// Synthetic datum from raw (a, nu) pairs at the critical non-supersingular
// points; d is derived from the signature relation.
template <class K>
DeformationDatum<K> make_synthetic_datum(const typename K::Field&, std::uint64_t p,
                                         const std::vector<std::pair<int, int>>& points) {
    DeformationDatum<K> datum;
    datum.p = p;
    const long long pm1 = static_cast<long long>(p) - 1;
    long long sum = 0;  // sum (sigma - 1) in units of 1/(p-1)
    std::vector<CriticalPoint<K>> singular, spikes;
    for (auto [a, nu] : points) {
        long long h = a + pm1 * nu;
        if (h == pm1) throw ShapeError("synthetic datum: sigma = 1 is not critical");
        if (a == 2 && nu == 1)
            throw ShapeError("synthetic datum: supersingular points are counted by d");
        bool spike = detail::sigma_is_one_mod_p(h, p);
        auto cp = detail::make_point<K>(p, a, nu, spike ? PointKind::Spike : PointKind::Singular);
        sum += h - pm1;
        (spike ? spikes : singular).push_back(std::move(cp));
    }
    long long dd = -2 * pm1 - sum;  // 2d from the global relation
    if (dd < 0 || dd % 2 != 0)
        throw ShapeError("synthetic datum: d is not a nonnegative integer");
    datum.d = static_cast<int>(dd / 2);
    datum.r = static_cast<int>(singular.size());
    for (auto& cp : singular) datum.points.push_back(std::move(cp));
    for (auto& cp : spikes) datum.points.push_back(std::move(cp));
    datum.strength_n = static_cast<long long>(datum.r - 2) * pm1 - 2 * datum.d;
    for (const auto& cp : datum.points)
        if (cp.epsilon != cp.epsilon_literal) datum.rastdef_readings_differ = true;
    return datum;
}

}  // namespace pcurv
