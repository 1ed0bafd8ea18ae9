#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <pcurv/pcurvature.hpp>

#include <random>

using namespace pcurv;

namespace {

FuchsianOperator<Fp> gauss_operator(std::uint64_t p) {
    FpField f(p);
    return make_normalized<Fp>(f, p, {f.zero(), f.one()},
                               std::vector<std::uint64_t>(3, 0), (p - 1) / 2, {});
}

FuchsianOperator<RatFunc<Fp>> p7_family(const RatFunc<Fp>& beta) {
    FpField f7(7);
    RatFuncField<Fp> lamf(f7);
    auto lam = lamf.variable();
    return make_normalized<RatFunc<Fp>>(lamf, 7, {lamf.zero(), lamf.one(), lam},
                                        {5, 5, 5, 5}, 2, {beta});
}

using LamExt = AlgExt<RatFunc<Fp>>;

FuchsianOperator<LamExt> p7_conic_family() {
    FpField f7(7);
    RatFuncField<Fp> lamf(f7);
    auto lam = lamf.variable();
    Poly<RatFunc<Fp>> mod(lamf,
                          {(lam * lam + lamf.from_int(3) * lam + lamf.one()) * lamf.from_int(3),
                           (lamf.one() + lam) * lamf.from_int(3), lamf.one()});
    AlgExtField<RatFunc<Fp>> ext(mod);
    std::vector<LamExt> sing{ext.zero(), ext.one(), ext.from_base(lam)};
    return make_normalized<LamExt>(ext, 7, sing, {5, 5, 5, 5}, 2, {ext.generator()});
}

FuchsianOperator<LamExt> p13_spike_family() {
    FpField f13(13);
    RatFuncField<Fp> lamf(f13);
    auto lam = lamf.variable();
    Poly<RatFunc<Fp>> mod(lamf, {lam, (lamf.one() + lam) * lamf.from_int(7), lamf.one()});
    AlgExtField<RatFunc<Fp>> ext(mod);
    std::vector<LamExt> sing{ext.zero(), ext.one(), ext.from_base(lam)};
    return make_normalized<LamExt>(ext, 13, sing, {11, 11, 11, 10}, 1, {ext.generator()});
}

}  // namespace

TEST_CASE("q polynomial") {
    auto G = gauss_operator(7);
    FpField f7(7);
    CHECK(q_polynomial(G) == make_poly<Fp>(f7, {0, 1}) * make_poly<Fp>(f7, {-1, 1}));

    RatFuncField<Fp> lamf(f7);
    auto lam = lamf.variable();
    auto L = p7_family(lamf.zero());
    auto q = q_polynomial(L);
    auto p0 = poly_from_roots<RatFunc<Fp>>(lamf, {lamf.zero(), lamf.one(), lam});
    CHECK(q == p0.pow(3));  // [1 - 5] = 3

    // p = 13 with alpha' = 11 at the finite points: [1 - 11] = 3 as well
    FpField f13(13);
    RatFuncField<Fp> lamf13(f13);
    auto lam13 = lamf13.variable();
    auto L13 = make_normalized<RatFunc<Fp>>(lamf13, 13, {lamf13.zero(), lamf13.one(), lam13},
                                            {11, 11, 11, 10}, 1, {lamf13.zero()});
    auto q13 = q_polynomial(L13);
    auto p013 = poly_from_roots<RatFunc<Fp>>(lamf13, {lamf13.zero(), lamf13.one(), lam13});
    CHECK(q13 == p013.pow(3));

    // a corrupted p1 (residues no longer in F_p) is rejected
    auto bad = L;
    bad.p1 = bad.p1 * RatFunc<RatFunc<Fp>>(Poly<RatFunc<Fp>>(lamf, {lam}));
    CHECK_THROWS_AS(q_polynomial(bad), P1MismatchQ);
}

TEST_CASE("classification of the p = 7 family") {
    FpField f7(7);
    RatFuncField<Fp> lamf(f7);
    auto lam = lamf.variable();
    for (const auto& beta : {lamf.zero(), lamf.from_int(-1), -lam}) {
        auto rep = classify(p7_family(beta));
        CHECK(rep.cls == PClass::NilpotentNonzero);
        CHECK(rep.solutions.minimal->second == 2);
        CHECK(!rep.indicator->is_zero());
    }
    auto zero_rep = classify(p7_conic_family());
    CHECK(zero_rep.cls == PClass::Zero);
    CHECK(zero_rep.indicator->is_zero());
    CHECK(zero_rep.solutions.second->second == 9);

    auto none_rep = classify(p7_family(lam + lamf.from_int(3)));
    CHECK(none_rep.cls == PClass::NotNilpotent);
}

TEST_CASE("indicator structure for the p = 13 spike family") {
    auto L = p13_spike_family();
    auto rep = classify(L);
    CHECK(rep.cls == PClass::NilpotentNonzero);
    REQUIRE(rep.indicator.has_value());
    const auto& ind = *rep.indicator;
    CHECK(!ind.is_zero());
    const auto& ext = L.fld;
    // denominator (x(x-1)(x-lambda))^13: all three singularities with
    // exponent exactly 13
    Poly<LamExt> den = ind.den;
    for (const auto& xi : L.finite_singularities) {
        auto [e, rest] = order_at(den, xi);
        CHECK(e == 13);
        den = rest;
    }
    CHECK(den.degree() == 0);
    // exactly one zero, of order 13, away from the singularities
    auto shape = logarithmic_test(ind, L.finite_singularities, 13);
    REQUIRE(shape.has_value());
    CHECK(shape->nu_at_sing == std::vector<int>{0, 0, 0});
    CHECK(shape->spike_frobenius.degree() == 1);
    Poly<LamExt> num = ind.num;
    CHECK(num.degree() == 13);
    // the spike is not at a singularity
    auto sroot13 = -shape->spike_frobenius.c[0];  // x^13 at the spike
    for (const auto& xi : L.finite_singularities) CHECK(!(xi.pow(13) == sroot13));
    (void)ext;
}

TEST_CASE("logarithmic test on the p = 7 family") {
    FpField f7(7);
    RatFuncField<Fp> lamf(f7);
    auto L = p7_family(lamf.zero());
    auto rep = classify(L);
    auto shape = logarithmic_test(*rep.indicator, L.finite_singularities, 7);
    REQUIRE(shape.has_value());
    // no spikes, nu = 0 everywhere, denominator (x(x-1)(x-lambda))^7
    CHECK(shape->nu_at_sing == std::vector<int>{0, 0, 0});
    CHECK(shape->spike_frobenius.degree() == 0);
    CHECK(rep.indicator->num.degree() == 0);
    auto lam = lamf.variable();
    auto p0 = poly_from_roots<RatFunc<Fp>>(lamf, {lamf.zero(), lamf.one(), lam});
    CHECK(rep.indicator->den == p0.pow(7));

    // exact case: nullopt
    auto zrep = classify(p7_conic_family());
    CHECK(!logarithmic_test(*zrep.indicator, p7_conic_family().finite_singularities, 7)
               .has_value());
}

TEST_CASE("classification is gauge invariant and respects equal exponents") {
    std::mt19937_64 rng(2024);
    struct Cfg {
        std::uint64_t p;
        int r;
    };
    for (auto [p, r] : {Cfg{5, 4}, Cfg{7, 4}, Cfg{7, 5}}) {
        FpField f(p);
        int done = 0;
        while (done < 12) {
            // distinct singularities 0, 1, extra random points
            std::vector<Fp> sing{f.zero(), f.one()};
            while (static_cast<int>(sing.size()) < r - 1) {
                Fp c = f.element(rng() % p);
                bool dup = false;
                for (const auto& s : sing)
                    if (s == c) dup = true;
                if (!dup) sing.push_back(c);
            }
            std::vector<std::uint64_t> alpha(static_cast<std::size_t>(r));
            for (auto& a : alpha) a = rng() % p;
            std::uint64_t asum = 0;
            for (auto a : alpha) asum = (asum + a) % p;
            std::uint64_t d = detail::mulmod((asum + 2 * p - static_cast<std::uint64_t>(r - 2)) % p,
                                             detail::powmod(2, p - 2, p), p);
            std::vector<Fp> beta;
            for (int i = 0; i + 3 < r; ++i) beta.push_back(f.element(rng() % p));
            auto L = make_normalized<Fp>(f, p, sing, alpha, d, beta);
            auto rep = classify(L);
            std::vector<std::uint64_t> mu;
            for (int i = 0; i + 1 < r; ++i) mu.push_back(rng() % p);
            auto rep2 = classify(gauge_transform(L, mu));
            CHECK(rep.cls == rep2.cls);
            // riemann holds and is preserved
            CHECK(riemann_check(L));
            // equal exponents at some singularity force nonzero p-curvature
            bool has_equal = false;
            for (const auto& e : local_exponents(L))
                if (e.in_prime_field && e.alpha == e.alpha_prime) has_equal = true;
            if (has_equal && rep.cls != PClass::NotNilpotent)
                CHECK(rep.cls == PClass::NilpotentNonzero);
            ++done;
        }
    }
}

TEST_CASE("indicator reduction only keeps nu = 0 singularities in the denominator") {
    // for the gauss operator the indicator denominator is (t(t-1))^p
    auto G = gauss_operator(7);
    auto rep = classify(G);
    CHECK(rep.cls == PClass::NilpotentNonzero);
    FpField f7(7);
    auto p0 = make_poly<Fp>(f7, {0, 1}) * make_poly<Fp>(f7, {-1, 1});
    CHECK(rep.indicator->den == p0.pow(7));
    auto shape = logarithmic_test(*rep.indicator, G.finite_singularities, 7);
    REQUIRE(shape.has_value());
    CHECK(shape->spike_frobenius.degree() == 0);
}
