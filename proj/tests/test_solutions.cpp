#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <pcurv/solutions.hpp>

using namespace pcurv;

namespace {

FuchsianOperator<Fp> gauss_operator(std::uint64_t p) {
    FpField f(p);
    return make_normalized<Fp>(f, p, {f.zero(), f.one()},
                               std::vector<std::uint64_t>(3, 0), (p - 1) / 2, {});
}

// classical Hasse polynomial sum_i binom((p-1)/2, i)^2 t^i, from integer
// binomials (independent of the kernel solver)
Poly<Fp> hasse_by_binomials(std::uint64_t p) {
    FpField f(p);
    const std::size_t m = (p - 1) / 2;
    std::vector<long long> row(m + 1, 0);
    row[0] = 1;
    for (std::size_t n = 1; n <= m; ++n)
        for (std::size_t i = n; i >= 1; --i) row[i] += row[i - 1];
    std::vector<Fp> c;
    for (std::size_t i = 0; i <= m; ++i) {
        auto b = f.from_int(row[i]);
        c.push_back(b * b);
    }
    return Poly<Fp>(f, std::move(c));
}

// the p = 7 family of operators over F_7(lambda): alpha = (5,5,5,5), d = 2
FuchsianOperator<RatFunc<Fp>> p7_family(const RatFunc<Fp>& beta) {
    FpField f7(7);
    RatFuncField<Fp> lamf(f7);
    auto lam = lamf.variable();
    return make_normalized<RatFunc<Fp>>(lamf, 7, {lamf.zero(), lamf.one(), lam},
                                        {5, 5, 5, 5}, 2, {beta});
}

using LamExt = AlgExt<RatFunc<Fp>>;

// same family with beta a root of the degree-4 existence conic
// 5 beta^2 + beta(1+lambda) + lambda^2 + 3 lambda + 1 = 0
FuchsianOperator<LamExt> p7_conic_family() {
    FpField f7(7);
    RatFuncField<Fp> lamf(f7);
    auto lam = lamf.variable();
    // monicized: beta^2 + 3(1+lambda) beta + 3(lambda^2+3lambda+1)
    Poly<RatFunc<Fp>> mod(lamf, {(lam * lam + lamf.from_int(3) * lam + lamf.one()) * lamf.from_int(3),
                                 (lamf.one() + lam) * lamf.from_int(3), lamf.one()});
    AlgExtField<RatFunc<Fp>> ext(mod);
    std::vector<LamExt> sing{ext.zero(), ext.one(), ext.from_base(lam)};
    return make_normalized<LamExt>(ext, 7, sing, {5, 5, 5, 5}, 2, {ext.generator()});
}

// p = 13 family, alpha = (11,11,11,10), d = 1, beta a root of
// beta^2 + 7(lambda+1) beta + lambda = 0
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

TEST_CASE("admissible degrees") {
    FpField f13(13);
    RatFuncField<Fp> lamf13(f13);
    auto lam13 = lamf13.variable();
    auto L13 = make_normalized<RatFunc<Fp>>(lamf13, 13, {lamf13.zero(), lamf13.one(), lam13},
                                            {11, 11, 11, 10}, 1, {lamf13.zero()});
    auto adm = admissible_degrees(L13, 30);
    for (int n : adm) CHECK((n % 13 == 1 || n % 13 == 4));
    CHECK(adm.count(1));
    CHECK(adm.count(4));
    CHECK(adm.count(14));
    CHECK(!adm.count(2));

    auto L7 = p7_family(RatFunc<Fp>(FpField(7)));
    auto adm7 = admissible_degrees(L7, 21);
    for (int n : adm7) CHECK((n % 7 == 2 || n % 7 == 4));
    CHECK(adm7.count(2));
    CHECK(adm7.count(4));
    CHECK(adm7.count(9));

    // bound 0 with a 0 exponent at infinity: alpha_r = d makes the pair
    // (-d, 0)
    FpField f5(5);
    auto Z = make_normalized<Fp>(f5, 5, {f5.zero(), f5.one()}, {0, 2, 1}, 1, {});
    auto adm0 = admissible_degrees(Z, 0);
    CHECK(adm0 == std::set<int>{0});
}

TEST_CASE("gauss kernel: unique monic minimal solution is the Hasse polynomial") {
    for (std::uint64_t p : {5ull, 7ull, 13ull}) {
        auto L = gauss_operator(p);
        auto ks = polynomial_kernel(L, (L.r() - 1) * static_cast<int>(p));
        CHECK(ks.rank_mod_p_powers == 1);
        REQUIRE(ks.minimal.has_value());
        CHECK(ks.minimal->second == static_cast<int>(p - 1) / 2);
        CHECK(ks.minimal->first == hasse_by_binomials(p));
        CHECK(operator_apply(L, ks.minimal->first).is_zero());
        CHECK(!zero_curvature_pair(L).has_value());
    }
}

TEST_CASE("p = 7 family: beta = 0 has the degree-2 solution x^2 - lambda") {
    FpField f7(7);
    RatFuncField<Fp> lamf(f7);
    auto L = p7_family(lamf.zero());
    auto ks = polynomial_kernel(L, 21);
    CHECK(ks.rank_mod_p_powers == 1);
    REQUIRE(ks.minimal.has_value());
    CHECK(ks.minimal->second == 2);
    auto lam = lamf.variable();
    CHECK(ks.minimal->first == Poly<RatFunc<Fp>>(lamf, {-lam, lamf.zero(), lamf.one()}));
    CHECK(operator_apply(L, ks.minimal->first).is_zero());
}

TEST_CASE("p = 7 family: generic beta has no polynomial solutions") {
    FpField f7(7);
    RatFuncField<Fp> lamf(f7);
    auto lam = lamf.variable();
    auto L = p7_family(lam + lamf.from_int(3));
    auto ks = polynomial_kernel(L, 21);
    CHECK(ks.rank_mod_p_powers == 0);
    CHECK(!ks.minimal.has_value());

    // cross-check at specializations into finite fields
    FpField f(7);
    auto mod = find_irreducible<Fp>(f, 2);
    AlgExtField<Fp> f49(mod);
    for (std::uint64_t i : {9ull, 17ull, 30ull}) {
        auto lam0 = f49.element(i);
        if (lam0.is_zero() || lam0 == f49.one()) continue;
        std::vector<AlgExt<Fp>> sing{f49.zero(), f49.one(), lam0};
        auto beta0 = lam0 + f49.from_int(3);
        auto Ls = make_normalized<AlgExt<Fp>>(f49, 7, sing, {5, 5, 5, 5}, 2, {beta0});
        CHECK(polynomial_kernel(Ls, 21).rank_mod_p_powers == 0);
    }
}

TEST_CASE("p = 7 conic: rank 2 with degrees 4 and 9") {
    auto L = p7_conic_family();
    auto ks = polynomial_kernel(L, 21);
    CHECK(ks.rank_mod_p_powers == 2);
    REQUIRE(ks.minimal.has_value());
    REQUIRE(ks.second.has_value());
    CHECK(ks.minimal->second == 4);
    CHECK(ks.second->second == 9);
    CHECK(operator_apply(L, ks.minimal->first).is_zero());
    CHECK(operator_apply(L, ks.second->first).is_zero());

    auto pair = zero_curvature_pair(L);
    REQUIRE(pair.has_value());
    CHECK(pair->delta == 13);
    // window r <= delta <= (r-1)p - (2r-3)
    CHECK(pair->delta >= 4);
    CHECK(pair->delta <= 16);
}

TEST_CASE("p = 13 spike family: minimal degree 1") {
    auto L = p13_spike_family();
    auto opt = minimal_solution(L);
    REQUIRE(opt.has_value());
    CHECK(opt->second == 1);
    CHECK(operator_apply(L, opt->first).is_zero());
    // the solution is x + 3 beta + 8(lambda + 1)
    FpField f13(13);
    RatFuncField<Fp> lamf(f13);
    auto lam = lamf.variable();
    const auto& ext = L.fld;
    LamExt u0 = ext.generator() * ext.from_int(3) +
                ext.from_base((lam + lamf.one()) * lamf.from_int(8));
    CHECK(opt->first == Poly<LamExt>(ext, {u0, ext.one()}));
}

TEST_CASE("solution degrees are admissible and vanishing orders obey the congruences") {
    auto L = p7_conic_family();
    auto ks = polynomial_kernel(L, 21);
    auto adm = admissible_degrees(L, 21);
    CHECK(adm.count(ks.minimal->second));
    CHECK(adm.count(ks.second->second));
    // vanishing orders at the singularities obey ord = 0 or alpha_i (mod 7)
    for (const auto& xi : L.finite_singularities) {
        CHECK(!ks.minimal->first.eval(xi).is_zero());
        auto [ord2, rest] = order_at(ks.second->first, xi);
        CHECK((ord2 % 7 == 0 || ord2 % 7 == 5));
    }
}
