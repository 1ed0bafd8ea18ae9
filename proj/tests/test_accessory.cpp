#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <pcurv/accessory.hpp>

using namespace pcurv;

namespace {

using Lam = RatFunc<Fp>;

Poly<Lam> monicize_in_beta(Poly<Lam> f) {
    return f * f.lc().inv();
}

}  // namespace

TEST_CASE("existence polynomials for the p = 7 family") {
    FpField f7(7);
    RatFuncField<Fp> lamf(f7);
    auto lam = lamf.variable();

    auto r2 = existence_polynomial_r4<Fp>(lamf, 7, {5, 5, 5, 5}, 2);
    // beta(beta+1)(beta+lambda) = lambda beta + (1+lambda) beta^2 + beta^3
    Poly<Lam> expect2(lamf, {lamf.zero(), lam, lamf.one() + lam, lamf.one()});
    CHECK(r2 == expect2);

    auto r4 = existence_polynomial_r4<Fp>(lamf, 7, {5, 5, 5, 5}, 4);
    // 5 beta^2 + beta(1+lambda) + lambda^2+3lambda+1, monicized
    Poly<Lam> expect4(lamf, {lam * lam + lamf.from_int(3) * lam + lamf.one(),
                             lamf.one() + lam, lamf.from_int(5)});
    CHECK(r4 == monicize_in_beta(expect4));

    CHECK_THROWS_AS(existence_polynomial_r4<Fp>(lamf, 7, {5, 5, 5, 5}, 3),
                    DegreeNotAdmissible);
}

TEST_CASE("existence polynomials for the p = 13 family") {
    FpField f13(13);
    RatFuncField<Fp> lamf(f13);
    auto lam = lamf.variable();

    auto r1 = existence_polynomial_r4<Fp>(lamf, 13, {11, 11, 11, 10}, 1);
    Poly<Lam> expect1(lamf, {lam, (lamf.one() + lam) * lamf.from_int(7), lamf.one()});
    CHECK(r1 == expect1);

    auto r4 = existence_polynomial_r4<Fp>(lamf, 13, {11, 11, 11, 10}, 4);
    // lambda^3 + (2 beta + 9) lambda^2 + (9 + 8 beta^2 + 4 beta) lambda
    //   + 2 beta^3 + 8 beta^2 + 2 beta + 1, collected in beta and monicized
    auto c0 = lam * lam * lam + lamf.from_int(9) * lam * lam + lamf.from_int(9) * lam +
              lamf.one();
    auto c1 = lamf.from_int(2) + lamf.from_int(4) * lam + lamf.from_int(2) * lam * lam;
    auto c2 = lamf.from_int(8) + lamf.from_int(8) * lam;
    Poly<Lam> expect4(lamf, {c0, c1, c2, lamf.from_int(2)});
    CHECK(r4 == monicize_in_beta(expect4));
}

TEST_CASE("existence polynomial roots close the loop") {
    FpField f7(7);
    RatFuncField<Fp> lamf(f7);
    auto lam = lamf.variable();
    auto r2 = existence_polynomial_r4<Fp>(lamf, 7, {5, 5, 5, 5}, 2);
    auto roots = roots_over<Lam>(lamf, r2);
    REQUIRE(roots.size() == 3);
    std::vector<Lam> sing{lamf.zero(), lamf.one(), lam};
    for (auto& [beta, mult] : roots) {
        CHECK(mult == 1);
        auto L = make_normalized<Lam>(lamf, 7, sing, {5, 5, 5, 5}, 2, {beta});
        auto ks = polynomial_kernel(L, 21);
        REQUIRE(ks.minimal.has_value());
        CHECK(ks.minimal->second == 2);
    }
}

TEST_CASE("grid search over F_49 reproduces the fiber counts") {
    FpField f7(7);
    auto mod = find_irreducible<Fp>(f7, 2);
    AlgExtField<Fp> f49(mod);
    for (std::int64_t lam0 : {2, 6}) {
        std::vector<AlgExt<Fp>> sing{f49.zero(), f49.one(), f49.from_int(lam0)};
        auto rep = grid_search<AlgExt<Fp>>(f49, 7, 4, {5, 5, 5, 5}, sing);
        CHECK(rep.nilpotent_nonzero == 3);
        CHECK(rep.zero_curvature == 2);
        CHECK(rep.pi_degree_nilpotent == 5);
        CHECK(rep.pi_degree_nilpotent < rep.pi_degree_bound);  // 5 < 7, strict
        for (const auto& h : rep.hits) {
            if (h.cls == "NilpotentNonzero") {
                CHECK(h.n == 8);
                CHECK(h.min_degree == 2);
                CHECK(h.spikes == 0);
                CHECK(h.datum_valid);
            } else {
                CHECK(h.min_degree == 4);
                CHECK(h.second_degree == 9);
            }
        }
    }
}

TEST_CASE("grid search for r = 3 is the single hypergeometric point") {
    FpField f7(7);
    auto rep = grid_search<Fp>(f7, 7, 3, {0, 0, 0}, {f7.zero(), f7.one()});
    CHECK(rep.scanned == 1);
    REQUIRE(rep.hits.size() == 1);
    CHECK(rep.hits[0].cls == "NilpotentNonzero");
    CHECK(rep.hits[0].n == 0);
    CHECK(rep.hits[0].min_degree == 3);
}

TEST_CASE("logarithmic r = 4 grids have d = p-1 and n = 0") {
    FpField f5(5);
    for (std::int64_t lam0 : {2, 3}) {
        std::vector<Fp> sing{f5.zero(), f5.one(), f5.from_int(lam0)};
        auto rep = grid_search<Fp>(f5, 5, 4, {0, 0, 0, 0}, sing);
        CHECK(!rep.hits.empty());
        for (const auto& h : rep.hits) {
            CHECK(h.cls == "NilpotentNonzero");  // zero curvature cannot occur
            CHECK(h.min_degree == 4);
            CHECK(h.n == 0);
        }
    }
}

TEST_CASE("grid budget") {
    FpField f13(13);
    std::vector<Fp> sing{f13.zero(), f13.one(), f13.from_int(2), f13.from_int(3)};
    CHECK_THROWS_AS(
        grid_search<Fp>(f13, 13, 5, {0, 0, 0, 0, 0}, sing, 100),
        GridTooLarge);
}

TEST_CASE("symmetric construction at (7, 5)") {
    auto rep = symmetric_construction(7, 5);
    CHECK(!rep.hits.empty());
    CHECK(rep.bezout_bound == 12);  // (d+1)(d+2) with d = 2
    CHECK(static_cast<long long>(rep.hits.size()) <= rep.bezout_bound);
    for (const auto& h : rep.hits) {
        CHECK(h.cls == "NilpotentNonzero");
        CHECK(h.min_degree == 2);
        CHECK(h.n == 14);
        CHECK(h.datum_valid);
    }
}

TEST_CASE("symmetric construction at (5, 5) uses the extension field") {
    auto rep = symmetric_construction(5, 5);
    CHECK(!rep.hits.empty());
    CHECK(rep.field_desc == "F_5^2");
    for (const auto& h : rep.hits) {
        CHECK(h.min_degree == 1);
        CHECK(h.n == 10);
        CHECK(h.datum_valid);
    }
}

TEST_CASE("symmetric construction degenerate case r = 3") {
    auto rep = symmetric_construction(7, 3);
    REQUIRE(rep.hits.size() == 1);
    CHECK(rep.hits[0].n == 0);
    CHECK_THROWS_AS(symmetric_construction(7, 6), HypothesisViolated);
    CHECK_THROWS_AS(symmetric_construction(5, 7), HypothesisViolated);
}

TEST_CASE("strength constraints") {
    auto log75 = strength_constraints(7, 5, {0, 0, 0, 0, 0});
    CHECK(log75 == std::set<long long>{0, 14});

    auto fam7 = strength_constraints(7, 4, {5, 5, 5, 5});
    CHECK(fam7.count(8));
    CHECK(fam7 == std::set<long long>{8});

    auto fam13 = strength_constraints(13, 4, {11, 11, 11, 10});
    CHECK(fam13.count(22));
    auto fam13b = strength_constraints(13, 4, {11, 11, 11, 3});
    CHECK(fam13b.count(16));
}

TEST_CASE("nonempty check") {
    auto a = nonempty_check(7, 5, 14);
    CHECK(a.verdict == NonemptyVerdict::ProvedNonemptyByWitness);
    REQUIRE(a.witness.has_value());

    auto b = nonempty_check(7, 4, 7);
    CHECK(b.verdict == NonemptyVerdict::ConstraintsViolated);

    auto c = nonempty_check(7, 3, 0);
    CHECK(c.verdict == NonemptyVerdict::ProvedNonemptyByWitness);

    auto d = nonempty_check(5, 5, 10);
    CHECK(d.verdict == NonemptyVerdict::ProvedNonemptyByWitness);

    auto e = nonempty_check(5, 4, 0);
    CHECK(e.verdict == NonemptyVerdict::ProvedNonemptyByWitness);
}
