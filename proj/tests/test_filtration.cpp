#include <doctest.h>

#include <random>

#include "filtlab/errors.hpp"
#include "filtlab/filtration.hpp"
#include "testutil.hpp"

using namespace filtlab;

static MonomialIdeal I2(std::vector<Exponent> g) { return make_ideal(2, std::move(g)); }
static MonomialIdeal mpow2(long k) { return power(I2({{1, 0}, {0, 1}}), k); }  // (x,y)^k

TEST_CASE("evaluation, fixed cases") {
    FiltPtr V = F_val({Rat(1), Rat(1)});
    CHECK(evaluate(*V, Rat(5, 2)) == mpow2(3));
    CHECK(evaluate(*V, 0) == unit_ideal(2));
    FiltPtr P = F_pow(I2({{2, 0}, {0, 3}}));
    CHECK(evaluate(*P, Rat(3, 2)) == power(I2({{2, 0}, {0, 3}}), 2));
    CHECK(evaluate(*P, 2) == power(I2({{2, 0}, {0, 3}}), 2));
    FiltPtr M = F_mulconst(I2({{1, 0}, {0, 1}}), F_pow(I2({{1, 0}, {0, 1}})));
    CHECK(evaluate(*M, 2) == mpow2(3));
    FiltPtr G = F_geo(F_val({Rat(1), Rat(1)}), F_val({Rat(2), Rat(2)}), Rat(1, 2));
    CHECK(evaluate(*G, 3) == mpow2(2));
    CHECK_THROWS_AS(evaluate(*V, Rat(-1)), InvariantError);
}

TEST_CASE("jump, fixed cases") {
    CHECK(jump(*F_val({Rat(1), Rat(1)}), {2, 3}) == 5);
    CHECK(jump(*F_pow(I2({{2, 0}, {0, 2}})), {2, 2}) == 2);
    FiltPtr P = F_pow(I2({{1, 0}, {0, 1}}));
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<long> e(0, 9);
    for (int k = 0; k < 25; ++k) {
        Exponent b{e(rng), e(rng)};
        CHECK(jump(*P, b) == b[0] + b[1]);
    }
}

TEST_CASE("jump is the membership threshold") {
    std::mt19937_64 rng(12);
    std::uniform_int_distribution<long> e(0, 5);
    for (int trial = 0; trial < 20; ++trial) {
        int dim = 2 + trial % 2;
        FiltPtr F = testutil::rand_convex_filtration(rng, dim);
        Exponent b(dim);
        for (auto& x : b) x = e(rng);
        Rat j = jump(*F, b);
        CHECK(member(evaluate(*F, j), b));
        CHECK(!member(evaluate(*F, j + Rat(1, 7)), b));
    }
}

TEST_CASE("geodesic evaluation matches the direct double sum") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 10; ++trial) {
        // the double sum over jumping-number pairs gets combinatorially heavy
        // in 3D, so keep those operands to leaves and small lambda
        int dim = 2 + trial % 3 / 2;  // mostly 2, every third trial 3
        long lam_max = dim == 2 ? 4 : 2;
        int depth = dim == 2 ? 1 : 0;
        FiltPtr F = testutil::rand_convex_filtration(rng, dim, depth);
        FiltPtr G = testutil::rand_convex_filtration(rng, dim, depth);
        for (int k = 1; k <= 3; ++k) {
            Rat t(k, 4);
            FiltPtr geo = F_geo(F, G, t);
            for (long lam = 1; lam <= lam_max; ++lam)
                CHECK(evaluate(*geo, lam) == evaluate_geodesic_direct(*F, *G, t, lam));
        }
    }
}

TEST_CASE("jumping numbers") {
    auto J = jumping_numbers(*F_val({Rat(1), Rat(3, 2)}), 3);
    CHECK(J == std::vector<Rat>{Rat(1), Rat(3, 2), Rat(2), Rat(5, 2), Rat(3)});
    auto K = jumping_numbers(*F_pow(I2({{1, 0}, {0, 1}})), Rat(7, 2));
    CHECK(K == std::vector<Rat>{Rat(1), Rat(2), Rat(3)});
}

TEST_CASE("evaluation is constant between jumping numbers") {
    std::mt19937_64 rng(14);
    for (int trial = 0; trial < 10; ++trial) {
        FiltPtr F = testutil::rand_convex_filtration(rng, 2, 1);
        auto J = jumping_numbers(*F, 4);
        Rat prev = 0;
        for (const Rat& j : J) {
            Rat mid = (prev + j) / 2;
            CHECK(evaluate(*F, mid) == evaluate(*F, j));
            prev = j;
        }
    }
}

TEST_CASE("limit bodies, fixed cases") {
    CHECK(limit_body(*F_val({Rat(2), Rat(3)})) == make_upbody(2, {{{2, 3}, 1}}));
    FiltPtr prod = F_prod(F_pow(I2({{1, 0}, {0, 1}})), F_pow(mpow2(2)));
    CHECK(limit_body(*prod) == make_upbody(2, {{{1, 1}, 3}}));
    // a_m = x * (x)^m: the constant multiplier vanishes in the limit
    FiltPtr ex34 = F_mulconst(make_ideal(1, {{1}}), F_pow(make_ideal(1, {{1}})));
    CHECK(limit_body(*ex34) == make_upbody(1, {{{1}, 1}}));
    CHECK_THROWS_AS(limit_body(*F_sum(F_val({Rat(1), Rat(1)}), F_val({Rat(2), Rat(1)}))),
                    SumNotConvex);
}

TEST_CASE("saturation") {
    FiltPtr ex34 = F_mulconst(make_ideal(1, {{1}}), F_pow(make_ideal(1, {{1}})));
    for (long m = 1; m <= 6; ++m) {
        auto s = saturate(*ex34, m);
        CHECK(s.ideal == make_ideal(1, {{m}}));
        CHECK(!s.used_union_hull);
        // strict containment of a_m in its saturation
        CHECK(ideal_contains(s.ideal, evaluate(*ex34, m)));
        CHECK(s.ideal != evaluate(*ex34, m));
    }
    // valuation filtrations are saturated
    FiltPtr V = F_val({Rat(1), Rat(2)});
    for (long m = 1; m <= 5; ++m) CHECK(saturate(*V, m).ideal == evaluate(*V, m));
    // Pow((x^2,y^2)) saturates to the integral closure at level 1
    auto s = saturate(*F_pow(I2({{2, 0}, {0, 2}})), 1);
    CHECK(s.ideal == I2({{2, 0}, {1, 1}, {0, 2}}));
    // Sum filtrations report the union-hull fallback
    CHECK(saturate(*F_sum(F_val({Rat(2), Rat(1)}), F_val({Rat(1), Rat(2)})), 1).used_union_hull);
}

TEST_CASE("rees-algebra closure") {
    FiltPtr ex34 = F_mulconst(make_ideal(1, {{1}}), F_pow(make_ideal(1, {{1}})));
    for (long m = 1; m <= 6; ++m) {
        auto r = rees_closure(*ex34, m, 50);
        CHECK(r.ideal == make_ideal(1, {{m + 1}}));
        CHECK(r.certainty == "exact");
    }
    auto rp = rees_closure(*F_pow(I2({{2, 0}, {0, 2}})), 2, 50);
    CHECK(rp.ideal == integral_closure(power(I2({{2, 0}, {0, 2}}), 2)));
    CHECK(rp.certainty == "exact");
    auto rv = rees_closure(*F_val({Rat(1), Rat(3, 2)}), 3, 50);
    CHECK(rv.ideal == evaluate(*F_val({Rat(1), Rat(3, 2)}), 3));
    CHECK(rv.certainty == "exact");
}

TEST_CASE("valuations of filtrations") {
    CHECK(val_of_filtration({Rat(1), Rat(1)}, *F_pow(I2({{1, 0}, {0, 1}}))) == 1);
    CHECK(val_of_filtration({Rat(1), Rat(1)}, *F_val({Rat(1), Rat(1)})) == 1);
    CHECK(val_of_filtration({Rat(1), Rat(1)},
                            *F_scale(Rat(3, 2), F_pow(I2({{1, 0}, {0, 1}})))) == Rat(3, 2));
}

TEST_CASE("linear boundedness witness") {
    auto lb = is_linearly_bounded(*F_val({Rat(2), Rat(2)}));
    CHECK(lb.bounded);
    CHECK(lb.witness == Rat(1, 2));
    std::mt19937_64 rng(15);
    for (int trial = 0; trial < 10; ++trial) {
        FiltPtr F = testutil::rand_convex_filtration(rng, 2);
        auto w = is_linearly_bounded(*F);
        CHECK(w.bounded);
        CHECK(w.witness > 0);
        // witness is the valuation by the all-ones vector
        CHECK(w.witness == val_of_filtration({Rat(1), Rat(1)}, *F));
    }
}

TEST_CASE("monotone and graded properties") {
    std::mt19937_64 rng(16);
    for (int trial = 0; trial < 15; ++trial) {
        int dim = 2 + trial % 2;
        FiltPtr F = testutil::rand_convex_filtration(rng, dim, 1);
        Rat lam = testutil::rand_rat(rng, 6, 2), mu = testutil::rand_rat(rng, 6, 2);
        if (lam > mu) std::swap(lam, mu);
        CHECK(ideal_contains(evaluate(*F, lam), evaluate(*F, mu)));
        CHECK(ideal_contains(evaluate(*F, lam + mu),
                             product(evaluate(*F, lam), evaluate(*F, mu))));
    }
}

TEST_CASE("scaling consistency") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 10; ++trial) {
        FiltPtr F = testutil::rand_convex_filtration(rng, 2, 1);
        Rat r = testutil::rand_rat(rng, 3, 2);
        FiltPtr S = F_scale(r, F);
        for (long m = 1; m <= 4; ++m) CHECK(evaluate(*S, m) == evaluate(*F, r * Rat(m)));
        CHECK(limit_body(*S) == scale_body(limit_body(*F), r));
        CHECK(*proportional_scale(limit_body(*S), limit_body(*F)) == r);
    }
}

TEST_CASE("covolume of a union region by inclusion-exclusion") {
    FiltPtr S = F_sum(F_val({Rat(2), Rat(1)}), F_val({Rat(1), Rat(2)}));
    CHECK(covolume_region(limit_region(*S)) == Rat(1, 6));
    // nested union collapses to the bigger part
    FiltPtr N = F_sum(F_val({Rat(1), Rat(1)}), F_val({Rat(2), Rat(2)}));
    CHECK(covolume_region(limit_region(*N)) == Rat(1, 8));
}

TEST_CASE("pure power bounds") {
    FiltPtr V = F_val({Rat(1), Rat(3, 2)});
    CHECK(pure_power_bound(*V, 0, 5) == 5);
    CHECK(pure_power_bound(*V, 1, 5) == 4);  // smallest k with (3/2)k >= 5
    CHECK(pure_power_bound(*F_pow(I2({{2, 0}, {0, 3}})), 1, 2) == 6);
}

TEST_CASE("constructor validation") {
    CHECK_THROWS_AS(F_val({Rat(0), Rat(1)}), InvariantError);
    CHECK_THROWS_AS(F_pow(I2({{1, 1}})), NotPrimary);
    CHECK_THROWS_AS(F_scale(Rat(0), F_val({Rat(1), Rat(1)})), InvariantError);
    CHECK_THROWS_AS(F_geo(F_sum(F_val({Rat(1), Rat(1)}), F_val({Rat(2), Rat(1)})),
                          F_val({Rat(1), Rat(1)}), Rat(1, 2)),
                    SumNotConvex);
    CHECK_THROWS_AS(F_prod(F_val({Rat(1), Rat(1)}), F_val({Rat(1), Rat(1), Rat(1)})),
                    DimensionMismatch);
}
