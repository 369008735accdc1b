// Acceptance gate: one pass/fail line per criterion, exit 1 if any fail.
// Tolerances are pinned here, next to the checks that use them.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <vector>

#include "filtlab/errors.hpp"
#include "filtlab/measures.hpp"
#include "filtlab/multiplicity.hpp"
#include "filtlab/okounkov.hpp"
#include "../testutil.hpp"

using namespace filtlab;

namespace {

int g_failures = 0;

#define REQUIRE_OR_FAIL(cond)                                            \
    do {                                                                 \
        if (!(cond)) {                                                   \
            std::printf("    first failing check: %s (%s:%d)\n", #cond,  \
                        __FILE__, __LINE__);                             \
            return false;                                                \
        }                                                                \
    } while (0)

static MonomialIdeal I2(std::vector<Exponent> g) { return make_ideal(2, std::move(g)); }

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// 1. Shifted principal filtration: closure strictly between the members and
// their saturation, computed exactly and fast.
bool crit1() {
    auto t0 = std::chrono::steady_clock::now();
    FiltPtr F = F_mulconst(make_ideal(1, {{1}}), F_pow(make_ideal(1, {{1}})));
    for (long m = 1; m <= 10; ++m) {
        auto r = rees_closure(*F, m, 50);
        REQUIRE_OR_FAIL(r.ideal == make_ideal(1, {{m + 1}}));
        REQUIRE_OR_FAIL(r.certainty == "exact");
        auto s = saturate(*F, m);
        REQUIRE_OR_FAIL(s.ideal == make_ideal(1, {{m}}));
        // a_m = closure here, and both sit strictly inside the saturation
        REQUIRE_OR_FAIL(evaluate(*F, m) == r.ideal);
        REQUIRE_OR_FAIL(ideal_contains(s.ideal, r.ideal));
        REQUIRE_OR_FAIL(s.ideal != r.ideal);
    }
    REQUIRE_OR_FAIL(seconds_since(t0) < 1.0);
    return true;
}

// 2. Geodesics between monomial valuations are monomial valuations with
// interpolated weights, exactly, at every index.
bool crit2() {
    std::mt19937_64 rng(9001);
    for (int trial = 0; trial < 12; ++trial) {
        int dim = 2 + trial % 2;
        RatVec a = testutil::rand_weights(rng, dim), b = testutil::rand_weights(rng, dim);
        FiltPtr F = F_val(a), G = F_val(b);
        for (int k = 1; k <= 7; ++k) {
            Rat t(k, 8);
            t.canonicalize();
            RatVec w(dim);
            for (int i = 0; i < dim; ++i) w[i] = (1 - t) * a[i] + t * b[i];
            FiltPtr geo = F_geo(F, G, t), mix = F_val(w);
            for (long lam = 1; lam <= 10; ++lam)
                REQUIRE_OR_FAIL(evaluate(*geo, lam) == evaluate(*mix, lam));
            Rat prod = 1;
            for (const Rat& wi : w) prod *= wi;
            REQUIRE_OR_FAIL(geodesic_E(*F, *G, t) == 1 / prod);
        }
    }
    return true;
}

// 3. t -> E(t)^{-1/n} is concave along geodesics, decided symbolically;
// linear exactly when the limit bodies are proportional.
bool crit3() {
    std::mt19937_64 rng(9002);
    int proportional_seen = 0;
    for (int trial = 0; trial < 24; ++trial) {
        int dim = 2 + trial % 2;
        FiltPtr F = testutil::rand_convex_filtration(rng, dim, 1);
        FiltPtr G = trial % 4 == 0 ? F_scale(Rat(1 + trial % 3, 2), F)
                                   : testutil::rand_convex_filtration(rng, dim, 1);
        bool prop = proportional_scale(limit_body(*F), limit_body(*G)).has_value();
        if (prop) ++proportional_seen;
        Rat E0 = geodesic_E(*F, *G, 0), E1 = geodesic_E(*F, *G, 1);
        bool linear = true;
        for (int k = 1; k <= 7; ++k) {
            Rat t(k, 8);
            t.canonicalize();
            Rat Et = geodesic_E(*F, *G, t);
            int s = sign_root_combination(
                dim, {{Rat(1), 1 / Et}, {-(1 - t), 1 / E0}, {-t, 1 / E1}});
            REQUIRE_OR_FAIL(s >= 0);
            if (s != 0) linear = false;
        }
        REQUIRE_OR_FAIL(linear == prop);
    }
    REQUIRE_OR_FAIL(proportional_seen >= 5);
    return true;
}

// 4. For nested filtrations, equal multiplicity is equivalent to equal
// saturation (equal limit bodies).
bool crit4() {
    std::mt19937_64 rng(9003);
    int equal_cases = 0;
    for (int trial = 0; trial < 100; ++trial) {
        int dim = 2 + trial % 2;
        FiltPtr G = testutil::rand_convex_filtration(rng, dim, 1);
        // F subset of G by construction; every 5th pair is engineered so the
        // intersection collapses back to G (equal multiplicity case)
        FiltPtr H = trial % 5 == 0 ? F_scale(Rat(2), G)
                                   : testutil::rand_convex_filtration(rng, dim, 1);
        FiltPtr F = F_inter(G, H);
        auto r = rees_check(*F, *G);
        REQUIRE_OR_FAIL(r.contained);
        REQUIRE_OR_FAIL(r.e_f >= r.e_g);
        REQUIRE_OR_FAIL(r.equal_mult == r.equal_saturation);
        if (r.equal_mult) ++equal_cases;
    }
    REQUIRE_OR_FAIL(equal_cases >= 10);
    return true;
}

// 5. Minkowski inequality e(ab)^{1/n} <= e(a)^{1/n} + e(b)^{1/n} with equality
// exactly for proportional limit bodies.
bool crit5() {
    auto mink_strict = minkowski_check(*F_pow(I2({{1, 0}, {0, 1}})), *F_pow(I2({{1, 0}, {0, 2}})));
    REQUIRE_OR_FAIL(mink_strict.e_prod == 5);
    REQUIRE_OR_FAIL(!mink_strict.equality);
    auto mink_eq = minkowski_check(*F_pow(I2({{1, 0}, {0, 1}})), *F_pow(I2({{2, 0}, {0, 2}})));
    REQUIRE_OR_FAIL(mink_eq.e_prod == 9);
    REQUIRE_OR_FAIL(mink_eq.equality);
    REQUIRE_OR_FAIL(*mink_eq.proportionality == Rat(1, 2));
    std::mt19937_64 rng(9004);
    for (int trial = 0; trial < 50; ++trial) {
        int dim = 2 + trial % 2;
        FiltPtr F = testutil::rand_convex_filtration(rng, dim, 1);
        FiltPtr G = trial % 6 == 0 ? F_scale(Rat(3, 2), F)
                                   : testutil::rand_convex_filtration(rng, dim, 1);
        auto r = minkowski_check(*F, *G);
        int s = sign_root_combination(dim, {{Rat(1), r.e_prod}, {Rat(-1), r.e_f}, {Rat(-1), r.e_g}});
        REQUIRE_OR_FAIL(s <= 0);
        REQUIRE_OR_FAIL(r.equality == (s == 0));
        REQUIRE_OR_FAIL(r.equality == r.proportionality.has_value());
    }
    return true;
}

// 6. Normalized colengths n! l(a_m)/m^n dominate the multiplicity and their
// running infimum converges: within 2% by m = 240.
bool crit6() {
    std::mt19937_64 rng(9005);
    for (int trial = 0; trial < 10; ++trial) {
        FiltPtr F = testutil::rand_convex_filtration(rng, 2, 1);
        Rat exact = mult_filtration(*F).exact;
        Rat inf;
        bool first = true;
        for (long m : {30L, 60L, 120L, 240L}) {
            Rat est = colength_estimate(*F, m);
            REQUIRE_OR_FAIL(est >= exact);
            inf = first ? est : std::min(inf, est);
            first = false;
        }
        REQUIRE_OR_FAIL(inf - exact <= exact * Rat(2, 100));
    }
    return true;
}

// 7. Discrete geodesic measures: the halfplane mass identity with the
// colength is exact at every level, masses converge to mu (within 5% at
// m = 160), and mu is n-homogeneous on halfplanes.
// Pair generator for the measure suite: node kinds whose jump evaluates in
// constant time, so the m = 160 lattice boxes stay tractable.
static FiltPtr rand_measure_filtration(std::mt19937_64& rng, int dim) {
    std::uniform_int_distribution<int> kind(0, 3);
    switch (kind(rng)) {
        case 0: return F_val(testutil::rand_weights(rng, dim));
        case 1:
            return F_scale(testutil::rand_rat(rng, 3, 2),
                           F_val(testutil::rand_weights(rng, dim)));
        case 2:
            return F_inter(F_val(testutil::rand_weights(rng, dim)),
                           F_val(testutil::rand_weights(rng, dim)));
        default:
            return F_geo(F_val(testutil::rand_weights(rng, dim)),
                         F_val(testutil::rand_weights(rng, dim)), Rat(1, 2));
    }
}

bool crit7() {
    std::mt19937_64 rng(9006);
    for (int trial = 0; trial < 6; ++trial) {
        FiltPtr F = rand_measure_filtration(rng, 2);
        FiltPtr G = rand_measure_filtration(rng, 2);
        Rat t(1 + trial % 3, 4);
        t.canonicalize();
        Rat exact = mu_halfplane(*F, *G, t, 1);
        Rat last_mass;
        for (long m : {20L, 40L, 80L, 160L}) {
            auto mu = mu_m(*F, *G, m, 2);
            Rat mass = halfplane_mass(mu, t, 1);
            Rat ident = Rat(2) * colength(evaluate(*F_geo(F, G, t), Rat(m))) / Rat(m * m);
            REQUIRE_OR_FAIL(mass == ident);
            for (const auto& a : mu.atoms) {
                // band certified for atoms with both coordinates above 1/m
                if (!(a.x > Rat(1, m) && a.y > Rat(1, m))) continue;
                REQUIRE_OR_FAIL(a.x <= mu.D_used * a.y);
                REQUIRE_OR_FAIL(a.y <= mu.D_used * a.x);
            }
            last_mass = mass;
        }
        REQUIRE_OR_FAIL(abs(last_mass - exact) <= exact * Rat(5, 100));
        Rat Et = geodesic_E(*F, *G, t);
        for (Rat a : {Rat(1, 2), Rat(1), Rat(2), Rat(3)})
            REQUIRE_OR_FAIL(mu_halfplane(*F, *G, t, a) == a * a * Et);
    }
    return true;
}

// 8. The segment-measure Stieltjes representation reproduces E(t) to 1e-6
// relative accuracy, each integral in under 30 seconds.
bool crit8() {
    const double rel = 1e-6;
    std::vector<std::tuple<FiltPtr, FiltPtr, Rat>> cases;
    FiltPtr P = F_pow(I2({{1, 0}, {0, 1}}));
    cases.emplace_back(P, P, Rat(1, 3));                                       // E = 1
    cases.emplace_back(F_val({Rat(1), Rat(1)}), F_val({Rat(1, 2), Rat(1, 2)}), // E=(1-t/2)^-2
                       Rat(1, 2));
    std::mt19937_64 rng(9007);
    for (int trial = 0; trial < 10; ++trial) {
        Rat t(1 + trial % 3, 4);
        t.canonicalize();
        cases.emplace_back(testutil::rand_convex_filtration(rng, 2, 1),
                           testutil::rand_convex_filtration(rng, 2, 1), t);
    }
    for (auto& [F, G, t] : cases) {
        auto t0 = std::chrono::steady_clock::now();
        double exact = rat_d(geodesic_E(*F, *G, t));
        auto r = E_via_segment(*F, *G, t, rel);
        REQUIRE_OR_FAIL(seconds_since(t0) < 30.0);
        REQUIRE_OR_FAIL(std::abs(r.value - exact) <= rel * exact);
        REQUIRE_OR_FAIL(rat_d(r.lower) <= exact * (1 + 1e-12));
        REQUIRE_OR_FAIL(rat_d(r.upper) >= exact * (1 - 1e-12));
    }
    return true;
}

// 9. Semigroup truncations: the gap count matches the colength at every
// level, the hull-volume estimate is within 5% at m = 64, the exp(-gauge)
// integral matches n! covol (exactly in 2D, 1e-4 relative in 3D), and the
// second-derivative inequality holds with equality only for proportional
// bodies (step 1e-3, slack 1e-6).
bool crit9() {
    std::mt19937_64 rng(9008);
    for (int trial = 0; trial < 6; ++trial) {
        FiltPtr F = testutil::rand_convex_filtration(rng, 2, 1);
        FiltPtr G = testutil::rand_convex_filtration(rng, 2, 1);
        Rat t(1 + trial % 3, 4);
        t.canonicalize();
        for (long m : {4L, 8L, 16L, 32L}) {
            auto est = okounkov_mult_estimate(F, G, t, m);
            REQUIRE_OR_FAIL(est.count_identity_ok);
        }
    }
    auto fixed = okounkov_mult_estimate(F_val({Rat(2), Rat(3)}), F_val({Rat(3), Rat(2)}),
                                        Rat(1, 2), 64);
    REQUIRE_OR_FAIL(abs(fixed.estimate - fixed.exact) <= fixed.exact * Rat(5, 100));

    for (int trial = 0; trial < 8; ++trial) {
        int dim = 2 + trial % 2;
        UpBody P = newton_polyhedron(testutil::rand_primary_ideal(rng, dim, 4));
        Rat expect = Rat(factorial(dim)) * covolume(P);
        Rat got = exp_integral_exact(gauge_of(P));
        if (dim == 2) {
            REQUIRE_OR_FAIL(got == expect);  // stronger than the 1e-8 budget
        } else {
            REQUIRE_OR_FAIL(abs(got - expect) <= expect * Rat(1, 10000));
        }
    }

    FiltPtr A = F_val({Rat(1), Rat(2)}), B = F_val({Rat(2), Rat(1)});
    auto cs = cauchy_schwarz_check(*A, *B, 8, Rat(1, 1000), 1e-6);
    REQUIRE_OR_FAIL(cs.all_ok);
    REQUIRE_OR_FAIL(!cs.proportional);
    bool strict = false;
    for (const auto& row : cs.rows)
        if (!row.equality) strict = true;
    REQUIRE_OR_FAIL(strict);
    auto csp = cauchy_schwarz_check(*A, *F_scale(Rat(2), A), 8, Rat(1, 1000), 1e-6);
    REQUIRE_OR_FAIL(csp.proportional);
    REQUIRE_OR_FAIL(csp.all_ok);
    for (const auto& row : csp.rows) REQUIRE_OR_FAIL(row.equality);
    return true;
}

// 10. Weight-volume convexity on a 16-point grid: the root inequality holds
// at every grid point, with equality on the interior exactly for
// proportional weight vectors.
bool crit10() {
    std::mt19937_64 rng(9009);
    int proportional_seen = 0;
    for (int trial = 0; trial < 20; ++trial) {
        int dim = 2 + trial % 2;
        RatVec a = testutil::rand_weights(rng, dim);
        RatVec b = testutil::rand_weights(rng, dim);
        if (trial % 5 == 0) {
            b = a;
            for (auto& x : b) x *= Rat(3, 2);
        }
        auto scan = volume_convexity_scan(a, b, 16);
        if (scan.proportional) ++proportional_seen;
        bool interior_equality = true;
        for (const auto& row : scan.rows) {
            REQUIRE_OR_FAIL(row.cmp >= 0);
            bool endpoint = row.t == 0 || row.t == 1;
            if (endpoint) REQUIRE_OR_FAIL(row.equality);
            else if (!row.equality) interior_equality = false;
        }
        REQUIRE_OR_FAIL(interior_equality == scan.proportional);
    }
    REQUIRE_OR_FAIL(proportional_seen >= 4);
    return true;
}

void report(int idx, const char* name, bool ok) {
    std::printf("%s criterion %d: %s\n", ok ? "PASS" : "FAIL", idx, name);
    if (!ok) ++g_failures;
}

} // namespace

int main() {
    report(1, "shifted filtration closure vs saturation, exact and < 1s", crit1());
    report(2, "geodesics of monomial valuations interpolate weights exactly", crit2());
    report(3, "E(t)^{-1/n} concavity, linear iff proportional bodies", crit3());
    report(4, "nested pairs: equal multiplicity iff equal saturation", crit4());
    report(5, "Minkowski inequality with symbolic equality decision", crit5());
    report(6, "normalized colengths dominate and converge within 2% by m=240", crit6());
    report(7, "discrete measure identities, 5% convergence at m=160, homogeneity", crit7());
    report(8, "segment integral reproduces E(t) to 1e-6 relative in <30s", crit8());
    report(9, "truncation counting, 5% hull estimate, exp-integral, second-derivative scan",
           crit9());
    report(10, "weight-volume convexity on a 16-point grid", crit10());
    if (g_failures) {
        std::printf("%d criterion(s) failed\n", g_failures);
        return 1;
    }
    std::printf("all 10 criteria passed\n");
    return 0;
}
