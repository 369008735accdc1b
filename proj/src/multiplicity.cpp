#include "filtlab/multiplicity.hpp"

#include <algorithm>

#include "filtlab/errors.hpp"

namespace filtlab {

Int factorial(int n) {
    Int f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

Rat mult_ideal(const MonomialIdeal& I) {
    if (!is_m_primary(I)) throw NotPrimary("mult_ideal");
    if (is_unit(I)) return 0;
    return Rat(factorial(I.dim)) * covolume(newton_polyhedron(I));
}

namespace {

void collect_denominators(const FiltrationExpr& F, Int& l) {
    if (F.kind == FiltKind::Val)
        for (const Rat& a : F.weights) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), a.get_den().get_mpz_t());
    if (F.kind == FiltKind::Scale || F.kind == FiltKind::Geo)
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), F.scalar.get_den().get_mpz_t());
    if (F.left) collect_denominators(*F.left, l);
    if (F.right) collect_denominators(*F.right, l);
}

} // namespace

std::vector<long> default_m_schedule(const FiltrationExpr& F, long cap) {
    Int l = 1;
    collect_denominators(F, l);
    long L = l.fits_slong_p() ? l.get_si() : 1;
    std::vector<long> sched;
    for (long m = 1; m <= cap; m *= 2) {
        long snapped = ((m + L - 1) / L) * L;  // snap up to a multiple of L
        if (snapped <= cap) sched.push_back(snapped);
    }
    std::sort(sched.begin(), sched.end());
    sched.erase(std::unique(sched.begin(), sched.end()), sched.end());
    return sched;
}

MultResult mult_filtration(const FiltrationExpr& F, const std::vector<long>& schedule) {
    MultResult out;
    out.n = F.dim;
    out.exact = Rat(factorial(F.dim)) * covolume_region(limit_region(F));
    std::vector<long> sched = schedule;
    if (sched.empty()) {
        long cap = F.dim <= 2 ? 256 : (F.dim == 3 ? 32 : 8);
        sched = default_m_schedule(F, cap);
    }
    for (long m : sched) {
        Rat est = mult_ideal(evaluate(F, Rat(m))) / rat_pow(Rat(m), F.dim);
        out.estimates.emplace_back(m, est);
    }
    return out;
}

Rat colength_estimate(const FiltrationExpr& F, long m) {
    if (m < 1) throw InvariantError("colength_estimate: m must be >= 1");
    return Rat(factorial(F.dim)) * colength(evaluate(F, Rat(m))) / rat_pow(Rat(m), F.dim);
}

Rat geodesic_E(const FiltrationExpr& F, const FiltrationExpr& G, const Rat& t) {
    UpBody P0 = limit_body(F);
    UpBody P1 = limit_body(G);
    UpBody Pt = affine_combination_body(gauge_of(P0), gauge_of(P1), t);
    return Rat(factorial(F.dim)) * covolume(Pt);
}

MinkowskiReport minkowski_check(const FiltrationExpr& F, const FiltrationExpr& G) {
    MinkowskiReport rep;
    UpBody P = limit_body(F);
    UpBody Q = limit_body(G);
    Rat nf = Rat(factorial(F.dim));
    rep.e_f = nf * covolume(P);
    rep.e_g = nf * covolume(Q);
    rep.e_prod = nf * covolume(minkowski_sum(P, Q));
    rep.proportionality = proportional_scale(P, Q);
    // e(ab)^{1/n} vs e(a)^{1/n} + e(b)^{1/n}, decided symbolically.
    int s = sign_root_combination(F.dim, {{Rat(1), rep.e_prod}, {Rat(-1), rep.e_f}, {Rat(-1), rep.e_g}});
    if (s > 0) throw InvariantError("Minkowski inequality violated (internal error)");
    rep.equality = (s == 0);
    return rep;
}

ReesReport rees_check(const FiltrationExpr& F, const FiltrationExpr& G) {
    ReesReport rep;
    UpBody P = limit_body(F);
    UpBody Q = limit_body(G);
    // Containment F subset of G: asymptotic body containment plus level-wise
    // ideal containment at a certified range of levels.  Containment can only
    // fail where the members of F change, so the jumping numbers of F are the
    // only levels that need checking.
    bool contained = contains(Q, P);
    if (contained) {
        Rat level = 4;
        for (const Rat& lam : jumping_numbers(F, level))
            if (!ideal_contains(evaluate(G, lam), evaluate(F, lam))) {
                contained = false;
                break;
            }
    }
    rep.contained = contained;
    Rat nf = Rat(factorial(F.dim));
    rep.e_f = nf * covolume(P);
    rep.e_g = nf * covolume(Q);
    rep.equal_mult = rep.e_f == rep.e_g;
    rep.equal_saturation = P == Q;
    return rep;
}

EquivalenceReport equivalence_check(const FiltrationExpr& F, const FiltrationExpr& G) {
    EquivalenceReport rep;
    UpBody P = limit_body(F);
    UpBody Q = limit_body(G);
    Rat nf = Rat(factorial(F.dim));
    rep.e_f = nf * covolume(P);
    rep.e_g = nf * covolume(Q);
    rep.e_inter = nf * covolume(intersect_bodies(P, Q));
    rep.equivalent = rep.e_f == rep.e_inter && rep.e_inter == rep.e_g;
    rep.equal_saturation = P == Q;
    return rep;
}

VolConvexityScan volume_convexity_scan(const RatVec& alpha, const RatVec& beta, int grid) {
    if (alpha.size() != beta.size()) throw DimensionMismatch("volume_convexity_scan");
    int n = (int)alpha.size();
    for (int i = 0; i < n; ++i)
        if (alpha[i] <= 0 || beta[i] <= 0)
            throw InvariantError("volume_convexity_scan: weights must be positive");
    if (grid < 1) throw InvariantError("volume_convexity_scan: grid must be >= 1");
    VolConvexityScan out;
    // alpha = c beta?
    Rat c = alpha[0] / beta[0];
    out.proportional = true;
    for (int i = 1; i < n; ++i)
        if (alpha[i] != c * beta[i]) out.proportional = false;
    Rat pa = 1, pb = 1;
    for (int i = 0; i < n; ++i) { pa *= alpha[i]; pb *= beta[i]; }
    for (int k = 0; k <= grid; ++k) {
        Rat t(k, grid);
        t.canonicalize();
        Rat pw = 1;
        for (int i = 0; i < n; ++i) pw *= (1 - t) * alpha[i] + t * beta[i];
        // vol(v_w)^{-1/n} = pw^{1/n} vs chord (1-t) pa^{1/n} + t pb^{1/n}
        int s = sign_root_combination(
            (unsigned long)n, {{Rat(1), pw}, {t - 1, pa}, {-t, pb}});
        if (s < 0) throw InvariantError("weight-volume convexity violated (internal error)");
        out.rows.push_back({t, pw, s, s == 0});
    }
    return out;
}

} // namespace filtlab
