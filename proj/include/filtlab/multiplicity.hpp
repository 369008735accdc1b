#pragma once

// Exact and limit-based Hilbert-Samuel multiplicities, plus the deciders for
// the Rees-type and Minkowski-type equality statements.

#include <optional>
#include <vector>

#include "filtlab/filtration.hpp"

namespace filtlab {

struct MultResult {
    Rat exact;                               // n! * covolume of the limit region
    std::vector<std::pair<long, Rat>> estimates;  // (m, e(a_m)/m^n)
    int n = 0;
};

Int factorial(int n);

// n! * covolume(newton_polyhedron(I)); throws NotPrimary.
Rat mult_ideal(const MonomialIdeal& I);

// Default geometric schedule {1,2,4,...,cap} snapped to multiples of the lcm
// of the denominators appearing in the descriptor's rational data.
std::vector<long> default_m_schedule(const FiltrationExpr& F, long cap);

MultResult mult_filtration(const FiltrationExpr& F, const std::vector<long>& schedule = {});

// n! * colength(evaluate(F,m)) / m^n — the brute-force oracle.
Rat colength_estimate(const FiltrationExpr& F, long m);

// Exact E(t) = n! * covolume of the geodesic limit body.
Rat geodesic_E(const FiltrationExpr& F, const FiltrationExpr& G, const Rat& t);

struct MinkowskiReport {
    Rat e_prod, e_f, e_g;          // e(ab), e(a), e(b)
    bool equality;                 // e(ab)^{1/n} == e(a)^{1/n} + e(b)^{1/n}
    std::optional<Rat> proportionality;  // c with P_F = c * P_G, if any
};

MinkowskiReport minkowski_check(const FiltrationExpr& F, const FiltrationExpr& G);

struct ReesReport {
    bool contained;       // F subset of G (jump comparison + body containment)
    Rat e_f, e_g;
    bool equal_mult;
    bool equal_saturation;
};

ReesReport rees_check(const FiltrationExpr& F, const FiltrationExpr& G);

struct EquivalenceReport {
    Rat e_f, e_inter, e_g;
    bool equivalent;        // all three multiplicities coincide
    bool equal_saturation;  // limit bodies equal
};

EquivalenceReport equivalence_check(const FiltrationExpr& F, const FiltrationExpr& G);

struct VolConvexityRow {
    Rat t;
    Rat lhs_pow;     // prod((1-t)alpha + t beta), the n-th power of the lhs
    int cmp;         // sign of lhs^{1/n} - chord (>=0 always)
    bool equality;
};

struct VolConvexityScan {
    std::vector<VolConvexityRow> rows;
    bool proportional;  // alpha = c beta
};

VolConvexityScan volume_convexity_scan(const RatVec& alpha, const RatVec& beta, int grid);

} // namespace filtlab
