#pragma once

// Semigroup/Okounkov machinery on the monomial testbed: good valuations as
// (alpha, alpha')-lexicographic preorders on exponents, m-functions, h-function
// approximants, truncated semigroups Gamma_m / Gamma_m^(t) with their hull
// volumes, the exp(-gauge) integral formula, and the Cauchy-Schwarz scan.

#include <cstdint>

#include "filtlab/filtration.hpp"

namespace filtlab {

struct GoodValuation {
    int dim = 0;
    RatVec alpha;        // strictly positive; xi = <alpha, .>
    RatVec alpha_prime;  // strictly positive tiebreak, jointly injective on the check box
};

// Picks a random tiebreak weight and verifies one-dimensional leaves (no
// (xi, xi') collisions) on the box [0, check_box]^n, regenerating on collision.
GoodValuation make_good_valuation(int dim, RatVec alpha, std::uint64_t seed, long check_box = 8);

// Total preorder beta1 <= beta2 via (<alpha,.>, <alpha',.>) lexicographic.
bool good_val_less_eq(const GoodValuation& v, const Exponent& b1, const Exponent& b2);

// m-function of the filtration at beta (the jump value).
Rat m_function(const FiltrationExpr& F, const Exponent& beta);

// m(floor(k*beta))/k for each k in the schedule; tends to the gauge at beta.
std::vector<Rat> h_approx(const FiltrationExpr& F, const RatVec& beta,
                          const std::vector<long>& k_schedule);

struct TruncationEstimate {
    long m = 0;
    Rat M;              // certified level bound: {jump_t < m} inside {xi <= M m}
    long count_semigroup_gap = 0;  // #(Gamma_m \ Gamma_m^(t))
    long colength_geo = 0;         // colength of the geodesic ideal at m
    bool count_identity_ok = false;
    Rat vol_delta, vol_delta_t;
    Rat estimate;       // n! (vol Delta_m - vol Delta_m^(t))
    Rat exact;          // geodesic_E(F,G,t)
};

// Corollary-A.12-style finite-level estimate (dimension 2 exact hulls).
// alpha defaults to all-ones when empty.
TruncationEstimate okounkov_mult_estimate(const FiltPtr& F, const FiltPtr& G, const Rat& t,
                                          long m, RatVec alpha = {});

// Exact value of the integral of exp(-g) over the positive orthant by
// piecewise closed form over the linearity cones of g.  Throws on gauges that
// vanish along a coordinate direction inside their own cell.
Rat exp_integral_exact(const GaugeFunction& g);

// Importance-sampled Monte Carlo counterpart: (estimate, std_error).
std::pair<double, double> exp_integral_mc(const GaugeFunction& g, std::uint64_t seed, long samples);

struct CauchySchwarzRow {
    Rat t;
    Rat lhs_minus_rhs;  // E''(t)E(t) - (n+1)/n E'(t)^2, central differences, exact arithmetic
    bool ok;            // >= -slack
    bool equality;      // |value| <= slack
};

struct CauchySchwarzReport {
    std::vector<CauchySchwarzRow> rows;
    bool proportional;  // limit bodies proportional
    bool all_ok = true;
};

// Central differences of the exact E at rational abscissae t_k = k/grid for
// interior k, with step h (Richardson-extrapolated against step h/2); slack is the comparison tolerance (relative to
// max(1, |E''E|)).
CauchySchwarzReport cauchy_schwarz_check(const FiltrationExpr& F, const FiltrationExpr& G,
                                         int grid, const Rat& step, double slack = 1e-6);

} // namespace filtlab
