#pragma once

// Geodesic measures: discrete approximations mu_m, exact region values of the
// limit measure mu (pushforward of n! Lebesgue under the pair of gauges), the
// segment measure mu~ and the integral representation of E(t).

#include <cstdint>
#include <vector>

#include "filtlab/filtration.hpp"

namespace filtlab {

struct MeasureAtom {
    Rat x, y;   // (jump_F(beta)/m, jump_G(beta)/m)
    Rat mass;   // merged mass, multiples of n!/m^n
};

struct DiscreteMeasure2D {
    std::vector<MeasureAtom> atoms;
    long m = 1;
    Rat cutoff;   // atoms cover all beta with min(jump_F,jump_G)(beta) <= cutoff * m
    Rat D_used;   // comparability constant certified on this atom set
};

// Constants (C, D) with m^{ceil(C lambda)} inside a_lambda for both
// filtrations and jump_F <= D jump_G (and vice versa) certified: D is the
// exact asymptotic gauge-ratio bound, sharpened by the finite jump ratios on
// the box up to cert_level.
std::pair<Rat, Rat> comparability_constants(const FiltrationExpr& F, const FiltrationExpr& G,
                                            const Rat& cert_level = Rat(4));

// Asymptotic gauge-ratio constant only (exact, from limit-body vertices).
Rat gauge_ratio_bound(const UpBody& P0, const UpBody& P1);

// Atoms at (jump_F/m, jump_G/m) with mass n!/m^n for all beta with
// min(jump_F, jump_G)(beta) <= cutoff*m; merged and sorted.
DiscreteMeasure2D mu_m(const FiltrationExpr& F, const FiltrationExpr& G, long m,
                       const Rat& cutoff = Rat(2));

// mass of {(1-t)x + t y < a}; requires a <= cutoff.
Rat halfplane_mass(const DiscreteMeasure2D& mu, const Rat& t, const Rat& a);

// H(x,y) = e(a_{x.,0} cap a_{y.,1}) = n! covol(xP0 cap yP1) for x,y > 0.
Rat H_exact(const FiltrationExpr& F, const FiltrationExpr& G, const Rat& x, const Rat& y);

// Exact mu of the half-open box (x1,x2] x (y1,y2] via the mixed second
// difference of H (mu has no atoms, so the boundary convention is harmless).
Rat mu_box(const FiltrationExpr& F, const FiltrationExpr& G,
           const Rat& x1, const Rat& x2, const Rat& y1, const Rat& y2);

// Exact mu({(1-t)x + ty < a}) = a^n E(t).
Rat mu_halfplane(const FiltrationExpr& F, const FiltrationExpr& G, const Rat& t, const Rat& a);

// mu~([0,s]) = n! vol({g0 <= s(g0+g1), g0+g1 < 1}), exact (dim <= 3).
Rat tilde_mu_cdf(const FiltrationExpr& F, const FiltrationExpr& G, const Rat& s);

// Monte Carlo counterpart with a fixed seed; returns (estimate, std_error).
std::pair<double, double> tilde_mu_cdf_mc(const FiltrationExpr& F, const FiltrationExpr& G,
                                          const Rat& s, std::uint64_t seed, long samples);

struct SegmentIntegral {
    double value;      // trapezoid Stieltjes sum over the refined partition
    double error;      // conservative: half-width of the certified enclosure
    Rat lower, upper;  // exact rational enclosure of the Stieltjes integral
};

// E(t) as the Stieltjes integral of ((1-t)z + t(1-z))^{-n} against the exact
// mu~ cdf, by adaptive partition refinement.  The enclosure is first-order by
// nature (atoms can hide between cdf samples); the reported value is the
// trapezoid sum, which converges quadratically on smooth parts and
// geometrically on isolated atoms, and is accepted once stable across a
// refinement pass.  Throws NonConvergence if the partition cap is hit first.
SegmentIntegral E_via_segment(const FiltrationExpr& F, const FiltrationExpr& G, const Rat& t,
                              double rel_tol = 1e-7, int max_intervals = 40000);

} // namespace filtlab
