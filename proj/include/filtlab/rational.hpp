#pragma once

// Exact rational scalar layer: parsing/formatting of "p/q" strings, integer
// rounding, and exact sign decisions for sums of n-th roots of rationals.
// Everything downstream (polyhedra, multiplicities, measures) works over Rat.

#include <gmpxx.h>

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace filtlab {

using Rat = mpq_class;
using Int = mpz_class;

// Accepts "p/q" or "p" with optional sign; canonical lowest terms, q > 0.
Rat parse_rat(const std::string& s);

// Canonical serialization, always "p/q" with gcd(p,q)=1, q>0 (e.g. "3/2", "-1/1").
std::string rat_str(const Rat& r);

long rat_floor(const Rat& r);
long rat_ceil(const Rat& r);
double rat_d(const Rat& r);

// r^k for k >= 0 (k = 0 gives 1).
Rat rat_pow(const Rat& r, unsigned long k);

// floor(a^{1/n}) for a >= 0.
Int iroot_floor(const Int& a, unsigned long n);

// The exact rational n-th root of x >= 0, if one exists.
std::optional<Rat> exact_nth_root(const Rat& x, unsigned long n);

// Interval [lo, hi] containing x^{1/n} (x >= 0) with hi - lo <= 2/10^digits.
std::pair<Rat, Rat> nth_root_interval(const Rat& x, unsigned long n, unsigned digits);

// Exact sign (-1, 0, +1) of sum_i coef_i * radicand_i^{1/n} with radicand_i > 0.
// Terms whose radicand ratios are exact rational n-th powers are merged first,
// after which distinct radicals are linearly independent over Q, so the sign of
// a nonzero residue is decided by interval refinement and exact zeros are
// recognized symbolically.  terms: list of (coef, radicand).
int sign_root_combination(unsigned long n, std::vector<std::pair<Rat, Rat>> terms);

} // namespace filtlab
