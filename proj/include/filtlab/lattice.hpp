#pragma once

// Staircase monomial ideals in n variables, represented by their minimal
// generating antichain.  All operations re-minimize eagerly so that equality
// is structural equality of canonical generator lists.

#include <vector>

#include "filtlab/rational.hpp"

namespace filtlab {

// Exponent vector of a monomial x^beta; length = ambient dimension.
using Exponent = std::vector<long>;

struct MonomialIdeal {
    int dim = 0;
    // Minimal generators: coordinatewise antichain, sorted lexicographically.
    // Empty list = zero ideal; single generator 0 = unit ideal.
    std::vector<Exponent> gens;

    bool operator==(const MonomialIdeal&) const = default;
};

// Validates entries (>= 0, lengths match), drops dominated generators, sorts.
MonomialIdeal make_ideal(int dim, std::vector<Exponent> gens);

MonomialIdeal unit_ideal(int dim);
MonomialIdeal zero_ideal(int dim);

bool is_zero(const MonomialIdeal& I);
bool is_unit(const MonomialIdeal& I);

bool member(const MonomialIdeal& I, const Exponent& beta);

MonomialIdeal sum(const MonomialIdeal& I, const MonomialIdeal& J);
MonomialIdeal intersect(const MonomialIdeal& I, const MonomialIdeal& J);
MonomialIdeal product(const MonomialIdeal& I, const MonomialIdeal& J);
MonomialIdeal power(const MonomialIdeal& I, long k);  // k >= 1

// True iff every axis carries a pure-power generator (finite colength).
// The unit ideal counts as m-primary (colength 0); the zero ideal does not.
bool is_m_primary(const MonomialIdeal& I);

// Exact number of lattice points outside the staircase; throws NotPrimary
// when infinite.
long colength(const MonomialIdeal& I);

// Smallest e with e * unit_vector(axis) in I, or -1 if none exists.
long pure_power_exponent(const MonomialIdeal& I, int axis);

// Containment of ideals as sets (I subset of J), via generator membership.
bool ideal_contains(const MonomialIdeal& J, const MonomialIdeal& I);

} // namespace filtlab
