#pragma once

// Shared generators and brute-force oracles for the test suites.  All
// randomness is seeded per test so failures reproduce.

#include <random>
#include <set>
#include <vector>

#include "filtlab/filtration.hpp"

namespace testutil {

using namespace filtlab;

inline Rat rand_rat(std::mt19937_64& rng, long num_max = 4, long den_max = 3) {
    std::uniform_int_distribution<long> num(1, num_max), den(1, den_max);
    Rat r(num(rng), den(rng));
    r.canonicalize();
    return r;
}

inline RatVec rand_weights(std::mt19937_64& rng, int dim, long num_max = 4, long den_max = 3) {
    RatVec w(dim);
    for (auto& x : w) x = rand_rat(rng, num_max, den_max);
    return w;
}

// Random m-primary staircase ideal: pure powers on every axis plus a few
// interior generators.
inline MonomialIdeal rand_primary_ideal(std::mt19937_64& rng, int dim, long max_exp = 6) {
    std::uniform_int_distribution<long> e(1, max_exp), extra(0, 2);
    std::vector<Exponent> gens;
    for (int i = 0; i < dim; ++i) {
        Exponent g(dim, 0);
        g[i] = e(rng);
        gens.push_back(g);
    }
    long k = extra(rng);
    std::uniform_int_distribution<long> mid(1, max_exp - 1);
    for (long j = 0; j < k; ++j) {
        Exponent g(dim);
        for (int i = 0; i < dim; ++i) g[i] = mid(rng);
        gens.push_back(g);
    }
    return make_ideal(dim, std::move(gens));
}

// Random ideal that may or may not be m-primary (generators in [0, max]^n,
// at least one generator).
inline MonomialIdeal rand_ideal(std::mt19937_64& rng, int dim, long max_exp = 8) {
    std::uniform_int_distribution<long> cnt(1, 4), e(0, max_exp);
    std::vector<Exponent> gens;
    long k = cnt(rng);
    for (long j = 0; j < k; ++j) {
        Exponent g(dim);
        bool all_zero = true;
        for (int i = 0; i < dim; ++i) {
            g[i] = e(rng);
            all_zero = all_zero && g[i] == 0;
        }
        if (all_zero) g[0] = 1;
        gens.push_back(g);
    }
    return make_ideal(dim, std::move(gens));
}

// Random filtration with a convex limit body (no Sum nodes): combinations of
// Val / Pow / Scale / Prod / Inter / MulConst leaves kept shallow.
inline FiltPtr rand_convex_filtration(std::mt19937_64& rng, int dim, int depth = 2) {
    std::uniform_int_distribution<int> kind(0, depth > 0 ? 5 : 1);
    switch (kind(rng)) {
        case 0:
            return F_val(rand_weights(rng, dim));
        case 1:
            return F_pow(rand_primary_ideal(rng, dim, 4));
        case 2:
            return F_scale(rand_rat(rng, 3, 2), rand_convex_filtration(rng, dim, depth - 1));
        case 3:
            return F_prod(F_val(rand_weights(rng, dim)),
                          rand_convex_filtration(rng, dim, depth - 1));
        case 4:
            return F_inter(rand_convex_filtration(rng, dim, depth - 1),
                           rand_convex_filtration(rng, dim, depth - 1));
        default:
            // m-primary multipliers keep every member ideal m-primary, so
            // colengths and axis bounds stay finite
            return F_mulconst(rand_primary_ideal(rng, dim, 2),
                              rand_convex_filtration(rng, dim, depth - 1));
    }
}

// Explicit lattice-point-set oracle for ideal operations inside a box.
inline std::set<Exponent> points_in_box(const MonomialIdeal& I, long box) {
    std::set<Exponent> out;
    Exponent beta(I.dim, 0);
    for (;;) {
        if (member(I, beta)) out.insert(beta);
        int i = I.dim - 1;
        while (i >= 0 && beta[i] == box) { beta[i] = 0; --i; }
        if (i < 0) return out;
        ++beta[i];
    }
}

} // namespace testutil
