#include "filtlab/lattice.hpp"

#include <algorithm>

#include "filtlab/errors.hpp"

namespace filtlab {

namespace {

bool dominates(const Exponent& a, const Exponent& b) {
    // a >= b coordinatewise
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] < b[i]) return false;
    return true;
}

} // namespace

MonomialIdeal make_ideal(int dim, std::vector<Exponent> gens) {
    if (dim < 1) throw InvariantError("ideal dimension must be >= 1");
    for (const auto& g : gens) {
        if ((int)g.size() != dim) throw DimensionMismatch("generator length vs ideal dim");
        for (long e : g)
            if (e < 0) throw InvariantError("negative exponent in generator");
    }
    std::sort(gens.begin(), gens.end());
    gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
    std::vector<Exponent> min;
    for (size_t i = 0; i < gens.size(); ++i) {
        bool redundant = false;
        for (size_t j = 0; j < gens.size() && !redundant; ++j)
            if (i != j && dominates(gens[i], gens[j]) && gens[i] != gens[j]) redundant = true;
        if (!redundant) min.push_back(gens[i]);
    }
    return MonomialIdeal{dim, std::move(min)};
}

MonomialIdeal unit_ideal(int dim) { return make_ideal(dim, {Exponent(dim, 0)}); }
MonomialIdeal zero_ideal(int dim) { return MonomialIdeal{dim, {}}; }

bool is_zero(const MonomialIdeal& I) { return I.gens.empty(); }
bool is_unit(const MonomialIdeal& I) {
    return I.gens.size() == 1 && I.gens[0] == Exponent(I.dim, 0);
}

bool member(const MonomialIdeal& I, const Exponent& beta) {
    if ((int)beta.size() != I.dim) throw DimensionMismatch("member: exponent vs ideal dim");
    for (const auto& g : I.gens)
        if (dominates(beta, g)) return true;
    return false;
}

MonomialIdeal sum(const MonomialIdeal& I, const MonomialIdeal& J) {
    if (I.dim != J.dim) throw DimensionMismatch("sum");
    std::vector<Exponent> g = I.gens;
    g.insert(g.end(), J.gens.begin(), J.gens.end());
    return make_ideal(I.dim, std::move(g));
}

MonomialIdeal intersect(const MonomialIdeal& I, const MonomialIdeal& J) {
    if (I.dim != J.dim) throw DimensionMismatch("intersect");
    std::vector<Exponent> g;
    for (const auto& a : I.gens)
        for (const auto& b : J.gens) {
            Exponent m(I.dim);
            for (int i = 0; i < I.dim; ++i) m[i] = std::max(a[i], b[i]);
            g.push_back(std::move(m));
        }
    return make_ideal(I.dim, std::move(g));
}

MonomialIdeal product(const MonomialIdeal& I, const MonomialIdeal& J) {
    if (I.dim != J.dim) throw DimensionMismatch("product");
    std::vector<Exponent> g;
    for (const auto& a : I.gens)
        for (const auto& b : J.gens) {
            Exponent m(I.dim);
            for (int i = 0; i < I.dim; ++i) m[i] = a[i] + b[i];
            g.push_back(std::move(m));
        }
    return make_ideal(I.dim, std::move(g));
}

MonomialIdeal power(const MonomialIdeal& I, long k) {
    if (k < 1) throw InvariantError("power: exponent must be >= 1");
    MonomialIdeal out = I;
    for (long i = 1; i < k; ++i) out = product(out, I);
    return out;
}

long pure_power_exponent(const MonomialIdeal& I, int axis) {
    long best = -1;
    for (const auto& g : I.gens) {
        bool pure = true;
        for (int i = 0; i < I.dim; ++i)
            if (i != axis && g[i] != 0) { pure = false; break; }
        if (pure && (best < 0 || g[axis] < best)) best = g[axis];
    }
    return best;
}

bool is_m_primary(const MonomialIdeal& I) {
    for (int i = 0; i < I.dim; ++i)
        if (pure_power_exponent(I, i) < 0) return false;
    return true;
}

long colength(const MonomialIdeal& I) {
    if (!is_m_primary(I)) throw NotPrimary("colength is infinite");
    std::vector<long> p(I.dim);
    for (int i = 0; i < I.dim; ++i) {
        p[i] = pure_power_exponent(I, i);
        if (p[i] == 0) return 0;  // 1 is a generator => unit ideal
    }
    // Mark the staircase inside the box [0,p_0) x ... x [0,p_{n-1}) by
    // dynamic programming over the up-closure of the generators.
    std::vector<long> stride(I.dim, 1);
    for (int i = I.dim - 2; i >= 0; --i) stride[i] = stride[i + 1] * p[i + 1];
    long cells = stride[0] * p[0];
    std::vector<char> in(cells, 0);
    for (const auto& g : I.gens) {
        bool inside = true;
        long idx = 0;
        for (int i = 0; i < I.dim; ++i) {
            if (g[i] >= p[i]) { inside = false; break; }
            idx += g[i] * stride[i];
        }
        if (inside) in[idx] = 1;
    }
    Exponent beta(I.dim, 0);
    for (long idx = 0; idx < cells; ++idx) {
        if (!in[idx]) {
            long rem = idx;
            bool up = false;
            for (int i = 0; i < I.dim && !up; ++i) {
                long c = rem / stride[i];
                rem %= stride[i];
                if (c > 0 && in[idx - stride[i]]) up = true;
            }
            if (up) in[idx] = 1;
        }
    }
    long out = 0;
    for (long idx = 0; idx < cells; ++idx)
        if (!in[idx]) ++out;
    return out;
}

bool ideal_contains(const MonomialIdeal& J, const MonomialIdeal& I) {
    if (I.dim != J.dim) throw DimensionMismatch("ideal_contains");
    for (const auto& g : I.gens)
        if (!member(J, g)) return false;
    return true;
}

} // namespace filtlab
