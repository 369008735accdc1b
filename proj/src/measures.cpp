#include "filtlab/measures.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <queue>
#include <random>
#include <tuple>

#include "filtlab/errors.hpp"
#include "filtlab/multiplicity.hpp"

namespace filtlab {

namespace {

Rat dotv(const RatVec& a, const Exponent& b) {
    Rat s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

// Normalized gauge pieces: value = min_j <piece_j, x>.
std::vector<RatVec> normalized_pieces(const UpBody& P) {
    if (P.facets.empty()) throw InvariantError("gauge of the full orthant");
    std::vector<RatVec> out;
    for (const auto& f : P.facets) {
        RatVec a(P.dim);
        for (int i = 0; i < P.dim; ++i) a[i] = f.normal[i] / f.offset;
        out.push_back(std::move(a));
    }
    return out;
}

// Smallest k with min(jump_F, jump_G)(k e_axis) > level.
long min_jump_axis_bound(const FiltrationExpr& F, const FiltrationExpr& G, int axis,
                         const Rat& level) {
    auto mj = [&](long k) {
        Exponent beta(F.dim, 0);
        beta[axis] = k;
        return std::min(jump(F, beta), jump(G, beta));
    };
    long hi = 1;
    while (mj(hi) <= level) {
        hi *= 2;
        if (hi > 1000000) throw InvariantError("measure box search diverged");
    }
    long lo = hi / 2;
    while (lo + 1 < hi) {
        long mid = lo + (hi - lo) / 2;
        if (mj(mid) <= level) lo = mid;
        else hi = mid;
    }
    return hi;
}

template <typename Fn>
void for_box(int dim, const std::vector<long>& B, Fn&& fn) {
    Exponent beta(dim, 0);
    while (true) {
        fn(beta);
        int i = dim - 1;
        while (i >= 0 && beta[i] == B[i]) { beta[i] = 0; --i; }
        if (i < 0) return;
        ++beta[i];
    }
}

} // namespace

Rat gauge_ratio_bound(const UpBody& P0, const UpBody& P1) {
    if (!complement_bounded(P0) || !complement_bounded(P1) || P0.facets.empty() ||
        P1.facets.empty())
        throw UnboundedComplement("gauge_ratio_bound");
    GaugeFunction g0 = gauge_of(P0), g1 = gauge_of(P1);
    // sup g0/g1 = 1 / min_{v in vertices(P0)} g1(v) (g0 = 1 on every vertex
    // of P0; concave min over the level set is attained at a vertex).
    Rat D = 1;
    for (const auto& v : body_vertices(P0)) D = std::max(D, Rat(1 / gauge_value(g1, v)));
    for (const auto& v : body_vertices(P1)) D = std::max(D, Rat(1 / gauge_value(g0, v)));
    return D;
}

std::pair<Rat, Rat> comparability_constants(const FiltrationExpr& F, const FiltrationExpr& G,
                                            const Rat& cert_level) {
    UpBody P0 = limit_body(F);
    UpBody P1 = limit_body(G);
    if (!complement_bounded(P0) || !complement_bounded(P1))
        throw UnboundedComplement("comparability_constants");
    // C: both a_lambda contain m^{ceil(C lambda)} and sit inside m^{ceil(lambda/C)}.
    Rat C = 1;
    for (const UpBody* P : {&P0, &P1}) {
        Rat c_low = support_min(*P, RatVec(P->dim, Rat(1)));
        if (c_low > 0) C = std::max(C, Rat(1 / c_low));
        for (const auto& f : P->facets) {
            Rat mn = f.normal[0];
            for (const Rat& x : f.normal) mn = std::min(mn, x);
            C = std::max(C, Rat(f.offset / mn));
        }
    }
    // D: asymptotic gauge ratio sharpened by the finite jump ratios up to the
    // certification level.
    Rat D = gauge_ratio_bound(P0, P1);
    std::vector<long> B(F.dim);
    for (int i = 0; i < F.dim; ++i) B[i] = min_jump_axis_bound(F, G, i, cert_level);
    JumpCache jc;
    for_box(F.dim, B, [&](const Exponent& beta) {
        Rat jf = jump(F, beta, jc), jg = jump(G, beta, jc);
        if (jg > 1) D = std::max(D, Rat(jf / jg));
        if (jf > 1) D = std::max(D, Rat(jg / jf));
    });
    return {C, D};
}

DiscreteMeasure2D mu_m(const FiltrationExpr& F, const FiltrationExpr& G, long m,
                       const Rat& cutoff) {
    if (m < 1) throw InvariantError("mu_m: m must be >= 1");
    if (F.dim != G.dim) throw DimensionMismatch("mu_m");
    DiscreteMeasure2D out;
    out.m = m;
    out.cutoff = cutoff;
    Rat level = cutoff * m;
    std::vector<long> B(F.dim);
    for (int i = 0; i < F.dim; ++i) B[i] = min_jump_axis_bound(F, G, i, level);
    Rat unit_mass = Rat(factorial(F.dim)) / rat_pow(Rat(m), F.dim);
    std::vector<std::pair<std::pair<Rat, Rat>, Rat>> raw;
    JumpCache jc;
    for_box(F.dim, B, [&](const Exponent& beta) {
        Rat jf = jump(F, beta, jc), jg = jump(G, beta, jc);
        if (std::min(jf, jg) > level) return;
        raw.push_back({{jf / m, jg / m}, unit_mass});
    });
    std::sort(raw.begin(), raw.end());
    for (auto& [pt, mass] : raw) {
        if (!out.atoms.empty() && out.atoms.back().x == pt.first && out.atoms.back().y == pt.second)
            out.atoms.back().mass += mass;
        else
            out.atoms.push_back({pt.first, pt.second, mass});
    }
    // Certify the support-band constant on this atom set: for atoms with an
    // un-normalized jump above 1 the other coordinate is within factor D.
    Rat D = gauge_ratio_bound(limit_body(F), limit_body(G));
    for (const auto& a : out.atoms) {
        Rat l0 = a.x * m, l1 = a.y * m;
        if (l1 > 1) D = std::max(D, Rat(l0 / l1));
        if (l0 > 1) D = std::max(D, Rat(l1 / l0));
    }
    out.D_used = D;
    return out;
}

Rat halfplane_mass(const DiscreteMeasure2D& mu, const Rat& t, const Rat& a) {
    if (a > mu.cutoff)
        throw InvariantError("halfplane_mass: query level exceeds the certified cutoff");
    Rat s = 0;
    for (const auto& atom : mu.atoms)
        if ((1 - t) * atom.x + t * atom.y < a) s += atom.mass;
    return s;
}

Rat H_exact(const FiltrationExpr& F, const FiltrationExpr& G, const Rat& x, const Rat& y) {
    Rat nf = Rat(factorial(F.dim));
    if (x <= 0 && y <= 0) return 0;
    if (x <= 0) return rat_pow(y, F.dim) * nf * covolume(limit_body(G));
    if (y <= 0) return rat_pow(x, F.dim) * nf * covolume(limit_body(F));
    return nf * covolume(intersect_bodies(scale_body(limit_body(F), x), scale_body(limit_body(G), y)));
}

Rat mu_box(const FiltrationExpr& F, const FiltrationExpr& G,
           const Rat& x1, const Rat& x2, const Rat& y1, const Rat& y2) {
    if (x1 > x2 || y1 > y2 || x1 < 0 || y1 < 0) throw InvariantError("mu_box: bad corners");
    return H_exact(F, G, x1, y2) + H_exact(F, G, x2, y1) - H_exact(F, G, x1, y1) -
           H_exact(F, G, x2, y2);
}

Rat mu_halfplane(const FiltrationExpr& F, const FiltrationExpr& G, const Rat& t, const Rat& a) {
    if (a < 0) throw InvariantError("mu_halfplane: a must be >= 0");
    if (a == 0) return 0;
    return rat_pow(a, F.dim) * geodesic_E(F, G, t);
}

Rat tilde_mu_cdf(const FiltrationExpr& F, const FiltrationExpr& G, const Rat& s) {
    if (s < 0 || s > 1) throw InvariantError("tilde_mu_cdf: s must be in [0,1]");
    int n = F.dim;
    if (n > 3) throw InvariantError("tilde_mu_cdf: exact mode supports dimension <= 3");
    auto A = normalized_pieces(limit_body(F));
    auto Bp = normalized_pieces(limit_body(G));
    // On the cell where piece j realizes g0 and piece k realizes g1 the
    // constraints g0 <= s(g0+g1) and g0+g1 < 1 are linear; cells overlap in
    // measure zero.
    Rat total = 0;
    for (size_t j = 0; j < A.size(); ++j)
        for (size_t k = 0; k < Bp.size(); ++k) {
            std::vector<LinIneq> ineqs;
            for (int i = 0; i < n; ++i) {
                RatVec a(n, 0);
                a[i] = -1;
                ineqs.push_back({std::move(a), Rat(0)});
            }
            for (size_t j2 = 0; j2 < A.size(); ++j2) {
                if (j2 == j) continue;
                RatVec a(n);
                for (int i = 0; i < n; ++i) a[i] = A[j][i] - A[j2][i];
                ineqs.push_back({std::move(a), Rat(0)});
            }
            for (size_t k2 = 0; k2 < Bp.size(); ++k2) {
                if (k2 == k) continue;
                RatVec a(n);
                for (int i = 0; i < n; ++i) a[i] = Bp[k][i] - Bp[k2][i];
                ineqs.push_back({std::move(a), Rat(0)});
            }
            {
                RatVec a(n);  // (1-s) g0 - s g1 <= 0
                for (int i = 0; i < n; ++i) a[i] = (1 - s) * A[j][i] - s * Bp[k][i];
                ineqs.push_back({std::move(a), Rat(0)});
            }
            {
                RatVec a(n);  // g0 + g1 <= 1
                for (int i = 0; i < n; ++i) a[i] = A[j][i] + Bp[k][i];
                ineqs.push_back({std::move(a), Rat(1)});
            }
            total += polytope_volume(ineqs, n);
        }
    return Rat(factorial(n)) * total;
}

std::pair<double, double> tilde_mu_cdf_mc(const FiltrationExpr& F, const FiltrationExpr& G,
                                          const Rat& s, std::uint64_t seed, long samples) {
    int n = F.dim;
    UpBody P0 = limit_body(F);
    UpBody P1 = limit_body(G);
    if (!complement_bounded(P0)) throw UnboundedComplement("tilde_mu_cdf_mc");
    // {g0 + g1 < 1} implies g0 < 1, i.e. outside P0, which sits inside a box.
    std::vector<double> B(n, 0.0);
    for (int i = 0; i < n; ++i)
        for (const auto& f : P0.facets)
            B[i] = std::max(B[i], rat_d(f.offset) / rat_d(f.normal[i]));
    auto g0p = normalized_pieces(P0);
    auto g1p = normalized_pieces(P1);
    auto gval = [&](const std::vector<RatVec>& pieces, const std::vector<double>& x) {
        double best = 0;
        bool first = true;
        for (const auto& p : pieces) {
            double v = 0;
            for (int i = 0; i < n; ++i) v += rat_d(p[i]) * x[i];
            if (first || v < best) { best = v; first = false; }
        }
        return best;
    };
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    double sd = rat_d(s);
    long hits = 0;
    std::vector<double> x(n);
    for (long it = 0; it < samples; ++it) {
        for (int i = 0; i < n; ++i) x[i] = uni(rng) * B[i];
        double g0 = gval(g0p, x), g1 = gval(g1p, x);
        if (g0 + g1 < 1.0 && g0 <= sd * (g0 + g1)) ++hits;
    }
    double boxvol = 1;
    for (int i = 0; i < n; ++i) boxvol *= B[i];
    double nf = 1;
    for (int i = 2; i <= n; ++i) nf *= i;
    double p = (double)hits / samples;
    double est = nf * boxvol * p;
    double se = nf * boxvol * std::sqrt(std::max(p * (1 - p), 1e-12) / samples);
    return {est, se};
}

SegmentIntegral E_via_segment(const FiltrationExpr& F, const FiltrationExpr& G, const Rat& t,
                              double rel_tol, int max_intervals) {
    int n = F.dim;
    Rat D = gauge_ratio_bound(limit_body(F), limit_body(G));
    // supp mu~ lies strictly inside [1/(2(D+1)), 1 - 1/(2(D+1))].
    Rat s_lo = Rat(1) / (2 * (D + 1));
    Rat s_hi = 1 - s_lo;
    auto phi = [&](const Rat& z) -> Rat {  // ((1-t)z + t(1-z))^{-n}
        Rat w = t + (1 - 2 * t) * z;
        if (w <= 0) throw InvariantError("segment integrand pole inside partition");
        return 1 / rat_pow(w, n);
    };
    if (tilde_mu_cdf(F, G, s_lo) != 0)
        throw InvariantError("segment measure support outside the certified band");
    Rat total = tilde_mu_cdf(F, G, Rat(1));
    if (tilde_mu_cdf(F, G, s_hi) != total)
        throw InvariantError("segment measure support outside the certified band");
    // Adaptive bisection of the enclosure gap.  Doubles steer the refinement;
    // the reported enclosure is re-summed exactly at the end.
    struct Iv {
        Rat lo, hi, Flo, Fhi, Plo, Phi;
        double gap;
    };
    auto make_iv = [&](Rat lo, Rat hi, Rat Flo, Rat Fhi) {
        Iv iv{std::move(lo), std::move(hi), std::move(Flo), std::move(Fhi), 0, 0, 0.0};
        iv.Plo = phi(iv.lo);
        iv.Phi = phi(iv.hi);
        iv.gap = rat_d(iv.Fhi - iv.Flo) * std::abs(rat_d(iv.Phi - iv.Plo));
        return iv;
    };
    std::vector<Iv> ivs;
    int init = 8;
    Rat prev_s = s_lo, prev_F = 0;
    for (int i = 1; i <= init; ++i) {
        Rat s = s_lo + (s_hi - s_lo) * i / init;
        Rat Fv = (i == init) ? total : tilde_mu_cdf(F, G, s);
        ivs.push_back(make_iv(prev_s, s, prev_F, Fv));
        prev_s = s;
        prev_F = Fv;
    }
    std::vector<int> gen(ivs.size(), 0);
    using Entry = std::tuple<double, size_t, int>;  // (gap, index, generation)
    std::priority_queue<Entry> pq;
    double gapsum = 0;
    for (size_t i = 0; i < ivs.size(); ++i) {
        pq.emplace(ivs[i].gap, i, 0);
        gapsum += ivs[i].gap;
    }
    auto exact_enclosure = [&](Rat& L, Rat& U) {
        L = 0;
        U = 0;
        for (const auto& iv : ivs) {
            Rat dF = iv.Fhi - iv.Flo;
            L += dF * std::min(iv.Plo, iv.Phi);
            U += dF * std::max(iv.Plo, iv.Phi);
        }
    };
    auto trapezoid = [&]() -> Rat {
        Rat T = 0;
        for (const auto& iv : ivs) T += (iv.Fhi - iv.Flo) * (iv.Plo + iv.Phi) / 2;
        return T;
    };
    // The certified enclosure is first-order (an atom can hide between cdf
    // samples), so the value is the trapezoid Stieltjes sum: second-order on
    // smooth parts, geometric on isolated atoms.  Refinement passes halve the
    // gap target until either the enclosure itself meets rel_tol (fully
    // certified) or the trapezoid value is stable across a pass.
    double target = gapsum / 4;
    std::optional<Rat> prev_T;
    for (;;) {
        while (gapsum > target && (int)ivs.size() < max_intervals && !pq.empty()) {
            auto [gap, i, g] = pq.top();
            pq.pop();
            if (g != gen[i]) continue;  // stale entry for a split interval
            Iv iv = std::move(ivs[i]);
            Rat mid = (iv.lo + iv.hi) / 2;
            Rat Fm = tilde_mu_cdf(F, G, mid);
            gapsum -= iv.gap;
            Iv left = make_iv(iv.lo, mid, iv.Flo, Fm);
            Iv right = make_iv(mid, std::move(iv.hi), Fm, std::move(iv.Fhi));
            gapsum += left.gap + right.gap;
            ++gen[i];
            ivs[i] = std::move(left);
            pq.emplace(ivs[i].gap, i, gen[i]);
            ivs.push_back(std::move(right));
            gen.push_back(0);
            pq.emplace(ivs.back().gap, ivs.size() - 1, 0);
        }
        Rat L, U;
        exact_enclosure(L, U);
        Rat T = trapezoid();
        Rat scale = std::max(Rat(abs(L)), Rat(1, 1000000));
        bool certified = U - L <= Rat(rel_tol) * scale;
        bool coarse_ok = U - L <= Rat(1, 100) * scale;
        bool stable = prev_T && Rat(abs(T - *prev_T)) <= Rat(rel_tol) * scale / 4;
        if (certified || (coarse_ok && stable)) {
            SegmentIntegral out;
            out.lower = L;
            out.upper = U;
            out.value = rat_d(T);
            out.error = rat_d((U - L) / 2);
            return out;
        }
        if ((int)ivs.size() >= max_intervals)
            throw NonConvergence("quadrature-nonconvergence: segment partition limit hit");
        prev_T = T;
        target /= 4;
    }
}

} // namespace filtlab
