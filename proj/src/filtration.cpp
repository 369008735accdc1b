#include "filtlab/filtration.hpp"

#include <algorithm>
#include <set>

#include "filtlab/errors.hpp"

namespace filtlab {

namespace {

constexpr long kAxisSearchCap = 1000000;

FiltPtr make_node(FiltKind kind, int dim) {
    auto p = std::make_shared<FiltrationExpr>();
    p->kind = kind;
    p->dim = dim;
    return p;
}

Rat dotv(const RatVec& a, const Exponent& b) {
    Rat s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

// Minimal lattice points of an up-closed predicate within prod [0, B_i].
template <typename Pred>
MonomialIdeal minimal_points(int dim, const std::vector<long>& B, Pred&& in) {
    std::vector<Exponent> gens;
    Exponent beta(dim, 0);
    while (true) {
        if (in(beta)) {
            bool minimal = true;
            for (int i = 0; i < dim && minimal; ++i) {
                if (beta[i] > 0) {
                    --beta[i];
                    if (in(beta)) minimal = false;
                    ++beta[i];
                }
            }
            if (minimal) gens.push_back(beta);
        }
        int i = dim - 1;
        while (i >= 0 && beta[i] == B[i]) { beta[i] = 0; --i; }
        if (i < 0) break;
        ++beta[i];
    }
    return make_ideal(dim, std::move(gens));
}

const MonomialIdeal& get_power(const FiltrationExpr& F, long k) {
    // F.kind == Pow, k >= 1
    std::lock_guard<std::mutex> lock(F.cache_mutex);
    if (F.power_cache.empty()) F.power_cache.push_back(F.base);
    while ((long)F.power_cache.size() < k)
        F.power_cache.push_back(product(F.power_cache.back(), F.base));
    return F.power_cache[k - 1];
}

} // namespace

FiltPtr F_val(RatVec alpha) {
    if (alpha.empty()) throw InvariantError("Val: empty weight vector");
    for (const Rat& a : alpha)
        if (a <= 0) throw InvariantError("Val: weights must be strictly positive");
    auto p = make_node(FiltKind::Val, (int)alpha.size());
    auto q = std::const_pointer_cast<FiltrationExpr>(p);
    q->weights = std::move(alpha);
    return p;
}

FiltPtr F_pow(MonomialIdeal b) {
    if (!is_m_primary(b)) throw NotPrimary("Pow base must be m-primary");
    auto p = make_node(FiltKind::Pow, b.dim);
    std::const_pointer_cast<FiltrationExpr>(p)->base = std::move(b);
    return p;
}

FiltPtr F_mulconst(MonomialIdeal c, FiltPtr f) {
    if (is_zero(c)) throw InvariantError("MulConst: multiplier must be nonzero");
    if (c.dim != f->dim) throw DimensionMismatch("MulConst");
    auto p = make_node(FiltKind::MulConst, f->dim);
    auto q = std::const_pointer_cast<FiltrationExpr>(p);
    q->base = std::move(c);
    q->left = std::move(f);
    return p;
}

FiltPtr F_scale(Rat r, FiltPtr f) {
    if (r <= 0) throw InvariantError("Scale: factor must be positive");
    auto p = make_node(FiltKind::Scale, f->dim);
    auto q = std::const_pointer_cast<FiltrationExpr>(p);
    q->scalar = std::move(r);
    q->left = std::move(f);
    return p;
}

static FiltPtr binary_node(FiltKind k, FiltPtr f, FiltPtr g) {
    if (f->dim != g->dim) throw DimensionMismatch("binary filtration node");
    auto p = make_node(k, f->dim);
    auto q = std::const_pointer_cast<FiltrationExpr>(p);
    q->left = std::move(f);
    q->right = std::move(g);
    return p;
}

FiltPtr F_prod(FiltPtr f, FiltPtr g) { return binary_node(FiltKind::Prod, std::move(f), std::move(g)); }
FiltPtr F_inter(FiltPtr f, FiltPtr g) { return binary_node(FiltKind::Inter, std::move(f), std::move(g)); }
FiltPtr F_sum(FiltPtr f, FiltPtr g) { return binary_node(FiltKind::Sum, std::move(f), std::move(g)); }

FiltPtr F_geo(FiltPtr f, FiltPtr g, Rat t) {
    if (t < 0 || t > 1) throw InvariantError("Geo: t must be in [0,1]");
    if (has_sum_node(*f) || has_sum_node(*g))
        throw SumNotConvex("Geo operands must have convex limit bodies");
    auto p = binary_node(FiltKind::Geo, std::move(f), std::move(g));
    std::const_pointer_cast<FiltrationExpr>(p)->scalar = std::move(t);
    return p;
}

bool has_sum_node(const FiltrationExpr& F) {
    if (F.kind == FiltKind::Sum) return true;
    if (F.left && has_sum_node(*F.left)) return true;
    if (F.right && has_sum_node(*F.right)) return true;
    return false;
}

static Rat jump_impl(const FiltrationExpr& F, const Exponent& beta, JumpCache* cache);

// Only the kinds whose jump scans many child points are worth the map lookup.
static bool jump_cacheable(FiltKind k) {
    return k == FiltKind::Pow || k == FiltKind::MulConst || k == FiltKind::Prod;
}

static Rat jump_node(const FiltrationExpr& F, const Exponent& beta, JumpCache* cache) {
    switch (F.kind) {
        case FiltKind::Val:
            return dotv(F.weights, beta);
        case FiltKind::Pow: {
            // jump <= gauge of NP(base) at beta, so scan downward from there.
            const LimitRegion& R = limit_region(F);
            const UpBody& np = R.parts[0];
            if (np.facets.empty()) throw InvariantError("Pow base has orthant Newton polyhedron");
            Rat g;
            bool first = true;
            for (const auto& fct : np.facets) {
                Rat s = 0;
                for (int i = 0; i < F.dim; ++i) s += fct.normal[i] * beta[i];
                s /= fct.offset;
                if (first || s < g) { g = s; first = false; }
            }
            long k = rat_floor(g);
            while (k > 0 && !member(get_power(F, k), beta)) --k;
            return Rat(k);
        }
        case FiltKind::MulConst: {
            Rat best = 0;
            for (const auto& g : F.base.gens) {
                bool leq = true;
                for (int i = 0; i < F.dim; ++i)
                    if (g[i] > beta[i]) { leq = false; break; }
                if (!leq) continue;
                Exponent rem(F.dim);
                for (int i = 0; i < F.dim; ++i) rem[i] = beta[i] - g[i];
                best = std::max(best, jump_impl(*F.left, rem, cache));
            }
            return best;
        }
        case FiltKind::Scale:
            return jump_impl(*F.left, beta, cache) / F.scalar;
        case FiltKind::Prod: {
            // max over splittings beta = beta' + beta'' of min of child jumps
            Rat best = 0;
            Exponent b1(F.dim, 0);
            while (true) {
                Exponent b2(F.dim);
                for (int i = 0; i < F.dim; ++i) b2[i] = beta[i] - b1[i];
                best = std::max(best, std::min(jump_impl(*F.left, b1, cache),
                                               jump_impl(*F.right, b2, cache)));
                int i = F.dim - 1;
                while (i >= 0 && b1[i] == beta[i]) { b1[i] = 0; --i; }
                if (i < 0) break;
                ++b1[i];
            }
            return best;
        }
        case FiltKind::Inter:
            return std::min(jump_impl(*F.left, beta, cache), jump_impl(*F.right, beta, cache));
        case FiltKind::Sum:
            return std::max(jump_impl(*F.left, beta, cache), jump_impl(*F.right, beta, cache));
        case FiltKind::Geo:
            return (1 - F.scalar) * jump_impl(*F.left, beta, cache) +
                   F.scalar * jump_impl(*F.right, beta, cache);
    }
    throw std::logic_error("unreachable");
}

static Rat jump_impl(const FiltrationExpr& F, const Exponent& beta, JumpCache* cache) {
    if (!cache || !jump_cacheable(F.kind)) return jump_node(F, beta, cache);
    auto key = std::make_pair(&F, beta);
    auto it = cache->memo.find(key);
    if (it != cache->memo.end()) return it->second;
    Rat v = jump_node(F, beta, cache);
    return cache->memo.emplace(std::move(key), std::move(v)).first->second;
}

Rat jump(const FiltrationExpr& F, const Exponent& beta) {
    if ((int)beta.size() != F.dim) throw DimensionMismatch("jump");
    return jump_impl(F, beta, nullptr);
}

Rat jump(const FiltrationExpr& F, const Exponent& beta, JumpCache& cache) {
    if ((int)beta.size() != F.dim) throw DimensionMismatch("jump");
    return jump_impl(F, beta, &cache);
}

long pure_power_bound(const FiltrationExpr& F, int axis, const Rat& lambda) {
    if (lambda <= 0) return 0;
    auto jump_axis = [&](long k) {
        Exponent beta(F.dim, 0);
        beta[axis] = k;
        return jump(F, beta);
    };
    long hi = 1;
    while (jump_axis(hi) < lambda) {
        hi *= 2;
        if (hi > kAxisSearchCap)
            throw InvariantError("pure_power_bound: axis search diverged (filtration not linearly bounded?)");
    }
    long lo = hi / 2;  // jump(lo) < lambda (or lo = 0)
    while (lo + 1 < hi) {
        long mid = lo + (hi - lo) / 2;
        if (jump_axis(mid) < lambda) lo = mid;
        else hi = mid;
    }
    return hi;
}

MonomialIdeal evaluate(const FiltrationExpr& F, const Rat& lambda) {
    if (lambda < 0) throw InvariantError("evaluate: lambda must be >= 0");
    if (lambda == 0) return unit_ideal(F.dim);
    switch (F.kind) {
        case FiltKind::Val: {
            std::vector<long> B(F.dim);
            for (int i = 0; i < F.dim; ++i) B[i] = rat_ceil(lambda / F.weights[i]);
            return minimal_points(F.dim, B,
                                  [&](const Exponent& b) { return dotv(F.weights, b) >= lambda; });
        }
        case FiltKind::Pow:
            return get_power(F, rat_ceil(lambda));
        case FiltKind::MulConst:
            return product(F.base, evaluate(*F.left, lambda));
        case FiltKind::Scale:
            return evaluate(*F.left, F.scalar * lambda);
        case FiltKind::Prod:
            return product(evaluate(*F.left, lambda), evaluate(*F.right, lambda));
        case FiltKind::Inter:
            return intersect(evaluate(*F.left, lambda), evaluate(*F.right, lambda));
        case FiltKind::Sum:
            return sum(evaluate(*F.left, lambda), evaluate(*F.right, lambda));
        case FiltKind::Geo: {
            if (F.scalar == 0) return evaluate(*F.left, lambda);
            if (F.scalar == 1) return evaluate(*F.right, lambda);
            std::vector<long> B(F.dim);
            for (int i = 0; i < F.dim; ++i) B[i] = pure_power_bound(F, i, lambda);
            return minimal_points(F.dim, B, [&](const Exponent& b) { return jump(F, b) >= lambda; });
        }
    }
    throw std::logic_error("unreachable");
}

MonomialIdeal evaluate_geodesic_direct(const FiltrationExpr& F, const FiltrationExpr& G,
                                       const Rat& t, const Rat& lambda) {
    if (t <= 0 || t >= 1) throw InvariantError("evaluate_geodesic_direct: t must be in (0,1)");
    if (lambda <= 0) throw InvariantError("evaluate_geodesic_direct: lambda must be positive");
    Rat mu_max = lambda / (1 - t);
    std::vector<Rat> mus = jumping_numbers(F, mu_max);
    mus.push_back(0);
    mus.push_back(mu_max);
    std::sort(mus.begin(), mus.end());
    mus.erase(std::unique(mus.begin(), mus.end()), mus.end());
    MonomialIdeal acc = zero_ideal(F.dim);
    for (const Rat& mu : mus) {
        Rat nu = (lambda - (1 - t) * mu) / t;
        acc = sum(acc, intersect(evaluate(F, mu), evaluate(G, nu)));
    }
    return acc;
}

// Superset of the jump values of F in [0, bound], computed structurally:
// min/max of child jumps is always a child jump value, so only Val (lattice
// dot products) and Geo (pairwise combinations) generate new values.  Avoids
// enumerating jump() over boxes, which is expensive for Prod nodes.
static void jump_value_candidates(const FiltrationExpr& F, const Rat& bound,
                                  std::set<Rat>& out) {
    switch (F.kind) {
        case FiltKind::Val: {
            std::vector<long> B(F.dim);
            for (int i = 0; i < F.dim; ++i) B[i] = rat_floor(bound / F.weights[i]);
            Exponent beta(F.dim, 0);
            while (true) {
                Rat v = dotv(F.weights, beta);
                if (v <= bound) out.insert(v);
                int i = F.dim - 1;
                while (i >= 0 && beta[i] == B[i]) { beta[i] = 0; --i; }
                if (i < 0) break;
                ++beta[i];
            }
            return;
        }
        case FiltKind::Pow: {
            for (long k = 0; Rat(k) <= bound; ++k) out.insert(Rat(k));
            return;
        }
        case FiltKind::MulConst:
            jump_value_candidates(*F.left, bound, out);
            out.insert(Rat(0));
            return;
        case FiltKind::Scale: {
            std::set<Rat> inner;
            jump_value_candidates(*F.left, bound * F.scalar, inner);
            for (const Rat& v : inner) out.insert(Rat(v / F.scalar));
            return;
        }
        case FiltKind::Prod:
        case FiltKind::Inter:
        case FiltKind::Sum:
            jump_value_candidates(*F.left, bound, out);
            jump_value_candidates(*F.right, bound, out);
            return;
        case FiltKind::Geo: {
            std::set<Rat> a, b;
            jump_value_candidates(*F.left, bound / (1 - F.scalar), a);
            jump_value_candidates(*F.right, bound / F.scalar, b);
            for (const Rat& u : a)
                for (const Rat& v : b) {
                    Rat w = (1 - F.scalar) * u + F.scalar * v;
                    if (w <= bound) out.insert(std::move(w));
                }
            return;
        }
    }
    throw std::logic_error("unreachable");
}

std::vector<Rat> jumping_numbers(const FiltrationExpr& F, const Rat& bound) {
    if (bound <= 0) throw InvariantError("jumping_numbers: bound must be positive");
    // candidates past the bound supply the "next level" for the change test
    Rat ext = 2 * bound;
    std::set<Rat> cand;
    jump_value_candidates(F, ext, cand);
    std::vector<Rat> sorted(cand.begin(), cand.end());
    std::vector<Rat> vals;
    for (size_t i = 0; i < sorted.size(); ++i) {
        if (sorted[i] <= 0 || sorted[i] > bound) continue;
        // a jump value is where the ideal actually changes; evaluation is
        // constant between consecutive candidates
        Rat next = (i + 1 < sorted.size()) ? sorted[i + 1] : ext;
        if (next == sorted[i]) continue;
        if (evaluate(F, sorted[i]) != evaluate(F, next)) vals.push_back(sorted[i]);
    }
    return vals;
}

const LimitRegion& limit_region(const FiltrationExpr& F) {
    {
        std::lock_guard<std::mutex> lock(F.cache_mutex);
        if (F.limit_cache) return *F.limit_cache;
    }
    LimitRegion R;
    switch (F.kind) {
        case FiltKind::Val: {
            R.parts.push_back(make_upbody(F.dim, {{F.weights, Rat(1)}}));
            break;
        }
        case FiltKind::Pow:
            R.parts.push_back(newton_polyhedron(F.base));
            break;
        case FiltKind::MulConst:
            R = limit_region(*F.left);  // bounded perturbations vanish asymptotically
            break;
        case FiltKind::Scale: {
            R = limit_region(*F.left);
            for (auto& P : R.parts) P = scale_body(P, F.scalar);
            break;
        }
        case FiltKind::Prod: {
            const auto& L = limit_region(*F.left);
            const auto& Rr = limit_region(*F.right);
            if (L.is_union() || Rr.is_union())
                throw SumNotConvex("Prod over a union limit region");
            R.parts.push_back(minkowski_sum(L.parts[0], Rr.parts[0]));
            break;
        }
        case FiltKind::Inter: {
            const auto& L = limit_region(*F.left);
            const auto& Rr = limit_region(*F.right);
            if (L.is_union() || Rr.is_union())
                throw SumNotConvex("Inter over a union limit region");
            R.parts.push_back(intersect_bodies(L.parts[0], Rr.parts[0]));
            break;
        }
        case FiltKind::Sum: {
            const auto& L = limit_region(*F.left);
            const auto& Rr = limit_region(*F.right);
            for (const auto& P : L.parts) R.parts.push_back(P);
            for (const auto& P : Rr.parts) R.parts.push_back(P);
            if (R.parts.size() > 2) throw SumNotConvex("only binary Sum unions are supported");
            break;
        }
        case FiltKind::Geo: {
            if (F.scalar == 0) { R = limit_region(*F.left); break; }
            if (F.scalar == 1) { R = limit_region(*F.right); break; }
            UpBody P0 = limit_body(*F.left);
            UpBody P1 = limit_body(*F.right);
            R.parts.push_back(affine_combination_body(gauge_of(P0), gauge_of(P1), F.scalar));
            break;
        }
    }
    std::lock_guard<std::mutex> lock(F.cache_mutex);
    if (!F.limit_cache) F.limit_cache = std::move(R);
    return *F.limit_cache;
}

UpBody limit_body(const FiltrationExpr& F) {
    const LimitRegion& R = limit_region(F);
    if (R.is_union()) throw SumNotConvex("limit body of a Sum filtration is a union");
    return R.parts[0];
}

Rat covolume_region(const LimitRegion& R) {
    if (!R.is_union()) return covolume(R.parts[0]);
    return covolume(R.parts[0]) + covolume(R.parts[1]) -
           covolume(intersect_bodies(R.parts[0], R.parts[1]));
}

SaturationResult saturate(const FiltrationExpr& F, const Rat& lambda) {
    if (lambda <= 0) throw InvariantError("saturate: lambda must be positive");
    const LimitRegion& R = limit_region(F);
    SaturationResult out;
    UpBody P = R.parts[0];
    if (R.is_union()) {
        // Saturation sees only valuation asymptotics, which cannot separate a
        // union from its convex hull; flag it.
        std::vector<RatVec> verts = body_vertices(R.parts[0]);
        auto v2 = body_vertices(R.parts[1]);
        verts.insert(verts.end(), v2.begin(), v2.end());
        P = hull_upbody(F.dim, verts);
        out.used_union_hull = true;
    }
    out.ideal = lattice_staircase(P, lambda);
    return out;
}

namespace {

// Minimal-generator box bound for an up-closed region cut out by facet
// conditions <nu, beta> >= threshold(nu): a minimal generator's i-th
// coordinate is at most max over facets with nu_i > 0 of threshold/nu_i + 1.
long mingen_bound(const std::vector<std::pair<RatVec, Rat>>& facets, int axis) {
    Rat best = 0;
    for (const auto& [nu, thr] : facets)
        if (nu[axis] > 0) best = std::max(best, Rat(thr / nu[axis]));
    return rat_ceil(best) + 1;
}

} // namespace

ReesClosureResult rees_closure(const FiltrationExpr& F, long m, long r_max) {
    if (m < 1 || r_max < 1) throw InvariantError("rees_closure: m and r_max must be >= 1");
    if (F.kind == FiltKind::Val)
        return {evaluate(F, Rat(m)), "exact"};
    if (F.kind == FiltKind::Pow)
        return {integral_closure(get_power(F, m)), "exact"};
    if (F.kind == FiltKind::MulConst && F.left->kind == FiltKind::Pow) {
        // NP(a_rm) = NP(c) + rm NP(b); the normal fan of the sum is the same
        // for every r, so membership of beta for some r reduces per facet
        // normal nu of NP(c) + m NP(b) to:
        //   <nu,beta> > min_{m NP(b)} nu, or equality with min_{NP(c)} nu = 0.
        UpBody npc = newton_polyhedron(F.base);
        UpBody npbm = scale_body(newton_polyhedron(F.left->base), Rat(m));
        UpBody q1 = minkowski_sum(npc, npbm);
        std::vector<std::pair<RatVec, Rat>> conds;  // (normal, smb); smc == 0 marker via offset
        std::vector<Rat> smcs;
        for (const auto& f : q1.facets) {
            conds.push_back({f.normal, support_min(npbm, f.normal)});
            smcs.push_back(support_min(npc, f.normal));
        }
        auto in_closure = [&](const Exponent& beta) {
            for (size_t j = 0; j < conds.size(); ++j) {
                Rat s = 0;
                for (int i = 0; i < F.dim; ++i) s += conds[j].first[i] * beta[i];
                if (s > conds[j].second) continue;
                if (s == conds[j].second && smcs[j] == 0) continue;
                return false;
            }
            return true;
        };
        std::vector<long> B(F.dim);
        for (int i = 0; i < F.dim; ++i) B[i] = mingen_bound(conds, i);
        return {minimal_points(F.dim, B, in_closure), "exact"};
    }
    // Bounded search: beta in a'_m iff r*beta lies in NP(a_{rm}) for some
    // r <= r_max.
    std::vector<UpBody> nps;
    for (long r = 1; r <= r_max; ++r) nps.push_back(newton_polyhedron(evaluate(F, Rat(r * m))));
    auto in_some = [&](const Exponent& beta) {
        for (long r = 1; r <= r_max; ++r) {
            bool ok = true;
            for (const auto& f : nps[r - 1].facets) {
                Rat s = 0;
                for (int i = 0; i < F.dim; ++i) s += f.normal[i] * beta[i];
                if (r * s < f.offset) { ok = false; break; }
            }
            if (ok) return true;
        }
        return false;
    };
    std::vector<long> B(F.dim, 1);
    for (int i = 0; i < F.dim; ++i) {
        long b = 1;
        for (long r = 1; r <= r_max; ++r) {
            std::vector<std::pair<RatVec, Rat>> facets;
            for (const auto& f : nps[r - 1].facets) facets.push_back({f.normal, f.offset / r});
            b = std::max(b, mingen_bound(facets, i));
        }
        B[i] = b;
    }
    return {minimal_points(F.dim, B, in_some), "bounded-search"};
}

Rat val_of_filtration(const RatVec& alpha, const FiltrationExpr& F) {
    for (const Rat& a : alpha)
        if (a <= 0) throw InvariantError("val_of_filtration: alpha must be strictly positive");
    const LimitRegion& R = limit_region(F);
    Rat best;
    bool first = true;
    for (const auto& P : R.parts) {
        Rat s = support_min(P, alpha);
        if (first || s < best) { best = s; first = false; }
    }
    return best;
}

LinearBoundedness is_linearly_bounded(const FiltrationExpr& F) {
    const LimitRegion& R = limit_region(F);
    LinearBoundedness out{true, Rat(0)};
    for (const auto& P : R.parts)
        if (!complement_bounded(P)) out.bounded = false;
    if (out.bounded) out.witness = val_of_filtration(RatVec(F.dim, Rat(1)), F);
    return out;
}

} // namespace filtlab
