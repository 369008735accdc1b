#pragma once

// The m-filtration expression language: evaluation at any index, jump
// functions, limit bodies, saturation, Rees-algebra closure, geodesics.

#include <map>
#include <memory>
#include <mutex>
#include <utility>
#include <optional>
#include <string>
#include <vector>

#include "filtlab/lattice.hpp"
#include "filtlab/polyhedra.hpp"
#include "filtlab/rational.hpp"

namespace filtlab {

enum class FiltKind { Val, Pow, MulConst, Scale, Prod, Inter, Sum, Geo };

struct FiltrationExpr;
using FiltPtr = std::shared_ptr<const FiltrationExpr>;

// Limit region: a single convex body, or (for Sum) a union of two.
struct LimitRegion {
    std::vector<UpBody> parts;  // size 1 or 2
    bool is_union() const { return parts.size() > 1; }
};

struct FiltrationExpr {
    FiltKind kind;
    int dim = 0;
    RatVec weights;            // Val
    MonomialIdeal base;        // Pow (m-primary) / MulConst multiplier (nonzero)
    Rat scalar;                // Scale factor r > 0, or Geo parameter t in [0,1]
    FiltPtr left, right;       // children

    // caches (computed lazily, guarded)
    mutable std::mutex cache_mutex;
    mutable std::optional<LimitRegion> limit_cache;
    mutable std::vector<MonomialIdeal> power_cache;  // Pow only: base^1, base^2, ...
};

FiltPtr F_val(RatVec alpha);
FiltPtr F_pow(MonomialIdeal b);
FiltPtr F_mulconst(MonomialIdeal c, FiltPtr f);
FiltPtr F_scale(Rat r, FiltPtr f);
FiltPtr F_prod(FiltPtr f, FiltPtr g);
FiltPtr F_inter(FiltPtr f, FiltPtr g);
FiltPtr F_sum(FiltPtr f, FiltPtr g);
FiltPtr F_geo(FiltPtr f, FiltPtr g, Rat t);  // throws SumNotConvex on Sum operands

bool has_sum_node(const FiltrationExpr& F);

// The ideal a_lambda (lambda >= 0; lambda = 0 gives the unit ideal).
MonomialIdeal evaluate(const FiltrationExpr& F, const Rat& lambda);

// Largest lambda with x^beta in a_lambda.
Rat jump(const FiltrationExpr& F, const Exponent& beta);

// Memoization for jump over box enumerations: Pow/MulConst/Prod nodes scan
// many child points per query, so loops that revisit nearby exponents should
// share a cache.  Keyed by node identity; not safe to share across threads.
struct JumpCache {
    std::map<std::pair<const FiltrationExpr*, Exponent>, Rat> memo;
};
Rat jump(const FiltrationExpr& F, const Exponent& beta, JumpCache& cache);

// Smallest integer k with jump(F, k*e_axis) >= lambda.
long pure_power_bound(const FiltrationExpr& F, int axis, const Rat& lambda);

// Brute-force oracle for geodesic evaluation: sum over lambda = (1-t)mu + t*nu
// of a_{mu,F} intersect a_{nu,G}.
MonomialIdeal evaluate_geodesic_direct(const FiltrationExpr& F, const FiltrationExpr& G,
                                       const Rat& t, const Rat& lambda);

// All jumping numbers in (0, bound].
std::vector<Rat> jumping_numbers(const FiltrationExpr& F, const Rat& bound);

// Limit region by structural recursion; cached per node.
const LimitRegion& limit_region(const FiltrationExpr& F);

// Convex limit body; throws SumNotConvex for union regions.
UpBody limit_body(const FiltrationExpr& F);

struct SaturationResult {
    MonomialIdeal ideal;
    bool used_union_hull = false;  // SumNotConvex situation: convex hull taken
};

// Lattice points of lambda * limit_body(F).
SaturationResult saturate(const FiltrationExpr& F, const Rat& lambda);

struct ReesClosureResult {
    MonomialIdeal ideal;
    std::string certainty;  // "exact" or "bounded-search"
};

// a'_m = {beta : exists r with r*beta in NP(a_{rm})}; closed form for Val /
// Pow / MulConst-over-Pow descriptors, bounded search up to r_max otherwise.
ReesClosureResult rees_closure(const FiltrationExpr& F, long m, long r_max);

// v_alpha(a_bullet) = support minimum of the limit region.
Rat val_of_filtration(const RatVec& alpha, const FiltrationExpr& F);

struct LinearBoundedness {
    bool bounded;
    Rat witness;  // support_min(limit body, all-ones) when bounded
};

LinearBoundedness is_linearly_bounded(const FiltrationExpr& F);

// Covolume of the limit region (inclusion-exclusion across a binary union).
Rat covolume_region(const LimitRegion& R);

} // namespace filtlab
