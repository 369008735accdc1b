#pragma once

// Exact rational geometry of up-closed convex bodies in the positive orthant:
// H-representations, vertex enumeration, covolumes by slicing + triangulation,
// Minkowski sums, gauges, and the Newton-polyhedron bridge from ideals.

#include <optional>
#include <vector>

#include "filtlab/lattice.hpp"
#include "filtlab/rational.hpp"

namespace filtlab {

using RatVec = std::vector<Rat>;

struct Facet {
    RatVec normal;  // canonical: primitive nonnegative integers (stored as Rat)
    Rat offset;     // > 0
    bool operator==(const Facet&) const = default;
};

// P = {x >= 0 : <normal_j, x> >= offset_j for all j}; empty facet list = orthant.
// Always stored in canonical irredundant sorted form, so == is body equality.
struct UpBody {
    int dim = 0;
    std::vector<Facet> facets;
    bool operator==(const UpBody&) const = default;
};

struct GaugePiece {
    RatVec normal;
    Rat scale;  // > 0; the piece contributes <normal, x> / scale
};

// value(x) = min_j <normal_j, x> / scale_j; concave, 1-homogeneous.
struct GaugeFunction {
    int dim = 0;
    std::vector<GaugePiece> pieces;
};

// Validates (normals >= 0 and nonzero, offsets > 0), merges parallel facets,
// removes redundant ones by exact LP, scales normals to primitive integer
// form and sorts.
UpBody make_upbody(int dim, std::vector<Facet> facets);

UpBody orthant_body(int dim);

// True iff the orthant complement of P is bounded (covolume finite).
bool complement_bounded(const UpBody& P);

// Vertices of P (a pointed polyhedron inside the orthant), exact.
std::vector<RatVec> body_vertices(const UpBody& P);

// Exact min of <alpha, x> over P for alpha >= 0 (attained at a vertex).
Rat support_min(const UpBody& P, const RatVec& alpha);

// Exact n-volume of orthant \ P.  Throws UnboundedComplement.
Rat covolume(const UpBody& P);

UpBody minkowski_sum(const UpBody& P, const UpBody& Q);
UpBody intersect_bodies(const UpBody& P, const UpBody& Q);
UpBody scale_body(const UpBody& P, const Rat& c);  // c > 0, yields cP
bool contains(const UpBody& P, const UpBody& Q);   // P superset of Q

// Some c > 0 with P = c*Q, if it exists.
std::optional<Rat> proportional_scale(const UpBody& P, const UpBody& Q);

GaugeFunction gauge_of(const UpBody& P);
Rat gauge_value(const GaugeFunction& g, const RatVec& x);
UpBody body_of(const GaugeFunction& g, const Rat& level);  // {value >= level}

// {x : (1-t) g0(x) + t g1(x) >= 1}; facets are cross-combinations of pieces.
UpBody affine_combination_body(const GaugeFunction& g0, const GaugeFunction& g1, const Rat& t);

// Up-closed hull of a finite point set: conv(points) + orthant, H-form.
UpBody hull_upbody(int dim, const std::vector<RatVec>& points);

// conv(generators) + orthant.  Throws on the zero ideal.
UpBody newton_polyhedron(const MonomialIdeal& I);

// Staircase of all lattice points in newton_polyhedron(I).
MonomialIdeal integral_closure(const MonomialIdeal& I);

// Staircase of lattice points of level * P (level > 0).  Requires bounded
// complement so that the minimal generators live in a finite box.
MonomialIdeal lattice_staircase(const UpBody& P, const Rat& level);

// ---- generic exact polytope helpers (used by covolume and the measures) ----

// One inequality <a, x> <= b.
struct LinIneq {
    RatVec a;
    Rat b;
};

// All vertices of {x : ineqs} (dim <= 4), deduplicated, exact.
std::vector<RatVec> enumerate_vertices(const std::vector<LinIneq>& ineqs, int dim);

// Exact volume of the (assumed bounded) polytope {x : ineqs}; 0 if lower-dim.
Rat polytope_volume(const std::vector<LinIneq>& ineqs, int dim);

// Exact integral of <c, x> + c0 over the polytope.
Rat integrate_affine(const std::vector<LinIneq>& ineqs, int dim, const RatVec& c, const Rat& c0);

// Triangulation of the convex hull of points of full affine dimension d
// (d <= 3); returns index tuples of size d+1.  Lower-dimensional input
// yields an empty list.
std::vector<std::vector<int>> triangulate_points(const std::vector<RatVec>& pts, int d);

// Convex hull of a 2D point set (Andrew's monotone chain), CCW order.
std::vector<RatVec> hull2d(std::vector<RatVec> pts);

// Exact area of a simple CCW polygon.
Rat polygon_area(const std::vector<RatVec>& poly);

// Exact linear algebra used across modules.
std::optional<RatVec> solve_linear(std::vector<RatVec> A, RatVec b);
// One-dimensional nullspace direction of an (m x n) matrix of rank n-1,
// scaled to primitive integers; nullopt when the rank is not n-1.
std::optional<RatVec> nullspace_dir(std::vector<RatVec> A, int dim);

} // namespace filtlab
