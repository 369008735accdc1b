#include "filtlab/polyhedra.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "filtlab/errors.hpp"

namespace filtlab {

namespace {

Rat dot(const RatVec& a, const RatVec& b) {
    Rat s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

// Determinant by fraction-free-ish Gaussian elimination on rationals.
Rat det(std::vector<RatVec> M) {
    int n = (int)M.size();
    Rat d = 1;
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int r = col; r < n; ++r)
            if (M[r][col] != 0) { piv = r; break; }
        if (piv < 0) return 0;
        if (piv != col) { std::swap(M[piv], M[col]); d = -d; }
        d *= M[col][col];
        for (int r = col + 1; r < n; ++r) {
            if (M[r][col] == 0) continue;
            Rat f = M[r][col] / M[col][col];
            for (int c = col; c < n; ++c) M[r][c] -= f * M[col][c];
        }
    }
    return d;
}

// Row-reduce in place; returns pivot column per row (echelon), rank = #pivots.
int row_echelon(std::vector<RatVec>& M, int cols, std::vector<int>& pivot_cols) {
    int rows = (int)M.size();
    int rank = 0;
    pivot_cols.clear();
    for (int col = 0; col < cols && rank < rows; ++col) {
        int piv = -1;
        for (int r = rank; r < rows; ++r)
            if (M[r][col] != 0) { piv = r; break; }
        if (piv < 0) continue;
        std::swap(M[piv], M[rank]);
        Rat inv = M[rank][col];
        for (int c = col; c < cols; ++c) M[rank][c] /= inv;
        for (int r = 0; r < rows; ++r) {
            if (r == rank || M[r][col] == 0) continue;
            Rat f = M[r][col];
            for (int c = col; c < cols; ++c) M[r][c] -= f * M[rank][c];
        }
        pivot_cols.push_back(col);
        ++rank;
    }
    return rank;
}

void scale_to_primitive(RatVec& v) {
    Int l = 1;
    for (const Rat& x : v) {
        Rat c = x;
        c.canonicalize();
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den().get_mpz_t());
    }
    Int g = 0;
    std::vector<Int> ints;
    ints.reserve(v.size());
    for (const Rat& x : v) {
        Int z = Int(Rat(x * l).get_num());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), z.get_mpz_t());
        ints.push_back(z);
    }
    if (g == 0) return;  // zero vector
    for (size_t i = 0; i < v.size(); ++i) v[i] = Rat(ints[i] / g);
}

// Canonical primitive form: scale (normal, offset) together so the normal is
// primitive-integer.
Facet canonical_facet(Facet f) {
    Int l = 1;
    for (const Rat& x : f.normal) {
        Rat c = x;
        c.canonicalize();
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den().get_mpz_t());
    }
    Int g = 0;
    for (const Rat& x : f.normal) {
        Int z = Int(Rat(x * l).get_num());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), z.get_mpz_t());
    }
    if (g == 0) return f;
    Rat factor = Rat(l, g);
    for (Rat& x : f.normal) { x *= factor; x.canonicalize(); }
    f.offset *= factor;
    f.offset.canonicalize();
    return f;
}

bool facet_less(const Facet& a, const Facet& b) {
    if (a.normal != b.normal) return std::lexicographical_compare(
        a.normal.begin(), a.normal.end(), b.normal.begin(), b.normal.end());
    return a.offset < b.offset;
}

std::vector<RatVec> vertices_of_facets(int dim, const std::vector<Facet>& facets) {
    std::vector<LinIneq> ineqs;
    for (const auto& f : facets) {
        RatVec a(dim);
        for (int i = 0; i < dim; ++i) a[i] = -f.normal[i];
        ineqs.push_back({std::move(a), -f.offset});
    }
    for (int i = 0; i < dim; ++i) {
        RatVec a(dim, 0);
        a[i] = -1;
        ineqs.push_back({std::move(a), Rat(0)});
    }
    return enumerate_vertices(ineqs, dim);
}

Rat support_min_facets(int dim, const std::vector<Facet>& facets, const RatVec& alpha) {
    if (facets.empty()) return 0;  // orthant, minimized at the origin
    auto verts = vertices_of_facets(dim, facets);
    Rat best;
    bool first = true;
    for (const auto& v : verts) {
        Rat s = dot(alpha, v);
        if (first || s < best) { best = s; first = false; }
    }
    if (first) throw InvariantError("body has no vertices");
    return best;
}

// 2D angular comparison around a center point, for fan triangulation.
struct AngularLess {
    RatVec c;
    int ix, iy;  // which coordinates form the plane
    bool half(const RatVec& p) const {
        Rat dy = p[iy] - c[iy];
        if (dy != 0) return dy < 0;
        return p[ix] - c[ix] < 0;
    }
    bool operator()(const RatVec& a, const RatVec& b) const {
        bool ha = half(a), hb = half(b);
        if (ha != hb) return !ha && hb ? true : false;
        Rat cross = (a[ix] - c[ix]) * (b[iy] - c[iy]) - (a[iy] - c[iy]) * (b[ix] - c[ix]);
        return cross > 0;
    }
};

} // namespace

std::optional<RatVec> solve_linear(std::vector<RatVec> A, RatVec b) {
    int n = (int)A.size();
    for (int i = 0; i < n; ++i) A[i].push_back(b[i]);
    std::vector<int> piv;
    int rank = row_echelon(A, n + 1, piv);
    if (rank < n) return std::nullopt;
    for (int c : piv)
        if (c >= n) return std::nullopt;  // pivot in the augmented column: inconsistent
    RatVec x(n);
    for (int r = 0; r < n; ++r) x[piv[r]] = A[r][n];
    return x;
}

std::optional<RatVec> nullspace_dir(std::vector<RatVec> A, int dim) {
    std::vector<int> piv;
    int rank = row_echelon(A, dim, piv);
    if (rank != dim - 1) return std::nullopt;
    std::vector<char> is_piv(dim, 0);
    for (int c : piv) is_piv[c] = 1;
    int free_col = -1;
    for (int c = 0; c < dim; ++c)
        if (!is_piv[c]) { free_col = c; break; }
    RatVec v(dim, 0);
    v[free_col] = 1;
    for (int r = 0; r < rank; ++r) v[piv[r]] = -A[r][free_col];
    scale_to_primitive(v);
    return v;
}

std::vector<RatVec> enumerate_vertices(const std::vector<LinIneq>& ineqs, int dim) {
    int m = (int)ineqs.size();
    std::vector<RatVec> verts;
    if (m < dim) return verts;
    std::vector<int> idx(dim);
    std::iota(idx.begin(), idx.end(), 0);
    auto advance = [&]() {
        int i = dim - 1;
        while (i >= 0 && idx[i] == m - dim + i) --i;
        if (i < 0) return false;
        ++idx[i];
        for (int j = i + 1; j < dim; ++j) idx[j] = idx[j - 1] + 1;
        return true;
    };
    do {
        std::vector<RatVec> A(dim);
        RatVec b(dim);
        for (int r = 0; r < dim; ++r) {
            A[r] = ineqs[idx[r]].a;
            b[r] = ineqs[idx[r]].b;
        }
        auto x = solve_linear(std::move(A), std::move(b));
        if (!x) continue;
        bool feasible = true;
        for (const auto& q : ineqs)
            if (dot(q.a, *x) > q.b) { feasible = false; break; }
        if (feasible) verts.push_back(std::move(*x));
    } while (advance());
    std::sort(verts.begin(), verts.end());
    verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
    return verts;
}

std::vector<std::vector<int>> triangulate_points(const std::vector<RatVec>& pts, int d) {
    std::vector<std::vector<int>> out;
    int n = (int)pts.size();
    if (n < d + 1) return out;
    {
        // affine rank check
        std::vector<RatVec> M;
        for (int i = 1; i < n; ++i) {
            RatVec r(d);
            for (int c = 0; c < d; ++c) r[c] = pts[i][c] - pts[0][c];
            M.push_back(std::move(r));
        }
        std::vector<int> piv;
        if (row_echelon(M, d, piv) < d) return out;
    }
    if (d == 1) {
        int lo = 0, hi = 0;
        for (int i = 1; i < n; ++i) {
            if (pts[i][0] < pts[lo][0]) lo = i;
            if (pts[i][0] > pts[hi][0]) hi = i;
        }
        out.push_back({lo, hi});
        return out;
    }
    if (d == 2) {
        RatVec c(2, 0);
        for (const auto& p : pts) { c[0] += p[0]; c[1] += p[1]; }
        c[0] /= n;
        c[1] /= n;
        std::vector<int> order(n);
        std::iota(order.begin(), order.end(), 0);
        AngularLess less{c, 0, 1};
        std::sort(order.begin(), order.end(), [&](int a, int b) { return less(pts[a], pts[b]); });
        for (int i = 1; i + 1 < n; ++i) out.push_back({order[0], order[i], order[i + 1]});
        return out;
    }
    if (d == 3) {
        // Brute-force facet planes: every non-degenerate triple whose plane
        // supports the whole set.
        std::map<std::pair<RatVec, Rat>, std::vector<int>> facets;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                for (int k = j + 1; k < n; ++k) {
                    RatVec u(3), v(3);
                    for (int c2 = 0; c2 < 3; ++c2) {
                        u[c2] = pts[j][c2] - pts[i][c2];
                        v[c2] = pts[k][c2] - pts[i][c2];
                    }
                    RatVec nv = {u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2],
                                 u[0] * v[1] - u[1] * v[0]};
                    if (nv[0] == 0 && nv[1] == 0 && nv[2] == 0) continue;
                    Rat off = dot(nv, pts[i]);
                    int side = 0;
                    bool support = true;
                    for (int p = 0; p < n && support; ++p) {
                        Rat s = dot(nv, pts[p]) - off;
                        if (s == 0) continue;
                        int sg = sgn(s);
                        if (side == 0) side = sg;
                        else if (side != sg) support = false;
                    }
                    if (!support) continue;
                    if (side > 0) {
                        for (auto& x : nv) x = -x;
                        off = -off;
                    }
                    scale_to_primitive(nv);
                    off = dot(nv, pts[i]);
                    auto& members = facets[{nv, off}];
                    if (members.empty())
                        for (int p = 0; p < n; ++p)
                            if (dot(nv, pts[p]) == off) members.push_back(p);
                }
        // Cone each facet not containing the base vertex to the base vertex.
        int base = 0;
        for (auto& [key, members] : facets) {
            if (std::find(members.begin(), members.end(), base) != members.end()) continue;
            // order members in their plane: drop the largest-|normal| coordinate
            const RatVec& nv = key.first;
            int drop = 0;
            Rat best = abs(nv[0]);
            for (int c2 = 1; c2 < 3; ++c2)
                if (abs(nv[c2]) > best) { best = abs(nv[c2]); drop = c2; }
            int ix = (drop + 1) % 3, iy = (drop + 2) % 3;
            RatVec cen(3, 0);
            for (int p : members)
                for (int c2 = 0; c2 < 3; ++c2) cen[c2] += pts[p][c2];
            for (int c2 = 0; c2 < 3; ++c2) cen[c2] /= (int)members.size();
            AngularLess less{cen, ix, iy};
            std::sort(members.begin(), members.end(),
                      [&](int a, int b) { return less(pts[a], pts[b]); });
            for (size_t i2 = 1; i2 + 1 < members.size(); ++i2)
                out.push_back({base, members[0], members[i2], members[i2 + 1]});
        }
        return out;
    }
    throw InvariantError("triangulation supported only up to dimension 3");
}

Rat polytope_volume(const std::vector<LinIneq>& ineqs, int dim) {
    return integrate_affine(ineqs, dim, RatVec(dim, 0), Rat(1));
}

Rat integrate_affine(const std::vector<LinIneq>& ineqs, int dim, const RatVec& c, const Rat& c0) {
    auto verts = enumerate_vertices(ineqs, dim);
    auto tris = triangulate_points(verts, dim);
    Rat total = 0;
    Int fact = 1;
    for (int i = 2; i <= dim; ++i) fact *= i;
    for (const auto& simplex : tris) {
        std::vector<RatVec> M;
        for (int i = 1; i <= dim; ++i) {
            RatVec row(dim);
            for (int j = 0; j < dim; ++j) row[j] = verts[simplex[i]][j] - verts[simplex[0]][j];
            M.push_back(std::move(row));
        }
        Rat vol = abs(det(M)) / fact;
        if (vol == 0) continue;
        Rat mean = 0;
        for (int i = 0; i <= dim; ++i) mean += dot(c, verts[simplex[i]]) + c0;
        mean /= dim + 1;
        total += vol * mean;
    }
    return total;
}

std::vector<RatVec> hull2d(std::vector<RatVec> pts) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    int n = (int)pts.size();
    if (n <= 2) return pts;
    auto cross = [](const RatVec& o, const RatVec& a, const RatVec& b) -> Rat {
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
    };
    std::vector<RatVec> h(2 * n);
    int k = 0;
    for (int i = 0; i < n; ++i) {
        while (k >= 2 && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
        h[k++] = pts[i];
    }
    int lower = k + 1;
    for (int i = n - 2; i >= 0; --i) {
        while (k >= lower && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
        h[k++] = pts[i];
    }
    h.resize(k - 1);
    return h;
}

Rat polygon_area(const std::vector<RatVec>& poly) {
    Rat a = 0;
    int n = (int)poly.size();
    for (int i = 0; i < n; ++i) {
        const auto& p = poly[i];
        const auto& q = poly[(i + 1) % n];
        a += p[0] * q[1] - q[0] * p[1];
    }
    return a / 2;
}

UpBody make_upbody(int dim, std::vector<Facet> facets) {
    if (dim < 1 || dim > 4) throw InvariantError("UpBody dimension must be 1..4");
    for (auto& f : facets) {
        if ((int)f.normal.size() != dim) throw DimensionMismatch("facet normal vs body dim");
        bool nonzero = false;
        for (const Rat& x : f.normal) {
            if (x < 0) throw InvariantError("facet normal must be nonnegative");
            if (x != 0) nonzero = true;
        }
        if (!nonzero) throw InvariantError("facet normal must be nonzero");
        if (f.offset <= 0) throw InvariantError("facet offset must be positive");
        f = canonical_facet(std::move(f));
    }
    // Merge parallel facets: same normal, keep the largest offset.
    std::sort(facets.begin(), facets.end(), facet_less);
    std::vector<Facet> merged;
    for (auto& f : facets) {
        if (!merged.empty() && merged.back().normal == f.normal) merged.back().offset = f.offset;
        else merged.push_back(std::move(f));
    }
    // Remove redundant facets: facet j is implied when its inequality already
    // holds on the body cut out by the others (exact LP via vertex support).
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t j = 0; j < merged.size(); ++j) {
            std::vector<Facet> rest;
            for (size_t k = 0; k < merged.size(); ++k)
                if (k != j) rest.push_back(merged[k]);
            if (support_min_facets(dim, rest, merged[j].normal) >= merged[j].offset) {
                merged = std::move(rest);
                changed = true;
                break;
            }
        }
    }
    std::sort(merged.begin(), merged.end(), facet_less);
    return UpBody{dim, std::move(merged)};
}

UpBody orthant_body(int dim) { return UpBody{dim, {}}; }

bool complement_bounded(const UpBody& P) {
    // In irredundant form the complement is bounded iff every facet normal is
    // strictly positive in every coordinate (otherwise the violating region
    // recedes along the zero coordinate).
    for (const auto& f : P.facets)
        for (const Rat& x : f.normal)
            if (x == 0) return false;
    return true;
}

std::vector<RatVec> body_vertices(const UpBody& P) {
    if (P.facets.empty()) return {RatVec(P.dim, 0)};
    return vertices_of_facets(P.dim, P.facets);
}

Rat support_min(const UpBody& P, const RatVec& alpha) {
    if ((int)alpha.size() != P.dim) throw DimensionMismatch("support_min");
    return support_min_facets(P.dim, P.facets, alpha);
}

Rat covolume(const UpBody& P) {
    if (P.facets.empty()) return 0;
    if (!complement_bounded(P)) throw UnboundedComplement("covolume");
    int n = P.dim;
    if (n == 1) {
        Rat best = 0;
        for (const auto& f : P.facets) best = std::max(best, Rat(f.offset / f.normal[0]));
        return best;
    }
    // Slice along the last coordinate: the complement column height over
    // x' is max(0, max_j g_j(x')) with g_j = (c_j - <nu'_j, x'>)/nu_{j,n};
    // integrate g_j over its "argmax" cell D_j.
    Rat total = 0;
    int m = (int)P.facets.size();
    for (int j = 0; j < m; ++j) {
        const auto& fj = P.facets[j];
        std::vector<LinIneq> ineqs;
        for (int i = 0; i < n - 1; ++i) {
            RatVec a(n - 1, 0);
            a[i] = -1;
            ineqs.push_back({std::move(a), Rat(0)});
        }
        {
            RatVec a(n - 1);
            for (int i = 0; i < n - 1; ++i) a[i] = fj.normal[i];
            ineqs.push_back({std::move(a), fj.offset});  // g_j >= 0
        }
        for (int k = 0; k < m; ++k) {
            if (k == j) continue;
            const auto& fk = P.facets[k];
            // g_j >= g_k  <=>  <nu_{k,n} nu'_j - nu_{j,n} nu'_k, x'> <= nu_{k,n} c_j - nu_{j,n} c_k
            RatVec a(n - 1);
            for (int i = 0; i < n - 1; ++i)
                a[i] = fk.normal[n - 1] * fj.normal[i] - fj.normal[n - 1] * fk.normal[i];
            ineqs.push_back({std::move(a), fk.normal[n - 1] * fj.offset - fj.normal[n - 1] * fk.offset});
        }
        RatVec coeff(n - 1);
        for (int i = 0; i < n - 1; ++i) coeff[i] = -fj.normal[i] / fj.normal[n - 1];
        total += integrate_affine(ineqs, n - 1, coeff, fj.offset / fj.normal[n - 1]);
    }
    return total;
}

UpBody hull_upbody(int dim, const std::vector<RatVec>& points) {
    if (points.empty()) throw InvariantError("hull of empty point set");
    // Drop dominated points; they never contribute facets.
    std::vector<RatVec> pts = points;
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    std::vector<RatVec> kept;
    for (const auto& p : pts) {
        bool dominated = false;
        for (const auto& q : pts) {
            if (p == q) continue;
            bool leq = true;
            for (int i = 0; i < dim; ++i)
                if (q[i] > p[i]) { leq = false; break; }
            if (leq) { dominated = true; break; }
        }
        if (!dominated) kept.push_back(p);
    }
    std::vector<Facet> facets;
    if (dim == 1) {
        Rat mn = kept[0][0];
        if (mn > 0) facets.push_back({{Rat(1)}, mn});
        return make_upbody(1, std::move(facets));
    }
    if (dim == 2) {
        // Undominated points have strictly increasing x and strictly
        // decreasing y after sorting, but the antichain need not be convex:
        // keep only the lower convex hull (monotone chain) before reading
        // facets off consecutive pairs; extremes give axis-parallel facets.
        std::vector<RatVec> hull;
        for (const auto& p : kept) {
            while (hull.size() >= 2) {
                const RatVec& o = hull[hull.size() - 2];
                const RatVec& a = hull[hull.size() - 1];
                Rat cr = (a[0] - o[0]) * (p[1] - o[1]) - (a[1] - o[1]) * (p[0] - o[0]);
                if (cr <= 0) hull.pop_back();
                else break;
            }
            hull.push_back(p);
        }
        kept = std::move(hull);
        const auto& first = kept.front();
        const auto& last = kept.back();
        if (first[0] > 0) facets.push_back({{Rat(1), Rat(0)}, first[0]});
        if (last[1] > 0) facets.push_back({{Rat(0), Rat(1)}, last[1]});
        for (size_t i = 0; i + 1 < kept.size(); ++i) {
            const auto& p = kept[i];
            const auto& q = kept[i + 1];
            RatVec nv = {p[1] - q[1], q[0] - p[0]};
            Rat off = dot(nv, p);
            if (off > 0) facets.push_back({std::move(nv), off});
        }
        return make_upbody(2, std::move(facets));
    }
    // General case: candidate facet hyperplanes are spanned by k hull points
    // and n-k coordinate rays.
    int n = dim;
    int np = (int)kept.size();
    std::vector<int> pt_idx, ray_idx;
    auto try_candidate = [&](const std::vector<int>& ps, const std::vector<int>& rays) {
        std::vector<RatVec> M;
        const RatVec& p0 = kept[ps[0]];
        for (size_t i = 1; i < ps.size(); ++i) {
            RatVec r(n);
            for (int c = 0; c < n; ++c) r[c] = kept[ps[i]][c] - p0[c];
            M.push_back(std::move(r));
        }
        for (int ax : rays) {
            RatVec r(n, 0);
            r[ax] = 1;
            M.push_back(std::move(r));
        }
        auto nv = nullspace_dir(std::move(M), n);
        if (!nv) return;
        Rat off = dot(*nv, p0);
        int side = 0;
        for (const auto& q : kept) {
            Rat s = dot(*nv, q) - off;
            if (s == 0) continue;
            int sg = sgn(s);
            if (side == 0) side = sg;
            else if (side != sg) return;
        }
        if (side < 0) {
            for (auto& x : *nv) x = -x;
            off = -off;
        }
        for (const Rat& x : *nv)
            if (x < 0) return;
        if (off <= 0) return;
        facets.push_back({std::move(*nv), off});
    };
    // enumerate k-subsets of points and (n-k)-subsets of axes
    std::vector<int> axes(n);
    std::iota(axes.begin(), axes.end(), 0);
    for (int k = 1; k <= n; ++k) {
        if (np < k) continue;
        std::vector<int> ps(k);
        std::iota(ps.begin(), ps.end(), 0);
        while (true) {
            int r = n - k;
            std::vector<int> rs(r);
            std::iota(rs.begin(), rs.end(), 0);
            bool rays_done = (r == 0);
            while (true) {
                try_candidate(ps, rs);
                if (rays_done) break;
                int i = r - 1;
                while (i >= 0 && rs[i] == n - r + i) --i;
                if (i < 0) break;
                ++rs[i];
                for (int j2 = i + 1; j2 < r; ++j2) rs[j2] = rs[j2 - 1] + 1;
            }
            int i = k - 1;
            while (i >= 0 && ps[i] == np - k + i) --i;
            if (i < 0) break;
            ++ps[i];
            for (int j2 = i + 1; j2 < k; ++j2) ps[j2] = ps[j2 - 1] + 1;
        }
    }
    return make_upbody(dim, std::move(facets));
}

UpBody minkowski_sum(const UpBody& P, const UpBody& Q) {
    if (P.dim != Q.dim) throw DimensionMismatch("minkowski_sum");
    // Adding the orthant (as a body containing 0) to an up-closed body is a
    // no-op.
    if (P.facets.empty()) return Q;
    if (Q.facets.empty()) return P;
    auto vp = body_vertices(P);
    auto vq = body_vertices(Q);
    std::vector<RatVec> sums;
    for (const auto& a : vp)
        for (const auto& b : vq) {
            RatVec s(P.dim);
            for (int i = 0; i < P.dim; ++i) s[i] = a[i] + b[i];
            sums.push_back(std::move(s));
        }
    return hull_upbody(P.dim, sums);
}

UpBody intersect_bodies(const UpBody& P, const UpBody& Q) {
    if (P.dim != Q.dim) throw DimensionMismatch("intersect_bodies");
    std::vector<Facet> f = P.facets;
    f.insert(f.end(), Q.facets.begin(), Q.facets.end());
    return make_upbody(P.dim, std::move(f));
}

UpBody scale_body(const UpBody& P, const Rat& c) {
    if (c <= 0) throw InvariantError("scale_body: factor must be positive");
    std::vector<Facet> f = P.facets;
    for (auto& x : f) x.offset *= c;
    return make_upbody(P.dim, std::move(f));
}

bool contains(const UpBody& P, const UpBody& Q) {
    if (P.dim != Q.dim) throw DimensionMismatch("contains");
    for (const auto& f : P.facets)
        if (support_min(Q, f.normal) < f.offset) return false;
    return true;
}

std::optional<Rat> proportional_scale(const UpBody& P, const UpBody& Q) {
    if (P.dim != Q.dim) throw DimensionMismatch("proportional_scale");
    if (P.facets.size() != Q.facets.size()) return std::nullopt;
    if (P.facets.empty()) return Rat(1);
    // Scaling only rescales offsets in canonical form, so the normal lists
    // must agree entrywise after sorting.
    for (size_t i = 0; i < P.facets.size(); ++i)
        if (P.facets[i].normal != Q.facets[i].normal) return std::nullopt;
    Rat c = P.facets[0].offset / Q.facets[0].offset;
    for (size_t i = 1; i < P.facets.size(); ++i)
        if (P.facets[i].offset != c * Q.facets[i].offset) return std::nullopt;
    return c;
}

GaugeFunction gauge_of(const UpBody& P) {
    GaugeFunction g;
    g.dim = P.dim;
    for (const auto& f : P.facets) g.pieces.push_back({f.normal, f.offset});
    return g;
}

Rat gauge_value(const GaugeFunction& g, const RatVec& x) {
    if (g.pieces.empty()) throw InvariantError("gauge of the full orthant is infinite");
    Rat best;
    bool first = true;
    for (const auto& p : g.pieces) {
        Rat v = dot(p.normal, x) / p.scale;
        if (first || v < best) { best = v; first = false; }
    }
    return best;
}

UpBody body_of(const GaugeFunction& g, const Rat& level) {
    if (level <= 0) throw InvariantError("body_of: level must be positive");
    std::vector<Facet> f;
    for (const auto& p : g.pieces) f.push_back({p.normal, level * p.scale});
    return make_upbody(g.dim, std::move(f));
}

UpBody affine_combination_body(const GaugeFunction& g0, const GaugeFunction& g1, const Rat& t) {
    if (g0.dim != g1.dim) throw DimensionMismatch("affine_combination_body");
    if (t < 0 || t > 1) throw InvariantError("affine_combination_body: t must be in [0,1]");
    if (t == 0) return body_of(g0, 1);
    if (t == 1) return body_of(g1, 1);
    std::vector<Facet> f;
    for (const auto& a : g0.pieces)
        for (const auto& b : g1.pieces) {
            RatVec nv(g0.dim);
            for (int i = 0; i < g0.dim; ++i)
                nv[i] = (1 - t) * a.normal[i] / a.scale + t * b.normal[i] / b.scale;
            f.push_back({std::move(nv), Rat(1)});
        }
    return make_upbody(g0.dim, std::move(f));
}

UpBody newton_polyhedron(const MonomialIdeal& I) {
    if (is_zero(I)) throw InvariantError("newton_polyhedron of the zero ideal");
    std::vector<RatVec> pts;
    for (const auto& g : I.gens) {
        RatVec p(I.dim);
        for (int i = 0; i < I.dim; ++i) p[i] = g[i];
        pts.push_back(std::move(p));
    }
    return hull_upbody(I.dim, pts);
}

namespace {

// Enumerate minimal lattice points of an up-closed membership predicate
// within the box prod [0, B_i].
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

} // namespace

MonomialIdeal integral_closure(const MonomialIdeal& I) {
    if (is_zero(I)) throw InvariantError("integral_closure of the zero ideal");
    UpBody np = newton_polyhedron(I);
    if (np.facets.empty()) return unit_ideal(I.dim);
    // A minimal lattice point of NP has coordinate i at most the largest
    // axis intercept ceil(offset / normal_i) over facets with normal_i > 0:
    // beyond that every facet survives decrementing coordinate i.
    std::vector<long> B(I.dim, 0);
    for (int i = 0; i < I.dim; ++i)
        for (const auto& f : np.facets)
            if (f.normal[i] > 0)
                B[i] = std::max(B[i], rat_ceil(f.offset / f.normal[i]));
    auto in_np = [&](const Exponent& beta) {
        for (const auto& f : np.facets) {
            Rat s = 0;
            for (int i = 0; i < np.dim; ++i) s += f.normal[i] * beta[i];
            if (s < f.offset) return false;
        }
        return true;
    };
    return minimal_points(I.dim, B, in_np);
}

MonomialIdeal lattice_staircase(const UpBody& P, const Rat& level) {
    if (level <= 0) throw InvariantError("lattice_staircase: level must be positive");
    if (P.facets.empty()) return unit_ideal(P.dim);
    if (!complement_bounded(P)) throw UnboundedComplement("lattice_staircase");
    std::vector<long> B(P.dim, 0);
    for (int i = 0; i < P.dim; ++i) {
        Rat need = 0;
        for (const auto& f : P.facets)
            need = std::max(need, Rat(level * f.offset / f.normal[i]));
        B[i] = rat_ceil(need);
    }
    auto in_scaled = [&](const Exponent& beta) {
        for (const auto& f : P.facets) {
            Rat s = 0;
            for (int i = 0; i < P.dim; ++i) s += f.normal[i] * beta[i];
            if (s < level * f.offset) return false;
        }
        return true;
    };
    return minimal_points(P.dim, B, in_scaled);
}

} // namespace filtlab
