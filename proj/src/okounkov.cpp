#include "filtlab/okounkov.hpp"

#include <algorithm>
#include <random>

#include "filtlab/errors.hpp"
#include "filtlab/multiplicity.hpp"

namespace filtlab {

namespace {

Rat dotv(const RatVec& a, const Exponent& b) {
    Rat s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
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

long axis_bound_min_jump(const FiltrationExpr& F, const FiltrationExpr& G, int axis,
                         const Rat& level) {
    auto mj = [&](long k) {
        Exponent beta(F.dim, 0);
        beta[axis] = k;
        return std::min(jump(F, beta), jump(G, beta));
    };
    long hi = 1;
    while (mj(hi) < level) {
        hi *= 2;
        if (hi > 1000000) throw InvariantError("truncation box search diverged");
    }
    long lo = hi / 2;
    while (lo + 1 < hi) {
        long mid = lo + (hi - lo) / 2;
        if (mj(mid) < level) lo = mid;
        else hi = mid;
    }
    return hi;
}

} // namespace

GoodValuation make_good_valuation(int dim, RatVec alpha, std::uint64_t seed, long check_box) {
    if ((int)alpha.size() != dim) throw DimensionMismatch("make_good_valuation");
    for (const Rat& a : alpha)
        if (a <= 0) throw InvariantError("good valuation weight must be strictly positive");
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> num(1, 64), den(1, 8);
    for (int attempt = 0; attempt < 64; ++attempt) {
        RatVec ap(dim);
        for (int i = 0; i < dim; ++i) {
            ap[i] = Rat(num(rng), den(rng));
            ap[i].canonicalize();
        }
        // one-dimensional leaves: (xi, xi') injective on the box
        std::vector<std::pair<Rat, Rat>> keys;
        std::vector<long> B(dim, check_box);
        GoodValuation v{dim, alpha, ap};
        for_box(dim, B, [&](const Exponent& beta) {
            keys.emplace_back(dotv(alpha, beta), dotv(ap, beta));
        });
        std::sort(keys.begin(), keys.end());
        if (std::adjacent_find(keys.begin(), keys.end()) == keys.end()) return v;
    }
    throw InvariantError("make_good_valuation: could not find an injective tiebreak");
}

bool good_val_less_eq(const GoodValuation& v, const Exponent& b1, const Exponent& b2) {
    Rat x1 = dotv(v.alpha, b1), x2 = dotv(v.alpha, b2);
    if (x1 != x2) return x1 < x2;
    return dotv(v.alpha_prime, b1) <= dotv(v.alpha_prime, b2);
}

Rat m_function(const FiltrationExpr& F, const Exponent& beta) { return jump(F, beta); }

std::vector<Rat> h_approx(const FiltrationExpr& F, const RatVec& beta,
                          const std::vector<long>& k_schedule) {
    std::vector<Rat> out;
    for (long k : k_schedule) {
        if (k < 1) throw InvariantError("h_approx: k must be >= 1");
        Exponent kb(F.dim);
        for (int i = 0; i < F.dim; ++i) kb[i] = rat_floor(Rat(k * beta[i]));
        out.push_back(jump(F, kb) / k);
    }
    return out;
}

TruncationEstimate okounkov_mult_estimate(const FiltPtr& F, const FiltPtr& G, const Rat& t,
                                          long m, RatVec alpha) {
    int n = F->dim;
    if (n != 2) throw InvariantError("okounkov_mult_estimate: exact hulls implemented for n = 2");
    if (m < 1) throw InvariantError("okounkov_mult_estimate: m must be >= 1");
    if (alpha.empty()) alpha.assign(n, Rat(1));
    TruncationEstimate out;
    out.m = m;
    FiltPtr geo = F_geo(F, G, t);
    // Certified level bound: every beta with jump_t(beta) < m has
    // min(jump_F, jump_G)(beta) < m, a finite set; M is the max of xi/m there.
    std::vector<long> B(n);
    for (int i = 0; i < n; ++i) B[i] = axis_bound_min_jump(*F, *G, i, Rat(m));
    Rat Mm = Rat(m);  // at least m so Gamma_m is nonempty and Delta spans
    JumpCache jc;
    for_box(n, B, [&](const Exponent& beta) {
        if (std::min(jump(*F, beta, jc), jump(*G, beta, jc)) < m)
            Mm = std::max(Mm, dotv(alpha, beta));
    });
    out.M = Mm / m;
    // Gamma_m = {xi <= Mm}; Gamma_m^(t) = {beta in Gamma_m : jump_t >= m}.
    std::vector<long> GB(n);
    for (int i = 0; i < n; ++i) GB[i] = rat_floor(Mm / alpha[i]);
    std::vector<RatVec> gamma_pts, gamma_t_pts;
    long gap = 0;
    for_box(n, GB, [&](const Exponent& beta) {
        if (dotv(alpha, beta) > Mm) return;
        RatVec p = {Rat(beta[0], m), Rat(beta[1], m)};
        p[0].canonicalize();
        p[1].canonicalize();
        if (jump(*geo, beta, jc) >= m) gamma_t_pts.push_back(p);
        else ++gap;
        gamma_pts.push_back(p);
    });
    out.count_semigroup_gap = gap;
    out.colength_geo = colength(evaluate(*geo, Rat(m)));
    out.count_identity_ok = (gap == out.colength_geo);
    auto hullA = hull2d(gamma_pts);
    out.vol_delta = abs(polygon_area(hullA));
    if (gamma_t_pts.size() >= 3) {
        auto hullB = hull2d(gamma_t_pts);
        out.vol_delta_t = abs(polygon_area(hullB));
    } else {
        out.vol_delta_t = 0;
    }
    out.estimate = Rat(factorial(n)) * (out.vol_delta - out.vol_delta_t);
    out.exact = geodesic_E(*F, *G, t);
    return out;
}

Rat exp_integral_exact(const GaugeFunction& g) {
    int n = g.dim;
    // normalized pieces a_j with g = min_j <a_j, x>
    std::vector<RatVec> A;
    for (const auto& p : g.pieces) {
        RatVec a(n);
        for (int i = 0; i < n; ++i) a[i] = p.normal[i] / p.scale;
        A.push_back(std::move(a));
    }
    std::sort(A.begin(), A.end());
    A.erase(std::unique(A.begin(), A.end()), A.end());
    if (A.empty()) throw InvariantError("exp_integral of the empty gauge");
    if (n == 1) {
        Rat mn = A[0][0];
        for (const auto& a : A) mn = std::min(mn, a[0]);
        if (mn <= 0) throw InvariantError("nonpositive gauge region");
        return 1 / mn;
    }
    Rat total = 0;
    for (size_t j = 0; j < A.size(); ++j) {
        // cell C_j = {x >= 0 : <a_j, x> <= <a_k, x> for all k}; find its
        // extreme rays from (n-1)-subsets of the active constraints.
        std::vector<RatVec> rows;  // constraints <c, x> <= 0
        for (int i = 0; i < n; ++i) {
            RatVec c(n, 0);
            c[i] = -1;
            rows.push_back(std::move(c));
        }
        for (size_t k = 0; k < A.size(); ++k) {
            if (k == j) continue;
            RatVec c(n);
            for (int i = 0; i < n; ++i) c[i] = A[j][i] - A[k][i];
            rows.push_back(std::move(c));
        }
        auto feasible = [&](const RatVec& r) {
            for (const auto& c : rows) {
                Rat s = 0;
                for (int i = 0; i < n; ++i) s += c[i] * r[i];
                if (s > 0) return false;
            }
            return true;
        };
        std::vector<RatVec> rays;
        int mrows = (int)rows.size();
        std::vector<int> idx(n - 1);
        auto advance = [&]() {
            int i = n - 2;
            while (i >= 0 && idx[i] == mrows - (n - 1) + i) --i;
            if (i < 0) return false;
            ++idx[i];
            for (int j2 = i + 1; j2 < n - 1; ++j2) idx[j2] = idx[j2 - 1] + 1;
            return true;
        };
        for (int i = 0; i < n - 1; ++i) idx[i] = i;
        do {
            std::vector<RatVec> M;
            for (int r = 0; r < n - 1; ++r) M.push_back(rows[idx[r]]);
            auto dir = nullspace_dir(std::move(M), n);
            if (!dir) continue;
            if (feasible(*dir)) rays.push_back(*dir);
            else {
                for (auto& x : *dir) x = -x;
                if (feasible(*dir)) rays.push_back(*dir);
            }
        } while (advance());
        std::sort(rays.begin(), rays.end());
        rays.erase(std::unique(rays.begin(), rays.end()), rays.end());
        if ((int)rays.size() < n) continue;  // lower-dimensional cell
        // triangulate the cross-section sum(x)=1 of the cone
        std::vector<RatVec> section;
        for (const auto& r : rays) {
            Rat s = 0;
            for (int i = 0; i < n; ++i) s += r[i];
            if (s <= 0) continue;  // rays live in the orthant, s > 0 unless zero
            RatVec p(n - 1);
            for (int i = 0; i < n - 1; ++i) p[i] = r[i] / s;
            section.push_back(std::move(p));
        }
        std::vector<std::vector<int>> simplices;
        if (n == 2) {
            if (section.size() >= 2) simplices.push_back({0, 1});
        } else {
            simplices = triangulate_points(section, n - 1);
        }
        for (const auto& sx : simplices) {
            std::vector<RatVec> R;
            for (int ii : sx) R.push_back(rays[ii]);
            // |det R| / prod_i <a_j, R_i>
            std::vector<RatVec> M = R;
            // determinant via the shared helper in polyhedra: recompute locally
            Rat d = 1;
            {
                int nn = n;
                for (int col = 0; col < nn; ++col) {
                    int piv = -1;
                    for (int r = col; r < nn; ++r)
                        if (M[r][col] != 0) { piv = r; break; }
                    if (piv < 0) { d = 0; break; }
                    if (piv != col) { std::swap(M[piv], M[col]); d = -d; }
                    d *= M[col][col];
                    for (int r = col + 1; r < nn; ++r) {
                        if (M[r][col] == 0) continue;
                        Rat f = M[r][col] / M[col][col];
                        for (int c = col; c < nn; ++c) M[r][c] -= f * M[col][c];
                    }
                }
            }
            if (d == 0) continue;
            Rat denom = 1;
            for (const auto& r : R) {
                Rat lv = 0;
                for (int i = 0; i < n; ++i) lv += A[j][i] * r[i];
                if (lv <= 0) throw InvariantError("nonpositive gauge region");
                denom *= lv;
            }
            total += abs(d) / denom;
        }
    }
    return total;
}

std::pair<double, double> exp_integral_mc(const GaugeFunction& g, std::uint64_t seed,
                                          long samples) {
    int n = g.dim;
    std::vector<RatVec> A;
    for (const auto& p : g.pieces) {
        RatVec a(n);
        for (int i = 0; i < n; ++i) a[i] = p.normal[i] / p.scale;
        A.push_back(std::move(a));
    }
    if (A.empty()) throw InvariantError("exp_integral of the empty gauge");
    // per-coordinate minimum slope lambda_i: g(x) >= sum lambda_i x_i
    std::vector<double> lam(n);
    for (int i = 0; i < n; ++i) {
        Rat mn = A[0][i];
        for (const auto& a : A) mn = std::min(mn, a[i]);
        if (mn <= 0) throw InvariantError("nonpositive gauge region");
        lam[i] = rat_d(mn);
    }
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    double mean = 0, m2 = 0;
    std::vector<double> x(n);
    for (long it = 1; it <= samples; ++it) {
        double logw = 0;
        for (int i = 0; i < n; ++i) {
            double rate = lam[i] / 2;
            double u = 1.0 - uni(rng);
            x[i] = -std::log(u) / rate;
            logw += rate * x[i] - std::log(rate);
        }
        double gv = 0;
        bool first = true;
        for (const auto& a : A) {
            double v = 0;
            for (int i = 0; i < n; ++i) v += rat_d(a[i]) * x[i];
            if (first || v < gv) { gv = v; first = false; }
        }
        double w = std::exp(-gv + logw);
        double delta = w - mean;
        mean += delta / it;
        m2 += delta * (w - mean);
    }
    double var = m2 / (samples - 1);
    return {mean, std::sqrt(var / samples)};
}

CauchySchwarzReport cauchy_schwarz_check(const FiltrationExpr& F, const FiltrationExpr& G,
                                         int grid, const Rat& step, double slack) {
    if (grid < 3) throw InvariantError("cauchy_schwarz_check: grid must be >= 3");
    if (step <= 0) throw InvariantError("cauchy_schwarz_check: step must be positive");
    if (step >= Rat(1, grid))
        throw InvariantError("step too large for the requested grid");
    CauchySchwarzReport rep;
    UpBody P0 = limit_body(F);
    UpBody P1 = limit_body(G);
    rep.proportional = proportional_scale(P0, P1).has_value();
    int n = F.dim;
    for (int k = 1; k < grid; ++k) {
        Rat t(k, grid);
        t.canonicalize();
        Rat Em = geodesic_E(F, G, t - step);
        Rat E0 = geodesic_E(F, G, t);
        Rat Ep = geodesic_E(F, G, t + step);
        Rat h2 = step / 2;
        Rat Em2 = geodesic_E(F, G, t - h2);
        Rat Ep2 = geodesic_E(F, G, t + h2);
        // Richardson-extrapolated central differences (steps h and h/2): the
        // O(h^2) bias cancels, so proportional pairs land inside the slack.
        Rat d1 = (4 * (Ep2 - Em2) / (2 * h2) - (Ep - Em) / (2 * step)) / 3;
        Rat d2 = (4 * (Ep2 - 2 * E0 + Em2) / (h2 * h2) - (Ep - 2 * E0 + Em) / (step * step)) / 3;
        Rat lhs = d2 * E0;
        Rat rhs = Rat(n + 1, n) * d1 * d1;
        Rat diff = lhs - rhs;
        Rat scale = std::max(Rat(1), Rat(abs(lhs)));
        bool ok = diff >= -Rat(slack) * scale;
        bool eq = Rat(abs(diff)) <= Rat(slack) * scale;
        rep.rows.push_back({t, diff, ok, eq});
        if (!ok) rep.all_ok = false;
    }
    return rep;
}

} // namespace filtlab
