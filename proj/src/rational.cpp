#include "filtlab/rational.hpp"

#include <stdexcept>

#include "filtlab/errors.hpp"

namespace filtlab {

Rat parse_rat(const std::string& s) {
    if (s.empty()) throw ParseError("empty rational literal");
    // mpq_class's string constructor accepts "p/q" and "p" but aborts the
    // process on garbage, so validate by hand first.
    auto is_int = [](const std::string& t) {
        if (t.empty()) return false;
        size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
        if (i == t.size()) return false;
        for (; i < t.size(); ++i)
            if (t[i] < '0' || t[i] > '9') return false;
        return true;
    };
    auto slash = s.find('/');
    std::string num = (slash == std::string::npos) ? s : s.substr(0, slash);
    std::string den = (slash == std::string::npos) ? "1" : s.substr(slash + 1);
    if (!is_int(num) || !is_int(den)) throw ParseError("bad rational literal: '" + s + "'");
    // GMP rejects an explicit '+'
    if (num[0] == '+') num.erase(0, 1);
    if (den[0] == '+') den.erase(0, 1);
    Rat r;
    try {
        r = Rat(num + "/" + den);
    } catch (const std::invalid_argument&) {
        throw ParseError("bad rational literal: '" + s + "'");
    }
    if (r.get_den() == 0) throw ParseError("zero denominator in '" + s + "'");
    r.canonicalize();
    return r;
}

std::string rat_str(const Rat& r) {
    Rat c = r;
    c.canonicalize();
    return c.get_num().get_str() + "/" + c.get_den().get_str();
}

long rat_floor(const Rat& r) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
    if (!q.fits_slong_p()) throw std::overflow_error("rat_floor overflow");
    return q.get_si();
}

long rat_ceil(const Rat& r) {
    Int q;
    mpz_cdiv_q(q.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
    if (!q.fits_slong_p()) throw std::overflow_error("rat_ceil overflow");
    return q.get_si();
}

double rat_d(const Rat& r) { return r.get_d(); }

Rat rat_pow(const Rat& r, unsigned long k) {
    Rat out = 1;
    Rat base = r;
    unsigned long e = k;
    while (e) {
        if (e & 1) out *= base;
        base *= base;
        e >>= 1;
    }
    return out;
}

Int iroot_floor(const Int& a, unsigned long n) {
    if (a < 0) throw std::domain_error("iroot_floor of negative");
    Int r;
    mpz_root(r.get_mpz_t(), a.get_mpz_t(), n);
    return r;
}

std::optional<Rat> exact_nth_root(const Rat& x, unsigned long n) {
    if (x < 0) return std::nullopt;
    Rat c = x;
    c.canonicalize();
    Int rn = iroot_floor(c.get_num(), n);
    Int rd = iroot_floor(c.get_den(), n);
    Int pn, pd;
    mpz_pow_ui(pn.get_mpz_t(), rn.get_mpz_t(), n);
    mpz_pow_ui(pd.get_mpz_t(), rd.get_mpz_t(), n);
    if (pn != c.get_num() || pd != c.get_den()) return std::nullopt;
    Rat root(rn, rd);
    root.canonicalize();
    return root;
}

std::pair<Rat, Rat> nth_root_interval(const Rat& x, unsigned long n, unsigned digits) {
    if (x < 0) throw std::domain_error("nth_root_interval of negative");
    Int scale;  // 10^digits
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, digits);
    Int scale_n;  // 10^(n*digits)
    mpz_ui_pow_ui(scale_n.get_mpz_t(), 10, digits * n);
    // y = floor(x * 10^(n*digits)); r = floor(y^{1/n}) gives
    // r/10^d <= x^{1/n} <= (r+2)/10^d.
    Int y;
    mpz_fdiv_q(y.get_mpz_t(), Int(x.get_num() * scale_n).get_mpz_t(), x.get_den().get_mpz_t());
    Int r = iroot_floor(y, n);
    Rat lo(r, scale), hi(r + 2, scale);
    lo.canonicalize();
    hi.canonicalize();
    return {lo, hi};
}

int sign_root_combination(unsigned long n, std::vector<std::pair<Rat, Rat>> terms) {
    // Fold exact rational radicals into a plain rational accumulator.
    Rat rational_part = 0;
    std::vector<std::pair<Rat, Rat>> irr;  // (coef, radicand), radicand irrational root
    for (auto& [c, x] : terms) {
        if (c == 0) continue;
        if (x < 0) throw std::domain_error("sign_root_combination: radicand must be nonnegative");
        if (x == 0) continue;  // 0^{1/n} contributes nothing
        if (auto root = exact_nth_root(x, n)) {
            rational_part += c * *root;
        } else {
            irr.emplace_back(c, x);
        }
    }
    // Merge terms whose radicand ratio is an exact n-th power: c*x^{1/n} with
    // x = rho^n * y becomes (c*rho)*y^{1/n}.
    std::vector<std::pair<Rat, Rat>> merged;
    for (auto& [c, x] : irr) {
        bool found = false;
        for (auto& [mc, mx] : merged) {
            if (auto rho = exact_nth_root(Rat(x / mx), n)) {
                mc += c * *rho;
                found = true;
                break;
            }
        }
        if (!found) merged.emplace_back(c, x);
    }
    std::erase_if(merged, [](const auto& t) { return t.first == 0; });
    if (merged.empty()) return sgn(rational_part);
    // Nonzero combination of pairwise-inequivalent radicals plus a rational is
    // nonzero (linear independence of distinct real radicals over Q), so
    // interval refinement terminates.
    for (unsigned digits = 20; digits <= 320; digits *= 2) {
        Rat lo = rational_part, hi = rational_part;
        for (auto& [c, x] : merged) {
            auto [rlo, rhi] = nth_root_interval(x, n, digits);
            if (c > 0) {
                lo += c * rlo;
                hi += c * rhi;
            } else {
                lo += c * rhi;
                hi += c * rlo;
            }
        }
        if (lo > 0) return 1;
        if (hi < 0) return -1;
    }
    throw std::logic_error("sign_root_combination: undecided after refinement cap");
}

} // namespace filtlab
