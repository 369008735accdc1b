// filtlab: batch CLI over monomial filtration descriptors.
//
// Exit codes: 0 ok, 2 parse error, 3 invariant violation, 4 nonconvergence.
// Errors are reported as one-line JSON on stderr.  Exact rationals ("p/q")
// are authoritative; decimal columns are presentation only.

#include <CLI11.hpp>

#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <thread>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

#include "filtlab/errors.hpp"
#include "filtlab/json_io.hpp"
#include "filtlab/measures.hpp"
#include "filtlab/multiplicity.hpp"
#include "filtlab/okounkov.hpp"

using namespace filtlab;

namespace {

struct Options {
    std::string format = "json";
    std::string out_dir;
    std::uint64_t seed = 20240901;
    int parallel = 1;
    int grid = 8;
    int dim = 0;
    std::string m_schedule;  // comma-separated
    std::string lambda_str = "1/1";
    std::string t_str = "1/2";
    std::string config_path;
};

std::string dec(const Rat& r) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", rat_d(r));
    return buf;
}

std::string dec(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

FiltPtr load_filt(const std::string& path) { return filt_from_json(parse_json(slurp(path))); }

std::vector<long> parse_schedule(const std::string& s) {
    std::vector<long> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        try {
            size_t pos = 0;
            long v = std::stol(tok, &pos);
            if (pos != tok.size() || v < 1) throw ParseError("bad m-schedule entry '" + tok + "'");
            out.push_back(v);
        } catch (const std::logic_error&) {
            throw ParseError("bad m-schedule entry '" + tok + "'");
        }
    }
    return out;
}

RatVec parse_ratvec_arg(const std::string& s) {
    RatVec out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(parse_rat(tok));
    if (out.empty()) throw ParseError("empty weight vector");
    return out;
}

void apply_config(Options& opt) {
    if (opt.config_path.empty()) return;
    std::ifstream in(opt.config_path);
    if (!in) throw ParseError("cannot open config '" + opt.config_path + "'");
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string v) {
            v.erase(0, v.find_first_not_of(" \t"));
            auto e = v.find_last_not_of(" \t");
            v.erase(e == std::string::npos ? 0 : e + 1);
            return v;
        };
        std::string key = trim(line.substr(0, eq)), val = trim(line.substr(eq + 1));
        if (key == "seed") opt.seed = std::stoull(val);
        else if (key == "grid") opt.grid = std::stoi(val);
        else if (key == "m-schedule") opt.m_schedule = val;
        else if (key == "format") opt.format = val;
        else if (key == "dim") opt.dim = std::stoi(val);
        else throw ParseError("unknown config key '" + key + "'");
    }
}

// Ordered parallel map over an index range.
template <typename Fn>
auto parallel_map(long count, int parallel, Fn&& fn) {
    using R = decltype(fn(0L));
    std::vector<R> out(count);
    if (parallel <= 1 || count <= 1) {
        for (long i = 0; i < count; ++i) out[i] = fn(i);
        return out;
    }
    std::vector<std::future<R>> futs(count);
    std::atomic<long> next{0};
    auto worker = [&]() {
        for (;;) {
            long i = next.fetch_add(1);
            if (i >= count) return;
            futs[i] = std::async(std::launch::deferred, [&fn, i] { return fn(i); });
            futs[i].wait();
        }
    };
    // deferred+wait inside explicit threads keeps result order deterministic
    std::vector<std::thread> pool;
    for (int w = 0; w < parallel; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    for (long i = 0; i < count; ++i) out[i] = futs[i].get();
    return out;
}

void emit(const Options& opt, const std::string& command, const std::string& text,
          const std::string& ext) {
    if (opt.out_dir.empty()) {
        std::cout << text;
        return;
    }
    std::filesystem::create_directories(opt.out_dir);
    std::string path = opt.out_dir + "/" + command + "." + ext;
    std::ofstream out(path, std::ios::binary);
    out << text;
    std::cout << path << "\n";
}

std::string csv_header(const Options& opt, const std::string& cols) {
    return "# seed=" + std::to_string(opt.seed) + "\n" + cols + "\n";
}

// ---- subcommand bodies ----------------------------------------------------

int run_mult(const Options& opt, const std::string& fpath) {
    FiltPtr F = load_filt(fpath);
    auto sched = opt.m_schedule.empty() ? std::vector<long>{} : parse_schedule(opt.m_schedule);
    MultResult r = mult_filtration(*F, sched);
    if (opt.format == "csv") {
        std::string t = csv_header(opt, "m,estimate,estimate_decimal_nonauthoritative");
        t += "# exact=" + rat_str(r.exact) + "\n";
        for (auto& [m, v] : r.estimates)
            t += std::to_string(m) + "," + rat_str(v) + "," + dec(v) + "\n";
        emit(opt, "mult", t, "csv");
    } else {
        Json j{{"seed", opt.seed}, {"n", r.n}, {"exact", rat_str(r.exact)},
               {"exact_decimal_nonauthoritative", dec(r.exact)}};
        Json est = Json::array();
        for (auto& [m, v] : r.estimates)
            est.push_back(Json{{"m", m}, {"value", rat_str(v)},
                               {"decimal_nonauthoritative", dec(v)}});
        j["estimates"] = std::move(est);
        emit(opt, "mult", j.dump(2) + "\n", "json");
    }
    return 0;
}

int run_saturate(const Options& opt, const std::string& fpath) {
    FiltPtr F = load_filt(fpath);
    Rat lambda = parse_rat(opt.lambda_str);
    SaturationResult r = saturate(*F, lambda);
    Json j{{"seed", opt.seed}, {"lambda", rat_str(lambda)},
           {"ideal", ideal_to_json(r.ideal)}, {"used_union_hull", r.used_union_hull}};
    if (opt.format == "csv") {
        std::string t = csv_header(opt, "generator");
        for (auto& g : r.ideal.gens) {
            std::string row;
            for (size_t i = 0; i < g.size(); ++i)
                row += (i ? " " : "") + std::to_string(g[i]);
            t += row + "\n";
        }
        emit(opt, "saturate", t, "csv");
    } else {
        emit(opt, "saturate", j.dump(2) + "\n", "json");
    }
    return 0;
}

int run_geodesic_scan(const Options& opt, const std::string& fpath, const std::string& gpath) {
    FiltPtr F = load_filt(fpath), G = load_filt(gpath);
    int n = F->dim;
    Rat E0 = geodesic_E(*F, *G, Rat(0)), E1 = geodesic_E(*F, *G, Rat(1));
    struct Row { Rat t, E; std::string einv, chord; bool concave_ok; };
    auto rows = parallel_map(opt.grid + 1, opt.parallel, [&](long i) {
        Rat t(i, opt.grid);
        t.canonicalize();
        Rat E = geodesic_E(*F, *G, t);
        double einv = std::pow(rat_d(E), -1.0 / n);
        double chord = (1 - rat_d(t)) * std::pow(rat_d(E0), -1.0 / n) +
                       rat_d(t) * std::pow(rat_d(E1), -1.0 / n);
        // exact concavity: E(t)^{-1/n} >= (1-t)E0^{-1/n} + t E1^{-1/n}
        int sg = sign_root_combination(
            n, {{Rat(1), 1 / E}, {-(1 - t), 1 / E0}, {-t, 1 / E1}});
        return Row{t, E, dec(einv), dec(chord), sg >= 0};
    });
    if (opt.format == "csv") {
        std::string t = csv_header(
            opt, "t,E_exact,Einv_decimal_nonauthoritative,chord_decimal_nonauthoritative,concave_ok");
        for (auto& r : rows)
            t += rat_str(r.t) + "," + rat_str(r.E) + "," + r.einv + "," + r.chord + "," +
                 (r.concave_ok ? "1" : "0") + "\n";
        emit(opt, "geodesic-scan", t, "csv");
    } else {
        Json j{{"seed", opt.seed}, {"n", n}};
        Json arr = Json::array();
        for (auto& r : rows)
            arr.push_back(Json{{"t", rat_str(r.t)}, {"E", rat_str(r.E)},
                               {"Einv_decimal_nonauthoritative", r.einv},
                               {"chord_decimal_nonauthoritative", r.chord},
                               {"concave_ok", r.concave_ok}});
        j["rows"] = std::move(arr);
        emit(opt, "geodesic-scan", j.dump(2) + "\n", "json");
    }
    return 0;
}

int run_minkowski(const Options& opt, const std::string& fpath, const std::string& gpath) {
    FiltPtr F = load_filt(fpath), G = load_filt(gpath);
    MinkowskiReport r = minkowski_check(*F, *G);
    Json j{{"seed", opt.seed},
           {"e_prod", rat_str(r.e_prod)},
           {"e_f", rat_str(r.e_f)},
           {"e_g", rat_str(r.e_g)},
           {"equality", r.equality}};
    j["proportionality"] = r.proportionality ? Json(rat_str(*r.proportionality)) : Json(nullptr);
    emit(opt, "minkowski", j.dump(2) + "\n", "json");
    return 0;
}

int run_rees(const Options& opt, const std::string& fpath, const std::string& gpath) {
    FiltPtr F = load_filt(fpath), G = load_filt(gpath);
    ReesReport r = rees_check(*F, *G);
    Json j{{"seed", opt.seed},       {"contained", r.contained},
           {"e_f", rat_str(r.e_f)},  {"e_g", rat_str(r.e_g)},
           {"equal_mult", r.equal_mult}, {"equal_saturation", r.equal_saturation}};
    emit(opt, "rees", j.dump(2) + "\n", "json");
    return 0;
}

int run_equiv(const Options& opt, const std::string& fpath, const std::string& gpath) {
    FiltPtr F = load_filt(fpath), G = load_filt(gpath);
    EquivalenceReport r = equivalence_check(*F, *G);
    Json j{{"seed", opt.seed},
           {"e_f", rat_str(r.e_f)},
           {"e_inter", rat_str(r.e_inter)},
           {"e_g", rat_str(r.e_g)},
           {"equivalent", r.equivalent},
           {"equal_saturation", r.equal_saturation}};
    emit(opt, "equiv", j.dump(2) + "\n", "json");
    return 0;
}

int run_measure(const Options& opt, const std::string& fpath, const std::string& gpath) {
    FiltPtr F = load_filt(fpath), G = load_filt(gpath);
    Rat t = parse_rat(opt.t_str);
    std::vector<long> sched =
        opt.m_schedule.empty() ? std::vector<long>{10, 20, 40, 80} : parse_schedule(opt.m_schedule);
    int n = F->dim;
    Rat exact = mu_halfplane(*F, *G, t, Rat(1));
    struct Row { long m; DiscreteMeasure2D mu; Rat mass, identity; };
    auto rows = parallel_map((long)sched.size(), opt.parallel, [&](long i) {
        long m = sched[i];
        DiscreteMeasure2D mu = mu_m(*F, *G, m);
        Rat mass = halfplane_mass(mu, t, Rat(1));
        Rat identity = Rat(factorial(n)) * colength(evaluate(*F_geo(F, G, t), Rat(m))) /
                       rat_pow(Rat(m), n);
        return Row{m, std::move(mu), mass, identity};
    });
    if (opt.format == "csv") {
        std::string txt = csv_header(opt, "m,mu_m_halfplane,colength_identity,identity_ok,"
                                          "exact_mu,abs_err_decimal_nonauthoritative");
        for (auto& r : rows)
            txt += std::to_string(r.m) + "," + rat_str(r.mass) + "," + rat_str(r.identity) + "," +
                   (r.mass == r.identity ? "1" : "0") + "," + rat_str(exact) + "," +
                   dec(std::abs(rat_d(r.mass - exact))) + "\n";
        txt += "# atoms for each m follow as x,y,mass\n";
        for (auto& r : rows) {
            txt += "# m=" + std::to_string(r.m) + " D=" + rat_str(r.mu.D_used) + "\n";
            for (auto& a : r.mu.atoms)
                txt += rat_str(a.x) + "," + rat_str(a.y) + "," + rat_str(a.mass) + "\n";
        }
        emit(opt, "measure", txt, "csv");
    } else {
        Json j{{"seed", opt.seed}, {"t", rat_str(t)}, {"exact_mu_halfplane", rat_str(exact)}};
        Json arr = Json::array();
        for (auto& r : rows) {
            Json atoms = Json::array();
            for (auto& a : r.mu.atoms)
                atoms.push_back(Json{{"x", rat_str(a.x)}, {"y", rat_str(a.y)},
                                     {"mass", rat_str(a.mass)}});
            arr.push_back(Json{{"m", r.m},
                               {"halfplane", rat_str(r.mass)},
                               {"colength_identity", rat_str(r.identity)},
                               {"identity_ok", r.mass == r.identity},
                               {"D", rat_str(r.mu.D_used)},
                               {"atoms", std::move(atoms)}});
        }
        j["levels"] = std::move(arr);
        emit(opt, "measure", j.dump(2) + "\n", "json");
    }
    return 0;
}

int run_segment(const Options& opt, const std::string& fpath, const std::string& gpath) {
    FiltPtr F = load_filt(fpath), G = load_filt(gpath);
    struct Row { Rat t, Eex; SegmentIntegral seg; };
    auto rows = parallel_map(opt.grid - 1, opt.parallel, [&](long i) {
        Rat t(i + 1, opt.grid);
        t.canonicalize();
        return Row{t, geodesic_E(*F, *G, t), E_via_segment(*F, *G, t)};
    });
    if (opt.format == "csv") {
        std::string txt = csv_header(opt, "t,E_exact,E_segment,abs_err");
        for (auto& r : rows)
            txt += rat_str(r.t) + "," + rat_str(r.Eex) + "," + dec(r.seg.value) + "," +
                   dec(std::abs(r.seg.value - rat_d(r.Eex))) + "\n";
        emit(opt, "segment", txt, "csv");
    } else {
        Json j{{"seed", opt.seed}};
        Json arr = Json::array();
        for (auto& r : rows)
            arr.push_back(Json{{"t", rat_str(r.t)},
                               {"E_exact", rat_str(r.Eex)},
                               {"E_segment", dec(r.seg.value)},
                               {"enclosure_lower", rat_str(r.seg.lower)},
                               {"enclosure_upper", rat_str(r.seg.upper)},
                               {"abs_err", dec(std::abs(r.seg.value - rat_d(r.Eex)))}});
        j["rows"] = std::move(arr);
        emit(opt, "segment", j.dump(2) + "\n", "json");
    }
    return 0;
}

int run_okounkov(const Options& opt, const std::string& fpath, const std::string& gpath) {
    FiltPtr F = load_filt(fpath), G = load_filt(gpath);
    Rat t = parse_rat(opt.t_str);
    std::vector<long> sched =
        opt.m_schedule.empty() ? std::vector<long>{4, 8, 16, 32} : parse_schedule(opt.m_schedule);
    auto rows = parallel_map((long)sched.size(), opt.parallel,
                             [&](long i) { return okounkov_mult_estimate(F, G, t, sched[i]); });
    auto rel_err = [](const TruncationEstimate& r) {
        return r.exact == 0 ? 0.0 : std::abs(rat_d((r.estimate - r.exact) / r.exact));
    };
    if (opt.format == "csv") {
        std::string txt =
            csv_header(opt, "m,count_identity_ok,vol_delta,vol_delta_t,estimate,exact,rel_err");
        for (auto& r : rows)
            txt += std::to_string(r.m) + "," + (r.count_identity_ok ? "1" : "0") + "," +
                   rat_str(r.vol_delta) + "," + rat_str(r.vol_delta_t) + "," +
                   rat_str(r.estimate) + "," + rat_str(r.exact) + "," + dec(rel_err(r)) + "\n";
        emit(opt, "okounkov", txt, "csv");
    } else {
        Json j{{"seed", opt.seed}, {"t", rat_str(t)}};
        Json arr = Json::array();
        for (auto& r : rows)
            arr.push_back(Json{{"m", r.m},
                               {"M", rat_str(r.M)},
                               {"count_identity_ok", r.count_identity_ok},
                               {"vol_delta", rat_str(r.vol_delta)},
                               {"vol_delta_t", rat_str(r.vol_delta_t)},
                               {"estimate", rat_str(r.estimate)},
                               {"exact", rat_str(r.exact)},
                               {"rel_err", dec(rel_err(r))}});
        j["rows"] = std::move(arr);
        emit(opt, "okounkov", j.dump(2) + "\n", "json");
    }
    return 0;
}

int run_volconv(const Options& opt, const std::string& alpha_s, const std::string& beta_s) {
    RatVec alpha = parse_ratvec_arg(alpha_s), beta = parse_ratvec_arg(beta_s);
    if (opt.dim && (int)alpha.size() != opt.dim)
        throw ParseError("--dim does not match the weight vectors");
    VolConvexityScan scan = volume_convexity_scan(alpha, beta, opt.grid);
    if (opt.format == "csv") {
        std::string txt = csv_header(opt, "t,lhs_pow,cmp,equality");
        txt += std::string("# proportional=") + (scan.proportional ? "1" : "0") + "\n";
        for (auto& r : scan.rows)
            txt += rat_str(r.t) + "," + rat_str(r.lhs_pow) + "," + std::to_string(r.cmp) + "," +
                   (r.equality ? "1" : "0") + "\n";
        emit(opt, "volconv", txt, "csv");
    } else {
        Json j{{"seed", opt.seed}, {"proportional", scan.proportional}};
        Json arr = Json::array();
        for (auto& r : scan.rows)
            arr.push_back(Json{{"t", rat_str(r.t)}, {"lhs_pow", rat_str(r.lhs_pow)},
                               {"cmp", r.cmp}, {"equality", r.equality}});
        j["rows"] = std::move(arr);
        emit(opt, "volconv", j.dump(2) + "\n", "json");
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"filtlab: exact multiplicity laboratory for monomial filtrations"};
    app.require_subcommand(1);
    Options opt;
    app.add_option("--format", opt.format)->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--out", opt.out_dir);
    app.add_option("--seed", opt.seed);
    app.add_option("--parallel", opt.parallel)->check(CLI::PositiveNumber);
    app.add_option("--grid", opt.grid)->check(CLI::PositiveNumber);
    app.add_option("--dim", opt.dim);
    app.add_option("--m-schedule", opt.m_schedule);
    app.add_option("--lambda", opt.lambda_str);
    app.add_option("--t", opt.t_str);
    app.add_option("--config", opt.config_path);

    std::string f1, f2;
    auto* c_mult = app.add_subcommand("mult");
    c_mult->add_option("F", f1)->required();
    auto* c_sat = app.add_subcommand("saturate");
    c_sat->add_option("F", f1)->required();
    auto* c_geo = app.add_subcommand("geodesic-scan");
    c_geo->add_option("F", f1)->required();
    c_geo->add_option("G", f2)->required();
    auto* c_mink = app.add_subcommand("minkowski");
    c_mink->add_option("F", f1)->required();
    c_mink->add_option("G", f2)->required();
    auto* c_rees = app.add_subcommand("rees");
    c_rees->add_option("F", f1)->required();
    c_rees->add_option("G", f2)->required();
    auto* c_equiv = app.add_subcommand("equiv");
    c_equiv->add_option("F", f1)->required();
    c_equiv->add_option("G", f2)->required();
    auto* c_meas = app.add_subcommand("measure");
    c_meas->add_option("F", f1)->required();
    c_meas->add_option("G", f2)->required();
    auto* c_seg = app.add_subcommand("segment");
    c_seg->add_option("F", f1)->required();
    c_seg->add_option("G", f2)->required();
    auto* c_ok = app.add_subcommand("okounkov");
    c_ok->add_option("F", f1)->required();
    c_ok->add_option("G", f2)->required();
    auto* c_vol = app.add_subcommand("volconv");
    c_vol->add_option("alpha", f1)->required();
    c_vol->add_option("beta", f2)->required();

    for (auto* sc : app.get_subcommands([](const CLI::App*) { return true; }))
        sc->fallthrough();

    auto fail = [](int code, const std::string& kind, const std::string& msg) {
        std::cerr << Json{{"error", kind}, {"message", msg}}.dump() << "\n";
        return code;
    };

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        return fail(2, "parse", e.what());
    }

    try {
        apply_config(opt);
        if (c_mult->parsed()) return run_mult(opt, f1);
        if (c_sat->parsed()) return run_saturate(opt, f1);
        if (c_geo->parsed()) return run_geodesic_scan(opt, f1, f2);
        if (c_mink->parsed()) return run_minkowski(opt, f1, f2);
        if (c_rees->parsed()) return run_rees(opt, f1, f2);
        if (c_equiv->parsed()) return run_equiv(opt, f1, f2);
        if (c_meas->parsed()) return run_measure(opt, f1, f2);
        if (c_seg->parsed()) return run_segment(opt, f1, f2);
        if (c_ok->parsed()) return run_okounkov(opt, f1, f2);
        if (c_vol->parsed()) return run_volconv(opt, f1, f2);
        return fail(2, "parse", "no subcommand");
    } catch (const ParseError& e) {
        return fail(2, "parse", e.what());
    } catch (const NonConvergence& e) {
        return fail(4, "nonconvergence", e.what());
    } catch (const InvariantError& e) {
        return fail(3, "invariant", e.what());
    } catch (const std::exception& e) {
        return fail(1, "internal", e.what());
    }
}
