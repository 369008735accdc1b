#include "filtlab/json_io.hpp"

#include "filtlab/errors.hpp"

namespace filtlab {

namespace {

Rat rat_from_json(const Json& j) {
    if (!j.is_string()) throw ParseError("rational must be a \"p/q\" string");
    return parse_rat(j.get<std::string>());
}

RatVec ratvec_from_json(const Json& j) {
    if (!j.is_array()) throw ParseError("rational vector must be an array");
    RatVec v;
    for (const auto& e : j) v.push_back(rat_from_json(e));
    return v;
}

Json ratvec_to_json(const RatVec& v) {
    Json a = Json::array();
    for (const auto& r : v) a.push_back(rat_str(r));
    return a;
}

long long_from_json(const Json& j, const char* what) {
    if (!j.is_number_integer()) throw ParseError(std::string(what) + " must be an integer");
    return j.get<long>();
}

} // namespace

Json ideal_to_json(const MonomialIdeal& I) {
    Json gens = Json::array();
    for (const auto& g : I.gens) {
        Json row = Json::array();
        for (long e : g) row.push_back(e);
        gens.push_back(std::move(row));
    }
    return Json{{"dim", I.dim}, {"gens", std::move(gens)}};
}

MonomialIdeal ideal_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("dim") || !j.contains("gens"))
        throw ParseError("ideal must be {\"dim\", \"gens\"}");
    int dim = (int)long_from_json(j.at("dim"), "dim");
    if (!j.at("gens").is_array()) throw ParseError("gens must be an array");
    std::vector<Exponent> gens;
    for (const auto& row : j.at("gens")) {
        if (!row.is_array()) throw ParseError("generator must be an array of integers");
        Exponent g;
        for (const auto& e : row) g.push_back(long_from_json(e, "exponent"));
        gens.push_back(std::move(g));
    }
    try {
        return make_ideal(dim, std::move(gens));
    } catch (const InvariantError& err) {
        throw ParseError(err.what());
    }
}

Json body_to_json(const UpBody& P) {
    Json facets = Json::array();
    for (const auto& f : P.facets)
        facets.push_back(Json{{"normal", ratvec_to_json(f.normal)}, {"offset", rat_str(f.offset)}});
    return Json{{"dim", P.dim}, {"facets", std::move(facets)}};
}

UpBody body_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("dim") || !j.contains("facets"))
        throw ParseError("body must be {\"dim\", \"facets\"}");
    int dim = (int)long_from_json(j.at("dim"), "dim");
    if (!j.at("facets").is_array()) throw ParseError("facets must be an array");
    std::vector<Facet> facets;
    for (const auto& fj : j.at("facets")) {
        if (!fj.is_object() || !fj.contains("normal") || !fj.contains("offset"))
            throw ParseError("facet must be {\"normal\", \"offset\"}");
        facets.push_back({ratvec_from_json(fj.at("normal")), rat_from_json(fj.at("offset"))});
    }
    try {
        return make_upbody(dim, std::move(facets));
    } catch (const InvariantError& err) {
        throw ParseError(err.what());
    }
}

Json filt_to_json(const FiltrationExpr& F) {
    switch (F.kind) {
        case FiltKind::Val:
            return Json{{"val", ratvec_to_json(F.weights)}};
        case FiltKind::Pow:
            return Json{{"pow", ideal_to_json(F.base)}};
        case FiltKind::MulConst:
            return Json{{"mulconst", Json{{"c", ideal_to_json(F.base)},
                                          {"f", filt_to_json(*F.left)}}}};
        case FiltKind::Scale:
            return Json{{"scale", Json{{"r", rat_str(F.scalar)},
                                       {"f", filt_to_json(*F.left)}}}};
        case FiltKind::Prod:
            return Json{{"prod", Json::array({filt_to_json(*F.left), filt_to_json(*F.right)})}};
        case FiltKind::Inter:
            return Json{{"inter", Json::array({filt_to_json(*F.left), filt_to_json(*F.right)})}};
        case FiltKind::Sum:
            return Json{{"sum", Json::array({filt_to_json(*F.left), filt_to_json(*F.right)})}};
        case FiltKind::Geo:
            return Json{{"geo", Json{{"f", filt_to_json(*F.left)},
                                     {"g", filt_to_json(*F.right)},
                                     {"t", rat_str(F.scalar)}}}};
    }
    throw InvariantError("unknown filtration node kind");
}

FiltPtr filt_from_json(const Json& j) {
    if (!j.is_object() || j.size() != 1)
        throw ParseError("filtration node must be a single-key tagged object");
    const std::string tag = j.begin().key();
    const Json& body = j.begin().value();
    try {
        if (tag == "val") return F_val(ratvec_from_json(body));
        if (tag == "pow") return F_pow(ideal_from_json(body));
        if (tag == "mulconst") {
            if (!body.is_object() || !body.contains("c") || !body.contains("f"))
                throw ParseError("mulconst must be {\"c\", \"f\"}");
            return F_mulconst(ideal_from_json(body.at("c")), filt_from_json(body.at("f")));
        }
        if (tag == "scale") {
            if (!body.is_object() || !body.contains("r") || !body.contains("f"))
                throw ParseError("scale must be {\"r\", \"f\"}");
            return F_scale(rat_from_json(body.at("r")), filt_from_json(body.at("f")));
        }
        auto binary = [&](FiltPtr (*make)(FiltPtr, FiltPtr)) {
            if (!body.is_array() || body.size() != 2)
                throw ParseError(tag + " must be a two-element array");
            return make(filt_from_json(body[0]), filt_from_json(body[1]));
        };
        if (tag == "prod") return binary(F_prod);
        if (tag == "inter") return binary(F_inter);
        if (tag == "sum") return binary(F_sum);
        if (tag == "geo") {
            if (!body.is_object() || !body.contains("f") || !body.contains("g") ||
                !body.contains("t"))
                throw ParseError("geo must be {\"f\", \"g\", \"t\"}");
            return F_geo(filt_from_json(body.at("f")), filt_from_json(body.at("g")),
                         rat_from_json(body.at("t")));
        }
    } catch (const SumNotConvex&) {
        throw;  // semantic invariant, not a parse failure
    } catch (const InvariantError& err) {
        throw ParseError(err.what());
    }
    throw ParseError("unknown filtration tag '" + tag + "'");
}

Json parse_json(const std::string& text) {
    Json j = Json::parse(text, nullptr, false);
    if (j.is_discarded()) throw ParseError("malformed JSON");
    return j;
}

} // namespace filtlab
