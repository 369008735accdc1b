#pragma once

// JSON (de)serialization of the core value types.  Rationals are always
// strings "p/q" in lowest terms with q > 0; parsing is strict and raises
// ParseError on malformed input.

#include <string>

#include <json.hpp>

#include "filtlab/filtration.hpp"

namespace filtlab {

using Json = nlohmann::json;

Json ideal_to_json(const MonomialIdeal& I);
MonomialIdeal ideal_from_json(const Json& j);

Json body_to_json(const UpBody& P);
UpBody body_from_json(const Json& j);

Json filt_to_json(const FiltrationExpr& F);
FiltPtr filt_from_json(const Json& j);

// Strict wrappers: parse a whole string, ParseError on any failure.
Json parse_json(const std::string& text);

} // namespace filtlab
