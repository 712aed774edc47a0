#pragma once

#include "xshap/model.hpp"

#include <nlohmann/json.hpp>

#include <string>

namespace xshap {

using Json = nlohmann::ordered_json;

struct IoOptions {
    std::uint64_t point_cap = kDefaultPointCap;
};

// Parses and fully validates a model document: structure, domain membership,
// tree/circuit integrity and non-constancy. Circuit determinism and
// decomposability flags are recomputed at load. Malformed documents raise
// schema_error with a path to the offending field.
Model parse_model(const Json& doc, const IoOptions& options = {});
Model load_model(const std::string& path, const IoOptions& options = {});

// Canonical serialization: fixed field order, integers as JSON numbers,
// other rationals as "p/q" strings. parse(serialize(m)) == m.
Json serialize_model(const Model& model);

struct Instance {
    Point point;
    Rational delta;
};

Instance parse_instance(const Json& doc, const FeatureSpace& space);
Instance load_instance(const std::string& path, const FeatureSpace& space);
Json serialize_instance(const FeatureSpace& space, const Instance& instance);

// A JSON scalar as a domain/output value. Integers parse exactly; strings
// holding "p/q" or decimal literals parse as exact numbers, anything else is
// a categorical token. Raw JSON floats are rejected: their text is lost to
// binary rounding before we see it.
Value parse_value(const Json& j, const std::string& path);
Json value_to_json(const Value& v);

// Point from an array of values (not indices); each coordinate must be a
// member of its domain.
Point parse_point(const Json& arr, const FeatureSpace& space, const std::string& path);
Json point_to_json(const FeatureSpace& space, const Point& p);

// Point from CLI text: either a JSON array ("[0,1]") or a bare
// comma-separated list ("0,1").
Point parse_point_text(const std::string& text, const FeatureSpace& space);

} // namespace xshap
