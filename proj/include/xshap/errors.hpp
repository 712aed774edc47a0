#pragma once

#include <stdexcept>
#include <string>

namespace xshap {

// Base class for everything thrown by the library.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A point (or baseline) value lies outside its feature domain.
struct domain_violation : error {
    using error::error;
};

// Structurally broken model: inconsistent tree path, constant function, ...
struct model_integrity_error : error {
    using error::error;
};

// Circuit is not a DAG / has several sinks / bad gate arity.
struct structural_error : error {
    using error::error;
};

// An enumeration or subset budget would be exceeded.
struct capacity_error : error {
    using error::error;
};

// Caller passed an argument violating an operation's precondition.
struct argument_error : error {
    using error::error;
};

// A numeric value was required but the model outputs are categorical.
struct neutrality_error : error {
    using error::error;
};

// A p >= 1 norm was requested over categorical domains.
struct norm_error : error {
    using error::error;
};

// Malformed input file; message carries a path to the offending field.
struct schema_error : error {
    using error::error;
};

// A consistency check that must hold by construction failed (a bug).
struct internal_error : error {
    using error::error;
};

} // namespace xshap
