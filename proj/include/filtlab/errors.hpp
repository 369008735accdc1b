#pragma once

#include <stdexcept>
#include <string>

namespace filtlab {

// Base for all invariant violations (CLI exit code 3).
struct InvariantError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimensionMismatch : InvariantError {
    explicit DimensionMismatch(const std::string& what) : InvariantError("dimension mismatch: " + what) {}
};

// Ideal has infinite colength (some axis carries no pure power).
struct NotPrimary : InvariantError {
    explicit NotPrimary(const std::string& what) : InvariantError("NotPrimary: " + what) {}
};

// Orthant complement of an up-closed body is unbounded; covolume undefined.
struct UnboundedComplement : InvariantError {
    explicit UnboundedComplement(const std::string& what) : InvariantError("UnboundedComplement: " + what) {}
};

// An operation requiring a convex limit body met a Sum (union) node.
struct SumNotConvex : InvariantError {
    explicit SumNotConvex(const std::string& what) : InvariantError("SumNotConvex: " + what) {}
};

// Input could not be parsed (CLI exit code 2).
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Iterative refinement hit its partition/iteration cap (CLI exit code 4).
struct NonConvergence : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace filtlab
