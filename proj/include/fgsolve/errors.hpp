#pragma once

#include <stdexcept>

namespace fgsolve {

/// Multiset difference whose subtrahend is not included in the minuend.
struct NotIncluded : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

/// Multiset division without an exact quotient.
struct NotDivisible : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

/// An operation that needs a cyclic node was handed a transient one.
struct NotCyclic : std::invalid_argument
{
    using std::invalid_argument::invalid_argument;
};

/// A brute-force routine was asked for more work than its budget allows.
struct SizeLimit : std::length_error
{
    using std::length_error::length_error;
};

/// Random-instance parameters that no graph can satisfy.
struct InfeasibleSpec : std::invalid_argument
{
    using std::invalid_argument::invalid_argument;
};

/// Malformed `.fg` (or other textual) input.
struct ParseError : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

} // namespace fgsolve
