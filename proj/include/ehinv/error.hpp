#pragma once

#include <stdexcept>
#include <string>

namespace ehinv {

/// Raised when an operation is called outside its stated domain
/// (empty operand, wrong cardinality, zero generator, ...).
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A 64-bit sum or product left the representable range.
class OverflowError : public std::overflow_error {
public:
    using std::overflow_error::overflow_error;
};

/// Two modular operands (or an operand and a context) disagree on p.
class ModulusMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A structural characterization was asked about a pair it does not cover.
/// This is not a "not critical" verdict.
class HypothesisViolation : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Malformed set literal or config text.
class ParseError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

} // namespace ehinv
