#pragma once

#include <stdexcept>
#include <string>

namespace rulelist {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed input file (CSV, rule/label/model files). Message carries the line number.
struct ParseError : Error {
    using Error::Error;
};

// Input parses but violates a schema requirement (non-binary label, length mismatch).
struct SchemaError : Error {
    using Error::Error;
};

// Invalid argument combination (k > N, lambda < 0, ...).
struct ArgumentError : Error {
    using Error::Error;
};

// Mining left zero antecedents, or a solve was requested on an empty set.
struct EmptyModelError : Error {
    using Error::Error;
};

// Oracle enumeration would exceed its budget.
struct BudgetError : Error {
    using Error::Error;
};

} // namespace rulelist
