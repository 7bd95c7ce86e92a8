#pragma once

#include <stdexcept>
#include <string>

namespace bvsr {

// Malformed input file (bad row length, unreadable token).
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Well-formed input that violates a value constraint.
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Mismatched dimensions between inputs.
class DimensionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace bvsr
