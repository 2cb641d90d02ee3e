#pragma once

#include <stdexcept>
#include <string>

namespace mms3 {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bad call arguments or malformed domain objects.
class ArgumentError : public Error {
public:
    using Error::Error;
};

// Malformed instance files or model text.
class ParseError : public Error {
public:
    using Error::Error;
};

// An enumeration budget was exceeded. Results are exact or refused, never
// silently approximated.
class ResourceError : public Error {
public:
    using Error::Error;
};

// Instances with zero shares (or zero rows/columns) where a ratio or a
// rescaling target is undefined.
class DegenerateError : public Error {
public:
    using Error::Error;
};

// An internal algorithm guarantee failed to hold. Carries a diagnostic of
// which step reached the contradiction.
class ContractError : public Error {
public:
    using Error::Error;
};

} // namespace mms3
