#pragma once

#include <stdexcept>
#include <string>

namespace qrg {

// Bad user input: malformed specs, values outside the documented domain.
class InputError : public std::runtime_error {
public:
    explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

// A configured resource cap (enumeration size, dense dimension, work budget)
// would be exceeded.  Callers may retry with a larger cap.
class CapExceeded : public std::runtime_error {
public:
    explicit CapExceeded(const std::string& what) : std::runtime_error(what) {}
};

// A conclusion that is guaranteed by the underlying theory failed to hold.
// This always indicates a bug somewhere and is reported loudly.
class TheoremViolation : public std::runtime_error {
public:
    explicit TheoremViolation(const std::string& what) : std::runtime_error(what) {}
};

// An iterative numerical method failed to converge within its budget.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace qrg
