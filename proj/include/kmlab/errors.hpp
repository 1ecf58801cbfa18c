#pragma once

#include <stdexcept>
#include <string>

namespace kmlab {

// Error taxonomy. domain_error: argument outside the mathematical domain
// (non-positive kernel argument, non-Hermitian matrix). usage_error: caller
// broke an interface contract (bad index, parameter out of range).
// boundary_error: a state touched the boundary of the positive cone.
// ordering_error: a majorisation precondition does not hold.
// numerical_error: a computation could not be completed reliably.

struct error : std::runtime_error {
    explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

struct domain_error : error {
    explicit domain_error(const std::string& msg) : error(msg) {}
};

struct usage_error : error {
    explicit usage_error(const std::string& msg) : error(msg) {}
};

struct boundary_error : error {
    explicit boundary_error(const std::string& msg) : error(msg) {}
};

struct ordering_error : error {
    explicit ordering_error(const std::string& msg) : error(msg) {}
};

struct numerical_error : error {
    explicit numerical_error(const std::string& msg) : error(msg) {}
};

} // namespace kmlab
