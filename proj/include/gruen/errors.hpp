#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace gruen {

/// Precondition or domain violation (bad prime, ell == p, ...).
struct domain_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// An enumeration would exceed the element cap.
struct cap_exceeded : std::runtime_error {
    std::uint64_t cap;
    explicit cap_exceeded(std::uint64_t cap_, const std::string& what_)
        : std::runtime_error(what_ + " (cap " + std::to_string(cap_) + " elements)"), cap(cap_) {}
};

/// A condition that a correct build can never reach (e.g. a Sylow
/// construction that cannot complete). Must abort loudly.
struct internal_error : std::logic_error {
    using std::logic_error::logic_error;
};

} // namespace gruen
