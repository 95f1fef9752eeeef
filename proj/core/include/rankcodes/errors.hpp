#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rankcodes {

/// A vector component does not lie in the required GF(q)-subspace.
class OutsideSubspace : public std::invalid_argument {
public:
    OutsideSubspace(std::size_t position, const std::string& what)
        : std::invalid_argument(what), position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

/// The subspace has dimension m < d, so the subcode is {0} and has no parent code.
class TrivialSubcode : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// An internal consistency check failed (a result that the algebra says cannot happen).
class InvariantViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace rankcodes
