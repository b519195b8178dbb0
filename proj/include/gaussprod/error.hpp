#pragma once

#include <stdexcept>
#include <string>

namespace gaussprod {

/// Thrown when an argument violates an operation's documented precondition
/// (non-prime modulus, wrong congruence regime, undefined block layout...).
class precondition_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Thrown when an exact identity that must hold by construction does not,
/// e.g. a character sum that is not divisible by its denominator.
/// Seeing one of these means an arithmetic bug, not bad input.
class internal_error : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

namespace detail {

inline void require(bool cond, const std::string& what)
{
    if (!cond) throw precondition_error(what);
}

inline void ensure(bool cond, const std::string& what)
{
    if (!cond) throw internal_error(what);
}

} // namespace detail
} // namespace gaussprod
