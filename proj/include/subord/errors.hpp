#pragma once

#include <stdexcept>
#include <string>

namespace subord {

/// A parameter bundle violates one of the constraints of its family
/// (or a basic construction invariant such as -1 <= lower < upper <= 1).
class ParameterError : public std::invalid_argument {
public:
    explicit ParameterError(const std::string& what) : std::invalid_argument(what) {}
};

/// A denominator vanished (or fell below the pole guard) during evaluation.
class PoleError : public std::domain_error {
public:
    explicit PoleError(const std::string& what) : std::domain_error(what) {}
};

} // namespace subord
