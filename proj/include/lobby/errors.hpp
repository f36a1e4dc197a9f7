#pragma once

#include <stdexcept>
#include <string>

namespace lobby {

// Invalid primitive: a probability outside [0,1], a prior outside its range,
// a malformed curve, and so on.
class ModelError : public std::invalid_argument {
public:
    explicit ModelError(const std::string& what) : std::invalid_argument(what) {}
};

// A solver was asked for an equilibrium outside the parameter region in which
// it is characterized (for example the concealed-intent/concealed-consequence
// regime when the spade condition fails).
class AssumptionViolated : public std::runtime_error {
public:
    explicit AssumptionViolated(const std::string& what) : std::runtime_error(what) {}
};

} // namespace lobby
