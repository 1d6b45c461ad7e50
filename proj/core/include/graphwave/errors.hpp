#pragma once

#include <stdexcept>
#include <string>

namespace graphwave {

// Invalid input that can be diagnosed before any computation starts:
// malformed graph descriptions, non-unitary vertex matrices, bad ranges.
class SpecError : public std::runtime_error {
public:
  explicit SpecError(const std::string& what) : std::runtime_error(what) {}
};

// Structurally valid input that violates a precondition of the requested
// operation (e.g. asking for lead-to-lead scattering on a closed graph).
class PreconditionError : public std::runtime_error {
public:
  explicit PreconditionError(const std::string& what) : std::runtime_error(what) {}
};

// A computation that started but cannot deliver a trustworthy result:
// failed root refinement, overflowing enumeration budgets, and the like.
class NumericError : public std::runtime_error {
public:
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace graphwave
