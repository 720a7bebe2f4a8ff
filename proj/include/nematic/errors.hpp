#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace nematic {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvalidInput : Error {
  using Error::Error;
};

struct DomainError : Error {
  using Error::Error;
};

struct DegeneratePotential : Error {
  using Error::Error;
};

struct SingularParameter : Error {
  using Error::Error;
};

// Raised by MaterialParams::validate; the message names the violated inequality.
struct ValidationError : Error {
  using Error::Error;
};

struct ConsistencyError : Error {
  using Error::Error;
};

struct CflViolation : Error {
  using Error::Error;
};

struct SolverAbort : Error {
  SolverAbort(const std::string& what, std::size_t step_index)
      : Error(what + " (step " + std::to_string(step_index) + ")"), step(step_index) {}
  std::size_t step;
};

}  // namespace nematic
