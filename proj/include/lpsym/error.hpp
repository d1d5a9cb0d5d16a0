#pragma once

#include <stdexcept>
#include <string>

namespace lpsym {

// Thrown when an argument lies outside the domain an operation is defined on.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Thrown when a sampler gives up, e.g. the max-id point cap is exceeded.
class SamplingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace lpsym
