#pragma once

#include <stdexcept>
#include <string>

namespace cvtele {

// Bad shapes, out-of-range indices, empty shot counts.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A state or parameter set violating the uncertainty principle (tau < 1,
// symplectic eigenvalue below the vacuum level, sigma_x * sigma_p < 1/16).
class UnphysicalError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Measured numbers that cannot come from any physical state under the loss model.
class InconsistentMeasurement : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Unsupported : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace cvtele
