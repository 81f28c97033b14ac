#pragma once

#include <stdexcept>
#include <string>

namespace flagsos {

// Raised when an input exceeds an enumeration or computation budget.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when an SDP is detected to be primal or dual infeasible.
class Infeasible : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when a certificate or identity fails exact verification.
class VerificationFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace flagsos
