#pragma once

#include <stdexcept>
#include <string>

namespace dwg {

/// Input is outside the physical regime an operation is defined for.
class RegimeError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Parameters sit exactly on a separatrix such as |E| == |k|.
class BoundaryCase : public RegimeError {
 public:
  using RegimeError::RegimeError;
};

/// The particle cannot enter the well; total reflection.
class NoRefraction : public RegimeError {
 public:
  using RegimeError::RegimeError;
};

/// Every angle is allowed; there is no limiting angle.
class NoLimit : public RegimeError {
 public:
  using RegimeError::RegimeError;
};

/// The interior momentum vanishes and the two interior basis spinors coincide.
class BranchPoint : public RegimeError {
 public:
  using RegimeError::RegimeError;
};

/// Classical motion is impossible for these parameters.
class ForbiddenRegime : public RegimeError {
 public:
  using RegimeError::RegimeError;
};

class SingularMatrix : public std::runtime_error {
 public:
  SingularMatrix(const std::string& what, double rcond)
      : std::runtime_error(what + " (rcond estimate " + std::to_string(rcond) + ")"), rcond_(rcond) {}
  double rcond() const { return rcond_; }

 private:
  double rcond_;
};

}  // namespace dwg
