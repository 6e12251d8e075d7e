#pragma once

#include <stdexcept>
#include <string>

namespace egcs {

/// Truncation dimension too small for the requested displacement / Fock index.
class AdequacyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Mode labels or mode count do not match what an optical element expects.
class ModeMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ZeroNorm : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotNormalized : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The probe carries no phase information (QFI = 0).
class ZeroInformation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DegenerateFit : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace egcs
