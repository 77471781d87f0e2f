#pragma once

#include <stdexcept>
#include <string>

namespace skewlab {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DimMismatch : Error {
  using Error::Error;
};
struct NotHermitian : Error {
  using Error::Error;
};
struct NotUnitary : Error {
  using Error::Error;
};
struct NoConvergence : Error {
  using Error::Error;
};
struct NegativeEigenvalue : Error {
  using Error::Error;
};
struct NegativeExponent : Error {
  using Error::Error;
};
struct NonFiniteEntry : Error {
  using Error::Error;
};
struct BadIndex : Error {
  using Error::Error;
};
struct BadProbability : Error {
  using Error::Error;
};
struct BlochNormExceeded : Error {
  using Error::Error;
};
struct IncompleteChannel : Error {
  using Error::Error;
};
struct InvalidParams : Error {
  using Error::Error;
};
struct RegimeViolation : Error {
  using Error::Error;
};
struct TooFewElements : Error {
  using Error::Error;
};
struct TooFewChannels : Error {
  using Error::Error;
};
struct ConfigParse : Error {
  using Error::Error;
};
struct DominanceViolation : Error {
  using Error::Error;
};

}  // namespace skewlab
