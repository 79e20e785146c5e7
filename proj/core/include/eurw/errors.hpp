#pragma once

#include <stdexcept>
#include <string>

namespace eurw {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NotSquare : Error {
  using Error::Error;
};
struct NotHermitian : Error {
  using Error::Error;
};
struct DimensionMismatch : Error {
  using Error::Error;
};
struct InvalidState : Error {
  using Error::Error;
};
struct PartyError : Error {
  using Error::Error;
};
struct AxisError : Error {
  using Error::Error;
};
struct CapExceeded : Error {
  using Error::Error;
};
struct MissingPartnerBasis : Error {
  using Error::Error;
};
struct NoCrossing : Error {
  using Error::Error;
};
struct MissingTable : Error {
  using Error::Error;
};
struct InvalidDistribution : Error {
  using Error::Error;
};
struct ConfigError : Error {
  using Error::Error;
};

}  // namespace eurw
