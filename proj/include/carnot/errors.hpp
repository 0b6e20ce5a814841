#pragma once

#include <stdexcept>
#include <string>

namespace carnot {

struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct ParseError : Error {
  using Error::Error;
};
struct MissingComponent : Error {
  using Error::Error;
};
struct MissingCoordinate : Error {
  using Error::Error;
};
struct UnknownBuiltin : Error {
  using Error::Error;
};
struct InvalidAlgebra : Error {
  using Error::Error;
};
struct SingularFrame : Error {
  using Error::Error;
};
struct NotGenerating : Error {
  using Error::Error;
};
struct NonpositiveRadius : Error {
  using Error::Error;
};
struct WrongStep : Error {
  using Error::Error;
};
struct NotAbelian : Error {
  using Error::Error;
};
struct NotConstantLaplacian : Error {
  using Error::Error;
};
struct StructureMismatch : Error {
  using Error::Error;
};
struct NoWitnessFound : Error {
  using Error::Error;
};
struct LimitExceeded : Error {
  using Error::Error;
};

}  // namespace carnot
