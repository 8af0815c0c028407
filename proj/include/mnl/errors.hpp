#pragma once

#include <stdexcept>
#include <string>

namespace mnl {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// p lies too close to the ray p3 = -p0 where the massless section is undefined
struct OutOfChart : Error {
  using Error::Error;
};

// p is not on the light cone or the requested mass shell
struct NotOnShell : Error {
  using Error::Error;
};
using NotOnCone = NotOnShell;

struct DimensionMismatch : Error {
  using Error::Error;
};

struct InvalidArgument : Error {
  using Error::Error;
};

} // namespace mnl
