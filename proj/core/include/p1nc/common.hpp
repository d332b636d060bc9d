#pragma once

#include <array>
#include <functional>
#include <stdexcept>
#include <string>

namespace p1nc {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

using ScalarFunction = std::function<double(double x, double y)>;
using VectorFunction = std::function<std::array<double, 2>(double x, double y)>;

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Precondition violations: wrong entity kind, mismatched meshes, bad sizes.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A consistency check that validation should have made impossible.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace p1nc
