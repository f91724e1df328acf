#pragma once

#include <stdexcept>
#include <string>

namespace slag {

// Base for all recoverable errors raised by the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The discrete data is too coarse to resolve a continuous phase lift
// (a tangent turn of pi/2 or more), or a flow step degenerated the mesh.
struct RefinementRequired : Error {
  using Error::Error;
};

// A grading does not exist: nonzero Maslov class, or a connect-sum phase
// window violated at some intersection point.
struct GradingError : Error {
  using Error::Error;
};

// Curves overlap along parallel segments; transverse data required.
struct ParallelIntersection : Error {
  using Error::Error;
};

}  // namespace slag
