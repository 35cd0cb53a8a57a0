#pragma once

#include <stdexcept>
#include <string>

namespace pdm {

/// Base class for every failure raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A parameter set violates a documented invariant.
class InvalidParameter : public Error {
 public:
  using Error::Error;
};

/// A closed-form evaluation produced a non-finite value.
class EvaluationOverflow : public Error {
 public:
  EvaluationOverflow(const std::string& what, double x, double y);
  double x() const noexcept { return x_; }
  double y() const noexcept { return y_; }

 private:
  double x_;
  double y_;
};

/// The model's ordering does not collapse to the exactly solvable form.
class OrderingNotSolvable : public Error {
 public:
  using Error::Error;
};

class NoBoundStates : public Error {
 public:
  using Error::Error;
};

class InvalidLevel : public Error {
 public:
  using Error::Error;
};

class ChannelUnsupported : public Error {
 public:
  explicit ChannelUnsupported(double energy);
  double energy() const noexcept { return energy_; }

 private:
  double energy_;
};

class QuadratureNotConverged : public Error {
 public:
  using Error::Error;
};

class GridTooSmall : public Error {
 public:
  using Error::Error;
};

/// An iterative solver ran out of iterations. Callers map this to exit code 2.
class NotConverged : public Error {
 public:
  using Error::Error;
};

class NoBracket : public Error {
 public:
  using Error::Error;
};

/// The potential keeps decreasing at the scan boundary; the reported point
/// is the best boundary sample.
class Unbounded : public Error {
 public:
  Unbounded(double x, double y, double value);
  double x() const noexcept { return x_; }
  double y() const noexcept { return y_; }
  double value() const noexcept { return value_; }

 private:
  double x_;
  double y_;
  double value_;
};

}  // namespace pdm
