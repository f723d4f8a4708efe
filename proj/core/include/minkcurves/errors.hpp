#pragma once

#include <stdexcept>
#include <string>

namespace minkcurves {

// Base class for every recoverable failure raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NonzeroConstantTerm : public Error {
 public:
  using Error::Error;
};

class DegenerateIFT : public Error {
 public:
  using Error::Error;
};

class ZeroVector : public Error {
 public:
  using Error::Error;
};

class FrameDegeneracy : public Error {
 public:
  using Error::Error;
};

class OutsideValidity : public Error {
 public:
  using Error::Error;
};

class InsufficientDegree : public Error {
 public:
  using Error::Error;
};

class WrongScenario : public Error {
 public:
  using Error::Error;
};

class SingularBaseCurve : public Error {
 public:
  using Error::Error;
};

class FitResidualTooLarge : public Error {
 public:
  FitResidualTooLarge(const std::string& what, double residual)
      : Error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

class InsufficientPolylineResolution : public Error {
 public:
  using Error::Error;
};

}  // namespace minkcurves
