#pragma once

#include <stdexcept>
#include <string>

namespace morita {

/** Base class for all library errors. */
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/** Malformed text or JSON input. */
class ParseError : public Error {
 public:
  using Error::Error;
};

/** Matrix or arrow shapes that do not compose. */
class ShapeError : public Error {
 public:
  using Error::Error;
};

/** Well-formed input that violates a documented precondition. */
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/** The center of a category has a central element whose spectrum is not rational. */
class NotSplitOverBaseField : public Error {
 public:
  NotSplitOverBaseField(std::string polynomial, std::string detail)
      : Error("not split over Q(i): minimal polynomial factor " + polynomial + " has no rational roots (" + detail + ")"),
        polynomial_(std::move(polynomial)) {}
  const std::string& polynomial() const { return polynomial_; }

 private:
  std::string polynomial_;
};

/** A self-adjoint element with a repeated root in its minimal polynomial. */
class NotSemisimple : public Error {
 public:
  using Error::Error;
};

/**
 * A construction needs an element (minimal projection, matrix unit) that the
 * rational search could not produce; the mathematical object exists but may
 * need square roots outside Q(i).
 */
class RationalWitnessUnavailable : public Error {
 public:
  using Error::Error;
};

}  // namespace morita
