#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace premod {

/// Base class for every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: duplicate labels, references to unknown labels, bad shapes.
/// Distinct from an axiom failure, which is reported in a ValidationReport.
class StructuralError : public Error {
 public:
  using Error::Error;
};

/// A label subset that is not closed under unit, dual or fusion.
class ClosureError : public StructuralError {
 public:
  ClosureError(const std::string& what, std::size_t a, std::size_t b, std::size_t c)
      : StructuralError(what), a_(a), b_(b), c_(c) {}
  std::size_t a() const { return a_; }
  std::size_t b() const { return b_; }
  std::size_t c() const { return c_; }

 private:
  std::size_t a_, b_, c_;
};

/// An operation was called on data that does not meet its precondition
/// (e.g. a non-modular category passed to the RT invariant).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Data passed validation but a derived identity failed numerically.
class NumericalInconsistency : public Error {
 public:
  using Error::Error;
};

class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// The coloring sum would exceed the configured term cap.
class TermCapExceeded : public Error {
 public:
  TermCapExceeded(double terms, double cap)
      : Error("coloring sum needs " + std::to_string(terms) + " terms, cap is " +
              std::to_string(cap)),
        terms_(terms),
        cap_(cap) {}
  double terms() const { return terms_; }
  double cap() const { return cap_; }

 private:
  double terms_;
  double cap_;
};

/// File could not be parsed or has an unsupported format version.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace premod
