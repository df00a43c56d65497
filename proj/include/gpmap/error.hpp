#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gpmap {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Invalid parameters or configuration. CLI exit code 1.
class ValidationError : public Error {
public:
  using Error::Error;
};

/// A genotype violates its structural invariants (bad index, levels-back, register range).
class StructuralError : public ValidationError {
public:
  using ValidationError::ValidationError;
};

/// Malformed circuit text. `position` is the byte offset where parsing stopped.
class ParseError : public ValidationError {
public:
  ParseError(const std::string& what, std::size_t position)
      : ValidationError(what + " at position " + std::to_string(position)), position_(position) {}

  std::size_t position() const noexcept { return position_; }

private:
  std::size_t position_;
};

/// An estimator could not gather its full sample within budget. CLI exit code 2.
class PartialResultError : public Error {
public:
  PartialResultError(const std::string& what, std::size_t achieved, std::size_t requested)
      : Error(what), achieved_(achieved), requested_(requested) {}

  std::size_t achieved() const noexcept { return achieved_; }
  std::size_t requested() const noexcept { return requested_; }

private:
  std::size_t achieved_;
  std::size_t requested_;
};

/// A search found nothing up to its cap (for example the gate-count cap of a minimum-circuit search).
class NotFoundError : public PartialResultError {
public:
  NotFoundError(const std::string& what, std::size_t cap) : PartialResultError(what, 0, 1), cap_(cap) {}

  std::size_t cap() const noexcept { return cap_; }

private:
  std::size_t cap_;
};

/// A computation would exceed a configured size bound. CLI exit code 3.
class ResourceError : public Error {
public:
  using Error::Error;
};

}  // namespace gpmap
