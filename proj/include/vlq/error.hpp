#pragma once

#include <stdexcept>
#include <string>

namespace vlq {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operand shapes do not agree (vector dims, matrix sizes, register sizes).
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// An argument is outside the operation's domain (zero vector, non-Hermitian
/// matrix, out-of-range index, state outside the code space, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Ensemble cannot be coded: empty, or a vector dependent where it must not be.
class DegenerateEnsembleError : public Error {
 public:
  using Error::Error;
};

/// Side-channel bitstream does not parse as a sequence of codewords.
class FramingError : public Error {
 public:
  using Error::Error;
};

/// Output could not be written.
class IoError : public Error {
 public:
  using Error::Error;
};

/// File content failed to parse or validate. `where` carries a position or
/// JSON path when one is known.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::string where = {})
      : Error(where.empty() ? what : where + ": " + what), where_(std::move(where)) {}
  const std::string& where() const noexcept { return where_; }

 private:
  std::string where_;
};

}  // namespace vlq
