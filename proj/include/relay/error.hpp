#pragma once

#include <stdexcept>
#include <string>

namespace relay {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Zero or otherwise invalid matrix dimensions.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// Operand shapes that do not line up (length mismatch, non-square, non-Hermitian).
class ShapeError : public Error {
 public:
  using Error::Error;
};

// Argument outside the mathematical domain of the function.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Sampling or configuration parameter out of range.
class ParameterError : public Error {
 public:
  using Error::Error;
};

// Eigensolver or quadrature failed to converge.
class SolverError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::string source, int line, std::string field, const std::string& message)
      : Error(format(source, line, field, message)),
        source_(std::move(source)),
        line_(line),
        field_(std::move(field)) {}

  const std::string& source() const noexcept { return source_; }
  int line() const noexcept { return line_; }
  const std::string& field() const noexcept { return field_; }

 private:
  static std::string format(const std::string& source, int line, const std::string& field,
                            const std::string& message) {
    std::string out = source;
    if (line > 0) out += ":" + std::to_string(line);
    if (!field.empty()) out += ": field '" + field + "'";
    return out + ": " + message;
  }

  std::string source_;
  int line_;
  std::string field_;
};

}  // namespace relay
