#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace latkit {

class LatticeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ArgumentError : public LatticeError {
 public:
  using LatticeError::LatticeError;
};

class RankError : public LatticeError {
 public:
  using LatticeError::LatticeError;
};

class CapacityError : public LatticeError {
 public:
  using LatticeError::LatticeError;
};

class EmptyError : public LatticeError {
 public:
  using LatticeError::LatticeError;
};

// Even neighbour requested but (v,v) = 2 or 6 mod 8.
class NormObstruction : public LatticeError {
 public:
  using LatticeError::LatticeError;
};

class NotANeighborError : public LatticeError {
 public:
  using LatticeError::LatticeError;
};

// An internal consistency check failed. Always a bug.
class InternalError : public LatticeError {
 public:
  using LatticeError::LatticeError;
};

class ParseError : public LatticeError {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what)
      : LatticeError("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
                     what),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace latkit
