#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qiav
{

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Malformed mesh text (bad header, short file, bad token).
class ParseError : public Error
{
public:
  ParseError(const std::string& msg, std::size_t line)
      : Error("line " + std::to_string(line) + ": " + msg), line_(line)
  {
  }
  std::size_t line() const { return line_; }

private:
  std::size_t line_;
};

/// A mesh that parses but violates an invariant. `kind` is one of
/// "duplicate-vertex", "non-matching", "degenerate", "index".
class ValidationError : public Error
{
public:
  ValidationError(std::string kind, std::size_t entity, const std::string& msg)
      : Error(kind + " (entity " + std::to_string(entity) + "): " + msg),
        kind_(std::move(kind)), entity_(entity)
  {
  }
  const std::string& kind() const { return kind_; }
  std::size_t entity() const { return entity_; }

private:
  std::string kind_;
  std::size_t entity_;
};

/// Requested feature outside the supported table (element pair, quadrature
/// degree, derivative order).
class CapabilityError : public Error
{
public:
  using Error::Error;
};

/// Non-finite function values met while integrating over a cell.
class EvaluationError : public Error
{
public:
  EvaluationError(std::size_t cell, const std::string& msg)
      : Error("cell " + std::to_string(cell) + ": " + msg), cell_(cell)
  {
  }
  std::size_t cell() const { return cell_; }

private:
  std::size_t cell_;
};

/// Iterative quadrature did not reach its tolerance.
class AccuracyError : public Error
{
public:
  AccuracyError(const std::string& msg, double previous, double last)
      : Error(msg), previous_(previous), last_(last)
  {
  }
  double previous() const { return previous_; }
  double last() const { return last_; }

private:
  double previous_;
  double last_;
};

/// Invalid study configuration or command-line usage.
class UsageError : public Error
{
public:
  using Error::Error;
};

/// A broken internal invariant (singular mass matrix, etc.).
class InternalError : public Error
{
public:
  using Error::Error;
};

} // namespace qiav
