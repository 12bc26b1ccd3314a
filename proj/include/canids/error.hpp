#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace canids {

// Base class for all errors thrown by this library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed input text. Carries the 1-based line number and the offending
// field when known.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::string field = {})
      : Error("line " + std::to_string(line) +
              (field.empty() ? std::string{} : " field '" + field + "'") +
              ": " + what),
        line_(line),
        field_(std::move(field)) {}

  std::size_t line() const { return line_; }
  const std::string& field() const { return field_; }

 private:
  std::size_t line_;
  std::string field_;
};

// Filesystem / stream failures, surfaced verbatim.
class IoError : public Error {
 public:
  using Error::Error;
};

// Invalid configuration or violated operation precondition.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// A pipeline stage was invoked before its inputs exist on disk.
class DependencyError : public Error {
 public:
  DependencyError(const std::string& what, std::string missing_path)
      : Error(what + " (missing: " + missing_path + ")"),
        missing_path_(std::move(missing_path)) {}

  const std::string& missing_path() const { return missing_path_; }

 private:
  std::string missing_path_;
};

// Layer shape mismatch while building or running a network.
class GraphError : public Error {
 public:
  using Error::Error;
};

// Non-finite loss/gradients or other failures during optimization.
class TrainingError : public Error {
 public:
  using Error::Error;
};

// API contract violation (mismatched tape, wrong split, width mismatch...).
class ContractError : public Error {
 public:
  using Error::Error;
};

// Traffic synthesis could not satisfy the requested profile.
class GenerationError : public Error {
 public:
  using Error::Error;
};

// Base for on-disk container problems; loads distinguish the cases below.
class FormatError : public Error {
 public:
  using Error::Error;
};

class VersionError : public FormatError {
 public:
  using FormatError::FormatError;
};

class ShapeError : public FormatError {
 public:
  using FormatError::FormatError;
};

class TruncationError : public FormatError {
 public:
  using FormatError::FormatError;
};

}  // namespace canids
