#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace wpg {

/// Base of every error raised by the engine.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t offset, std::vector<std::string> expected, const std::string& what)
      : Error(what), offset_(offset), expected_(std::move(expected)) {}

  std::size_t offset() const noexcept { return offset_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }

 private:
  std::size_t offset_;
  std::vector<std::string> expected_;
};

class UnknownIdentifier : public Error {
 public:
  UnknownIdentifier(std::string name, std::size_t offset)
      : Error("unknown identifier '" + name + "' at offset " + std::to_string(offset)),
        name_(std::move(name)),
        offset_(offset) {}

  const std::string& name() const noexcept { return name_; }
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::string name_;
  std::size_t offset_;
};

class ArityError : public Error {
 public:
  using Error::Error;
};

/// Evaluation outside the domain of a function (log of non-positive, division by zero, ...).
class DomainError : public Error {
 public:
  DomainError(std::string subexpression, const std::string& reason)
      : Error(reason + " in '" + subexpression + "'"), subexpression_(std::move(subexpression)) {}

  const std::string& subexpression() const noexcept { return subexpression_; }

 private:
  std::string subexpression_;
};

class DegenerateMetric : public Error {
 public:
  using Error::Error;
};

class SignatureMismatch : public Error {
 public:
  using Error::Error;
};

/// Inputs that violate an operation's precondition (dimension, placement, slot).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class IllPosedFit : public Error {
 public:
  using Error::Error;
};

class SchemaError : public Error {
 public:
  SchemaError(std::string path, const std::string& reason)
      : Error(path + ": " + reason), path_(std::move(path)) {}

  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

}  // namespace wpg
