#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace projclass {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& msg, std::size_t position)
      : Error(msg + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

class UndeclaredIdentifier : public ParseError {
 public:
  UndeclaredIdentifier(const std::string& name, std::size_t position)
      : ParseError("undeclared identifier '" + name + "'", position), name_(name) {}
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

class EvaluationError : public Error {
 public:
  enum class Reason { Pole, Branch, Unbound };
  EvaluationError(Reason r, const std::string& msg) : Error(msg), reason_(r) {}
  Reason reason() const { return reason_; }

 private:
  Reason reason_;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class DegenerateCharacteristic : public DomainError {
 public:
  using DomainError::DomainError;
};

class CoincidentSpeeds : public DomainError {
 public:
  using DomainError::DomainError;
};

class UnclassifiedStratum : public Error {
 public:
  using Error::Error;
};

class NonSpecialConnection : public Error {
 public:
  using Error::Error;
};

class Unavailable : public Error {
 public:
  using Error::Error;
};

}  // namespace projclass
