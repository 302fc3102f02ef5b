#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace eegscore {

/// Base for every error the library raises on bad data or I/O.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Malformed input line; `line()` is 1-based, 0 when not applicable.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line = 0)
      : Error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class UnknownLabel : public ParseError {
 public:
  UnknownLabel(const std::string& label, std::size_t line)
      : ParseError("unknown label '" + label + "'", line), label_(label) {}
  const std::string& label() const noexcept { return label_; }

 private:
  std::string label_;
};

class MissingPrediction : public Error {
 public:
  explicit MissingPrediction(const std::string& record_id)
      : Error("no prediction for record '" + record_id + "'"), record_id_(record_id) {}
  const std::string& record_id() const noexcept { return record_id_; }

 private:
  std::string record_id_;
};

/// Remote tagger unreachable after all attempts.
class TransportError : public Error {
 public:
  TransportError(const std::string& what, int attempts)
      : Error(what + " (after " + std::to_string(attempts) + " attempt(s))"), attempts_(attempts) {}
  int attempts() const noexcept { return attempts_; }

 private:
  int attempts_;
};

/// Remote tagger answered, but not per the wire protocol.
class ProtocolError : public Error {
 public:
  using Error::Error;
};

}  // namespace eegscore
