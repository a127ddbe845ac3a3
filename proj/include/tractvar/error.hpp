#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tractvar {

enum class ErrorKind {
  // geometry
  CollinearPoints,
  DegenerateFit,
  NoIntersection,
  DegenerateAngle,
  // anatomy
  AnatomyInconsistent,
  InvalidArgument,
  // ingest
  ParseError,
  SchemaError,
  DegenerateTrace,
  InsufficientData,
  // comparison
  ZeroVariance,
  LengthMismatch,
  TimebaseMismatch,
  // cli
  ConfigError,
  IoError,
};

std::string_view to_string(ErrorKind kind) noexcept;

// Config and I/O problems map to exit code 1, everything else to 2.
bool is_config_or_io(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

  // Returns a copy whose message is prefixed with `context` (e.g. a speaker id).
  Error with_context(const std::string& context) const {
    Error e(*this);
    e.context_ = context + (context_.empty() ? "" : ": " + context_);
    e.full_ = e.context_ + ": " + std::runtime_error::what();
    return e;
  }

  const char* what() const noexcept override {
    return full_.empty() ? std::runtime_error::what() : full_.c_str();
  }

 private:
  ErrorKind kind_;
  std::string context_;
  std::string full_;
};

}  // namespace tractvar
