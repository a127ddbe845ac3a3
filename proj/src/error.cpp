#include "tractvar/error.hpp"

namespace tractvar {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::CollinearPoints: return "CollinearPoints";
    case ErrorKind::DegenerateFit: return "DegenerateFit";
    case ErrorKind::NoIntersection: return "NoIntersection";
    case ErrorKind::DegenerateAngle: return "DegenerateAngle";
    case ErrorKind::AnatomyInconsistent: return "AnatomyInconsistent";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::SchemaError: return "SchemaError";
    case ErrorKind::DegenerateTrace: return "DegenerateTrace";
    case ErrorKind::InsufficientData: return "InsufficientData";
    case ErrorKind::ZeroVariance: return "ZeroVariance";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::TimebaseMismatch: return "TimebaseMismatch";
    case ErrorKind::ConfigError: return "ConfigError";
    case ErrorKind::IoError: return "IoError";
  }
  return "Unknown";
}

bool is_config_or_io(ErrorKind kind) noexcept {
  return kind == ErrorKind::ConfigError || kind == ErrorKind::IoError;
}

}  // namespace tractvar
