#pragma once

#include <stdexcept>
#include <string>

namespace gdnls {

// Every library failure derives from Error so callers can catch broadly.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ShapeError : Error { using Error::Error; };
struct BandError : Error { using Error::Error; };
struct GridAlignmentError : Error { using Error::Error; };
struct DomainError : Error { using Error::Error; };
struct UndefinedRatio : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };
struct DegreeError : Error { using Error::Error; };
struct DealiasError : Error { using Error::Error; };
struct ResampleError : Error { using Error::Error; };
struct DependencyError : Error { using Error::Error; };
struct ResolutionError : Error { using Error::Error; };
struct RangeError : Error { using Error::Error; };
struct FitError : Error { using Error::Error; };
struct ConfigError : Error { using Error::Error; };

}  // namespace gdnls
