#pragma once

#include <stdexcept>
#include <string>

namespace nonbark {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DimensionMismatch : Error { using Error::Error; };
struct VanishingOverlap : Error { using Error::Error; };
struct IncompleteBasis : Error { using Error::Error; };
struct UnsupportedElement : Error { using Error::Error; };
struct NonConvergence : Error { using Error::Error; };
struct DegenerateWindow : Error { using Error::Error; };
struct InvalidInteractionCount : Error { using Error::Error; };
struct InvalidIndices : Error { using Error::Error; };
struct OutOfRegion : Error { using Error::Error; };
struct InvalidPostselectionTime : Error { using Error::Error; };
struct StabilityViolation : Error { using Error::Error; };
struct QuadratureFailure : Error { using Error::Error; };
struct ConfigError : Error { using Error::Error; };
struct IoError : Error { using Error::Error; };

}  // namespace nonbark
