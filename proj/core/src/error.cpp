#include "nlscheck/error.hpp"

namespace nlscheck {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::PoleProximity: return "PoleProximity";
    case ErrorKind::NegativeRadicand: return "NegativeRadicand";
    case ErrorKind::RealityViolation: return "RealityViolation";
    case ErrorKind::StencilOutOfDomain: return "StencilOutOfDomain";
    case ErrorKind::DegenerateResiduals: return "DegenerateResiduals";
    case ErrorKind::NonFiniteSamples: return "NonFiniteSamples";
    case ErrorKind::WindowContainsPole: return "WindowContainsPole";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace nlscheck
