#include "crg/error.hpp"

namespace crg {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::OverflowUnrepresentable: return "OverflowUnrepresentable";
    case ErrorCode::ZeroHit: return "ZeroHit";
    case ErrorCode::NearZero: return "NearZero";
    case ErrorCode::ContourTooClose: return "ContourTooClose";
    case ErrorCode::NonIntegerResidue: return "NonIntegerResidue";
    case ErrorCode::NonpositiveInterior: return "NonpositiveInterior";
    case ErrorCode::BelowThreshold: return "BelowThreshold";
    case ErrorCode::ZeroInDisk: return "ZeroInDisk";
    case ErrorCode::NonConvergent: return "NonConvergent";
    case ErrorCode::SectorViolation: return "SectorViolation";
    case ErrorCode::IncompleteZeroList: return "IncompleteZeroList";
    case ErrorCode::BranchViolation: return "BranchViolation";
    case ErrorCode::BandViolation: return "BandViolation";
    case ErrorCode::HypothesisFailure: return "HypothesisFailure";
    case ErrorCode::CertificateFailure: return "CertificateFailure";
    case ErrorCode::OutOfRange: return "OutOfRange";
  }
  return "Unknown";
}

}  // namespace crg
