#include "conevol/errors.hpp"

namespace conevol {

std::string_view error_module(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidInput:
      return "cli";
    case ErrorCode::ZeroColumn:
    case ErrorCode::DuplicateDirection:
    case ErrorCode::NotPositivelySpanning:
    case ErrorCode::ZeroVolume:
    case ErrorCode::OriginLeavesBody:
      return "polytope";
    case ErrorCode::NotNormalized:
    case ErrorCode::NotPositive:
    case ErrorCode::NotReducible:
      return "matroid";
    case ErrorCode::NotPlanar:
    case ErrorCode::OutsideTypeCone:
      return "planar";
    case ErrorCode::NonSimpleType:
    case ErrorCode::InterpolationIllConditioned:
      return "semialg";
    case ErrorCode::NoConvergence:
    case ErrorCode::Irreducible:
    case ErrorCode::OnTypeConeBoundary:
    case ErrorCode::DegenerateSupport:
      return "inverse";
    case ErrorCode::Internal:
      return "internal";
  }
  return "internal";
}

std::string_view error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::ZeroColumn: return "ZeroColumn";
    case ErrorCode::DuplicateDirection: return "DuplicateDirection";
    case ErrorCode::NotPositivelySpanning: return "NotPositivelySpanning";
    case ErrorCode::ZeroVolume: return "ZeroVolume";
    case ErrorCode::OriginLeavesBody: return "OriginLeavesBody";
    case ErrorCode::NotNormalized: return "NotNormalized";
    case ErrorCode::NotPositive: return "NotPositive";
    case ErrorCode::NotReducible: return "NotReducible";
    case ErrorCode::NotPlanar: return "NotPlanar";
    case ErrorCode::OutsideTypeCone: return "OutsideTypeCone";
    case ErrorCode::NonSimpleType: return "NonSimpleType";
    case ErrorCode::InterpolationIllConditioned: return "InterpolationIllConditioned";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::Irreducible: return "Irreducible";
    case ErrorCode::OnTypeConeBoundary: return "OnTypeConeBoundary";
    case ErrorCode::DegenerateSupport: return "DegenerateSupport";
    case ErrorCode::Internal: return "Internal";
  }
  return "Internal";
}

std::string Error::qualified_code() const {
  std::string out(error_module(code_));
  out += '.';
  out += error_name(code_);
  return out;
}

}  // namespace conevol
