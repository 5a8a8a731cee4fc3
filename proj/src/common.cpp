#include "common.hpp"

#include <cstdio>

namespace brnr {

const char* err_name(Err e) {
  switch (e) {
    case Err::NotAssociative: return "NotAssociative";
    case Err::NoIdentity: return "NoIdentity";
    case Err::NoInverse: return "NoInverse";
    case Err::NotAPermutation: return "NotAPermutation";
    case Err::OrderLimitExceeded: return "OrderLimitExceeded";
    case Err::SizeLimitExceeded: return "SizeLimitExceeded";
    case Err::ActionNotHomomorphic: return "ActionNotHomomorphic";
    case Err::NotNormal: return "NotNormal";
    case Err::CharacterNotMultiplicative: return "CharacterNotMultiplicative";
    case Err::NonUnitValue: return "NonUnitValue";
    case Err::TargetMismatch: return "TargetMismatch";
    case Err::ExponentMismatch: return "ExponentMismatch";
    case Err::ModuleMismatch: return "ModuleMismatch";
    case Err::NotSurjective: return "NotSurjective";
    case Err::NotACocycle: return "NotACocycle";
    case Err::NotExact: return "NotExact";
    case Err::NotAbelian: return "NotAbelian";
    case Err::NoSection: return "NoSection";
    case Err::EssentiallyRealUnsupported: return "EssentiallyRealUnsupported";
    case Err::InconsistentParameters: return "InconsistentParameters";
    case Err::HypothesesViolated: return "HypothesesViolated";
    case Err::Overflow: return "Overflow";
    case Err::UnknownCommand: return "UnknownCommand";
    case Err::SchemaViolation: return "SchemaViolation";
    case Err::FileNotFound: return "FileNotFound";
    case Err::CacheCorrupt: return "CacheCorrupt";
    case Err::Internal: return "Internal";
  }
  return "Unknown";
}

std::string hex_u64(uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return std::string(buf);
}

}  // namespace brnr
