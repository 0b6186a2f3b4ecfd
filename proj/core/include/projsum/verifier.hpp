#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "projsum/certificate.hpp"

namespace projsum {

enum class VerifyErrorKind {
  LedgerMismatch,
  IllegalSplit,
  NotOrthogonal,
  SlotClassMismatch,
  NotAProjection,
  ResidualTooLarge,
  TraceNotConserved,
  LedgerNotEmpty,
  CountMismatch,
  Structural,
};

const char* to_string(VerifyErrorKind k);

struct VerifyError {
  VerifyErrorKind kind;
  std::optional<std::size_t> claim;  ///< index into Certificate::claims
  std::string message;
};

struct Report {
  bool valid = false;
  std::size_t projections = 0;
  double max_residual = 0.0;
  std::vector<VerifyError> errors;

  bool has(VerifyErrorKind k) const;
};

/// Replays the claims in order over a coefficient ledger. Every failed check is
/// recorded; replay stops early only on structural errors (unknown or duplicate ids,
/// malformed claim shapes).
Report verify_certificate(const Certificate& cert);

}  // namespace projsum
