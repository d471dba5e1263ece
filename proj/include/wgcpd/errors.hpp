#pragma once

#include <stdexcept>
#include <string>

namespace wgcpd {

// Every failure the library can report.  Codes map onto CLI exit codes:
// input/parse/config problems -> 1, degenerate statistics -> 2,
// numerical failures -> 3.
enum class ErrorCode {
  // ingestion / validation
  MixedKinds,
  DimensionMismatch,
  AsymmetricAdjacency,
  TooShort,
  ParseError,
  IoError,
  NotSquare,
  NegativeEntry,
  NonzeroDiagonal,
  AsymmetryBeyondTolerance,
  // distances
  KindMismatch,
  SingularSystem,
  NegativeAffinity,
  // kernel / null model
  EigenFailure,
  EmptySpectrum,
  // scan
  DegenerateDispersion,
  SubintervalTooShort,
  // segmentation
  PartitionInvalid,
  OutOfRange,
  NotSorted,
  // cli / config
  ConfigError,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

const char* error_code_name(ErrorCode code);

[[noreturn]] inline void throw_error(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace wgcpd
