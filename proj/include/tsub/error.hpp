#pragma once

#include <map>
#include <stdexcept>
#include <string>

namespace tsub {

enum class ErrorCode {
  InvalidArgument,
  Parse,
  TooSmall,
  InfeasibleDegree,
  InfeasibleSize,
  CutInvalid,
  RepairExhausted,
  InsufficientOutNeighbours,
  BallTooLarge,
  PartitionBound,
};

std::string to_string(ErrorCode code);

/// Precondition or structured failure raised by a library operation.
/// `values` carries the measured quantities that triggered it.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what, std::map<std::string, long long> values = {})
      : std::runtime_error(what), code_(code), values_(std::move(values)) {}

  ErrorCode code() const { return code_; }
  const std::map<std::string, long long>& values() const { return values_; }

 private:
  ErrorCode code_;
  std::map<std::string, long long> values_;
};

}  // namespace tsub
