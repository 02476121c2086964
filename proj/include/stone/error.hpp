#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace stone {

enum class ErrorKind {
  MalformedMatrix,
  AsymmetricMatrix,
  NegativeDistance,
  CoincidentPoints,
  TriangleViolation,
  BadParams,
  NotACover,
  NotVectorSpace,
  CliqueCapExceeded,
  TooLarge,
  BadTree,
  UncertifiableScale,
  ParseError,
  IO,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library. `witness()` carries the point
/// indices (or scale index) that triggered it, when there are any.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message,
        std::vector<long long> witness = {})
      : std::runtime_error(message), kind_(kind), witness_(std::move(witness)) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::vector<long long>& witness() const noexcept { return witness_; }

 private:
  ErrorKind kind_;
  std::vector<long long> witness_;
};

}  // namespace stone
