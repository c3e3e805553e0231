#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace algotrace {

enum class ErrorKind {
  UnknownAlgorithm,
  UnknownProbe,
  ShapeMismatch,
  RangeViolation,
  DuplicateInFrame,
  IncompleteFrame,
  MissingProbe,
  BuilderConsumed,
  InvalidConfig,
  EmptyInput,
  PreconditionViolated,
  DegenerateGeometry,
  DigestMismatch,
  VersionMismatch,
  CorruptRecord,
  HeterogeneousBatch,
  SchemaMismatch,
  CountMismatch,
  SingleModel,
  IndexOutOfRange,
  Io,
  Parse,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries a machine-checkable kind.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace algotrace
