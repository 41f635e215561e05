#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace spnkit {

enum class ErrorKind {
  OrderTooLarge,
  NotCopositive,
  GraphMismatch,
  NotCutVertex,
  DisconnectedInput,
  NotTwoConnected,
  PatternTooLarge,
  BadParams,
  GraphTooLarge,
  InternalInconsistency,
  EdgeNotNegative,
  PathNotNegative,
  BadC,
  NotSubgraph,
  CertificateNotFound,
  GraphIsNotNotSpn,
  ParseError,
  AsymmetricInput,
  MixedSignedness,
  LoopOrDuplicate,
  InvalidArgument,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace spnkit
