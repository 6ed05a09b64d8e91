#ifndef DENDRO_ERROR_HPP
#define DENDRO_ERROR_HPP

#include <stdexcept>
#include <string>

namespace dendro {

enum class ErrorKind {
  // tree construction and queries
  DisconnectedGraph,
  CycleDetected,
  DuplicateVertex,
  UnknownVertex,
  SingletonTree,
  EmptyTree,
  EmptySet,
  InvalidSubdendrite,
  TooLarge,
  BadParams,
  // bundle / cocycle values
  MismatchedTree,
  BadDomain,
  BadExponent,
  // groups, spaces, cocycles
  GroupLawViolated,
  MeasureInvalid,
  ActionInvalid,
  CocycleIdentityViolated,
  IncompleteTable,
  SearchSpaceTooLarge,
  NotASubgroup,
  // families
  NotDisjoint,
  AmbiguousRetraction,
  NotEquivariantInput,
  // bochner pipeline
  NotInvariant,
  ZeroVector,
  NonConstantLevel,
  MixedCenterKind,
  NotEquivariant,
  // io
  ParseError,
  OracleDisagreement,
};

const char* error_kind_name(ErrorKind kind);

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

private:
  ErrorKind kind_;
};

// Process exit codes used by the CLI: 0 ok, 1 check/invariant failure,
// 2 input error, 3 internal oracle disagreement.
int exit_code_for(ErrorKind kind);

}  // namespace dendro

#endif
