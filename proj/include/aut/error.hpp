#pragma once

#include <stdexcept>
#include <string>

namespace aut {

// Position in a source file; line/col are 1-based, 0 means unknown.
struct SourceLoc {
  int line = 0;
  int col = 0;
  bool known() const { return line > 0; }
};

enum class ErrKind {
  Parse,
  Io,
  Usage,
  UnboundIdentifier,
  NotAFunction,
  TypeMismatch,
  SortError,
  ArityMismatch,
  NotFresh,
  DanglingIndicator,
  AmbiguityUnresolved,
  IncompletableParams,
  UnfoldPrimitive,
  FuelExhausted,
  BookNotOk,
  IllegalEnv,
  Coherence,
  Internal,
};

const char* err_kind_name(ErrKind k);

// The one error currency of the checker. Callers that sit close to a
// source file attach a location; the book layer attaches the judgement
// that was being checked when a kernel error bubbles up.
class Error : public std::runtime_error {
public:
  Error(ErrKind kind, std::string message, SourceLoc loc = {})
      : std::runtime_error(std::move(message)), kind(kind), loc(loc) {}

  ErrKind kind;
  SourceLoc loc;
  std::string judgement; // optional display of the failed obligation
};

[[noreturn]] inline void fail(ErrKind kind, std::string message, SourceLoc loc = {}) {
  throw Error(kind, std::move(message), loc);
}

} // namespace aut
