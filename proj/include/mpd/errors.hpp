#pragma once

#include <stdexcept>
#include <string>

namespace mpd {

// Every failure the library can signal, so callers (and the CLI's exit-code
// mapping) can switch on a stable code instead of parsing messages.
enum class Errc {
  DuplicateElement,
  UnknownElementInCover,
  CycleDetected,
  TooLarge,
  UnknownElement,
  PosetMismatch,
  ScalarOutOfRange,
  NonMonotonePredicate,
  MalformedSystem,
  EmptyGeneratorSet,
  NotSeparable,
  FlavorMismatch,
  ModeMismatch,
  SyntaxError,
  UndeclaredVariable,
  ProbabilityOutOfRange,
  FuelNegative,
  GroundSetMismatch,
  UnboundOperation,
  MalformedInput,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace mpd
