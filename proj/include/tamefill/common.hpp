#pragma once

#include <compare>
#include <stdexcept>
#include <string>

namespace tamefill {

enum class Errc {
  InvalidArgument,
  ParseError,
  UnknownPreset,
  WrongAlphabet,
  RadiusExceeded,
  RangeExceeded,
  BallTooSmall,
  MissingDiagram,
  CatalogIncomplete,
  BudgetExceeded,
  OracleFailure,
  InconsistentOracle,
  DanglingEdge,
  NoApplicableRule,
  NotAlmostConvex,
  FellowTravelerViolation,
  CycleDetected,
  NotIdentity,
  NonSimpleNormalForm,
};

const char* errc_name(Errc c);

// Process exit policy: 0 pass, 1 check failure, 2 input error, 3 budget.
int errc_exit_code(Errc c);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message),
        code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] void fail(Errc code, const std::string& message);

// Value on the quarter-integer grid, stored as value*4. Coarse distances
// land on fixed residues: vertices 0 mod 4, edge interiors 2 mod 4, face
// interiors 1 mod 4.
struct Q4 {
  int q = 0;

  friend auto operator<=>(const Q4&, const Q4&) = default;
};

constexpr Q4 q4_of_int(int n) { return Q4{4 * n}; }
constexpr Q4 q4_half(int halves) { return Q4{2 * halves}; }

// Smallest integer >= q/4. Arguments are never negative in practice.
int q4_ceil(Q4 x);

// Renders 6 quarters as "3/2", 5 as "5/4", 8 as "2".
std::string q4_to_string(Q4 x);

}  // namespace tamefill
