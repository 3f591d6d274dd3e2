#pragma once

#include <iosfwd>

namespace tamefill {

struct AcceptanceResult {
  int passed = 0;
  int failed = 0;
};

// Runs the full acceptance suite over the shipped presets, printing
// one PASS/FAIL line per criterion. Tolerances are pinned in the
// implementation; the whole run stays well under desk-scale budgets.
AcceptanceResult run_acceptance(std::ostream& out);

}  // namespace tamefill
