#pragma once

#include <ostream>

namespace lqu_lab {

struct SelfTestOptions {
  // Flip the sign of the 4|cd| term in lambda1 inside the closed-form
  // comparisons, to confirm the oracle checks catch a broken formula.
  bool inject_fault = false;
};

// Runs the invariant suite of every module on reduced grids, printing one
// PASS/FAIL line per property. Returns true iff all pass. Output is
// deterministic.
bool run_selftest(std::ostream& out, const SelfTestOptions& options = {});

}  // namespace lqu_lab
