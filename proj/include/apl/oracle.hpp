#pragma once

// Cross-module consistency checks with exact or near-exact answers.

#include <string>
#include <vector>

namespace apl::oracle {

struct Check {
  std::string name;
  bool passed = false;
  std::string detail;  // counterexample input on failure, summary otherwise
};

struct Report {
  std::vector<Check> checks;
  bool all_passed() const;
};

struct Options {
  /// Shifts the parity class of the enumerated sequences by one, which must
  /// make the enumeration check fail. Used to test the checker itself.
  bool inject_parity_fault = false;
};

/// Runs: enumeration vs generating-function coefficients, path count vs
/// accessibility, pmf normalization, Hamming profile vs XOR simulation and
/// the K = 1 NK decomposition.
Report run_oracle_validation(const Options& options = {});

}  // namespace apl::oracle
