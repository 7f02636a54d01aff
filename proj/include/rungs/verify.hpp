#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace rungs {

struct CheckResult {
  std::string name;
  /// Short description of the quantity or identity being checked.
  std::string anchor;
  bool pass = false;
  std::string detail;
};

/// The eleven acceptance criteria, in order.
CheckResult check_count_tables();
CheckResult check_oracle_equivalence();
CheckResult check_marginal_triple();
CheckResult check_determinant_identity();
CheckResult check_fourier_consistency();
CheckResult check_regenerative_order();
CheckResult check_chain_fidelity();
CheckResult check_monte_carlo();
CheckResult check_nonrealizability();
CheckResult check_renewal_round_trip();
CheckResult check_successor_table();

std::vector<CheckResult> acceptance_checks();
/// Cross-module identities beyond the acceptance list.
std::vector<CheckResult> invariant_checks();

/// "acceptance", "invariants" or "all". Throws ValidationError otherwise.
std::vector<CheckResult> run_suite(std::string_view suite);

}  // namespace rungs
