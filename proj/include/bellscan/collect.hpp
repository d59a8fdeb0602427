#ifndef BELLSCAN_COLLECT_HPP
#define BELLSCAN_COLLECT_HPP

#include <cstdint>
#include <vector>

#include "bellscan/strategies.hpp"

namespace bellscan {

// Reduction kernels over strategy enumerations. Each kernel exists twice:
// an OpenMP-parallel version (chunked over the enumeration index space,
// thread-local accumulation, min-witness merge so results are independent
// of scheduling) and a serial reference used by the tests and the benchmark.

/// Distinct constraint lines found in an enumeration, sorted by slope
/// descending then intercept ascending. provenance holds the first
/// (lowest-index) generating strategy.
struct LineSet {
  std::vector<ConstraintLine> lines;
  std::uint64_t strategies_seen = 0;
};

/// If canonical_only, only strategies whose mask tuple is non-decreasing are
/// visited; the line set is unchanged because p, q are symmetric under party
/// permutation (witnesses may differ). Off by default.
LineSet collect_lines_serial(const ExhaustiveEnumeration& e, bool canonical_only = false);
LineSet collect_lines_parallel(const ExhaustiveEnumeration& e, bool canonical_only = false);

/// Lines of all regular arrangements. One cyclic convolution per count
/// multiset serves all m shifts; accumulators switch to arbitrary precision
/// automatically when m^(n-1) may overflow. Throws BudgetError when the
/// arrangement count exceeds the budget.
LineSet collect_lines_regular(int n, int m, bool balanced_only,
                              std::uint64_t budget = kDefaultStrategyBudget);

/// Number of arrangements for_each_regular would visit (saturating).
std::uint64_t regular_arrangement_count(int n, int m, bool balanced_only);

/// Maximum of the deterministic Bell functional over an enumeration, with a
/// witness (the lowest-index strategy attaining it).
struct LocalBoundReport {
  Rational max_value;
  DeterministicStrategy witness;
  std::uint64_t strategies_seen = 0;
};

LocalBoundReport max_bell_value_serial(const ExhaustiveEnumeration& e, const BellParams& params);
LocalBoundReport max_bell_value_parallel(const ExhaustiveEnumeration& e, const BellParams& params);
LocalBoundReport max_bell_value_regular(int n, int m, const BellParams& params, bool balanced_only,
                                        std::uint64_t budget = kDefaultStrategyBudget);

}  // namespace bellscan

#endif  // BELLSCAN_COLLECT_HPP
