#ifndef BELLSCAN_STRATEGIES_HPP
#define BELLSCAN_STRATEGIES_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "bellscan/core.hpp"

namespace bellscan {

inline constexpr std::uint64_t kDefaultStrategyBudget = 100'000'000;

/// A local deterministic strategy: one bit-vector of width m per party,
/// bit j set iff that party outputs +1 for setting j. m <= 64.
class DeterministicStrategy {
 public:
  DeterministicStrategy(int m, std::vector<std::uint64_t> party_masks);

  int num_parties() const { return static_cast<int>(masks_.size()); }
  int num_settings() const { return m_; }
  std::uint64_t mask(int party) const { return masks_[static_cast<std::size_t>(party)]; }
  bool outputs_plus(int party, int setting) const {
    return (masks_[static_cast<std::size_t>(party)] >> setting) & 1u;
  }

  /// Per-party number of +1 settings (the counts the constraint line is
  /// built from).
  int count(int party) const;
  std::vector<int> counts() const;
  bool all_counts_positive() const;

  /// Settings with output +1 for one party, ascending.
  std::vector<int> plus_settings(int party) const;

  /// "101|110": one group of m bits per party, setting 0 leftmost.
  std::string str() const;

  friend bool operator==(const DeterministicStrategy& a, const DeterministicStrategy& b) {
    return a.m_ == b.m_ && a.masks_ == b.masks_;
  }

 private:
  int m_;
  std::vector<std::uint64_t> masks_;
};

// --- Zero-sum tuple count S ------------------------------------------------
//
// S = number of index tuples (one +1 setting per party) whose sum is
// divisible by m. It is the slope numerator of the strategy's constraint
// line, so it must be exact.

/// Brute-force oracle: direct nested iteration over all tuples. Exponential
/// in the number of parties; test / desk scale only.
std::uint64_t count_zero_sum_naive(const DeterministicStrategy& s);

/// Same count via iterated cyclic convolution of the per-party indicator
/// vectors over Z_m, O(n m^2), arbitrary-precision accumulators.
BigInt count_zero_sum_convolution(const DeterministicStrategy& s);

/// True when m^(n-1) (the largest possible S) fits comfortably in uint64,
/// enabling the fast kernel below.
bool zero_sum_fits_u64(int n, int m);

/// Fast path of count_zero_sum_convolution; pre: zero_sum_fits_u64(n, m).
std::uint64_t count_zero_sum_convolution_u64(const DeterministicStrategy& s);

/// Cyclic convolution over Z_m of per-count prefix indicator vectors
/// ([0,c) for each c in counts); returns the full residue histogram. All m
/// shifts of one party read off one histogram: shifting a party's vector by
/// i0 rotates the histogram, so S(shift i0) = hist[(m - i0) % m].
std::vector<BigInt> prefix_convolution(const std::vector<int>& counts, int m);

/// Fast variant; pre: zero_sum_fits_u64(counts.size(), m).
std::vector<std::uint64_t> prefix_convolution_u64(const std::vector<int>& counts, int m);

// --- Bell functional, deterministic side ------------------------------------
//
// Value of the inequality's left side for a deterministic strategy:
//   (prod counts) * y  -  S * x  -  sum over parties of (prod of the other
//   parties' counts).
// Valid for zero counts too (then the first two terms vanish).
Rational bell_value_deterministic(const DeterministicStrategy& s, const BellParams& params);

// --- Constraint lines --------------------------------------------------------

/// The half-plane y <= p + q x carved out by one strategy with all counts
/// positive: p = sum of reciprocal counts, q = S / (product of counts).
struct ConstraintLine {
  Rational p;
  Rational q;
  std::string provenance;
};

/// Returns nullopt when some count is zero: the strategy satisfies the
/// inequality automatically and constrains nothing.
std::optional<ConstraintLine> line_from_strategy(const DeterministicStrategy& s);

// --- Exhaustive enumeration --------------------------------------------------

/// All strategies with every per-party count >= 1, i.e. the full product of
/// nonzero m-bit masks, in lexicographic order on the mask tuple. Random
/// access by index supports deterministic parallel chunking.
class ExhaustiveEnumeration {
 public:
  ExhaustiveEnumeration(int n, int m, std::uint64_t budget = kDefaultStrategyBudget);

  int n() const { return n_; }
  int m() const { return m_; }
  std::uint64_t size() const { return size_; }
  DeterministicStrategy at(std::uint64_t index) const;

  /// Checks (2^m - 1)^n <= budget without enumerating.
  static bool fits_budget(int n, int m, std::uint64_t budget);

 private:
  int n_;
  int m_;
  std::uint64_t size_;
};

// --- Regular arrangements ----------------------------------------------------

/// Structured strategy family: every party except the first uses a prefix
/// set [0, count); the first party uses the cyclic interval of its count
/// starting at `shift`.
struct RegularArrangement {
  std::vector<int> counts;  // counts[0] belongs to the shifted party
  int shift = 0;
};

/// Streams arrangements. balanced_only restricts to count multisets whose
/// entries pairwise differ by at most one (grouped by total sum); otherwise
/// every non-increasing count vector with entries in [1, m] is visited.
/// Every multiset is paired with all m shifts.
void for_each_regular(int n, int m, bool balanced_only,
                      const std::function<void(const RegularArrangement&)>& fn);

/// Convenience materialization of for_each_regular (small scales).
std::vector<RegularArrangement> enumerate_regular(int n, int m, bool balanced_only);

/// All non-increasing count vectors with entries in [1, m] (one per
/// multiset), or only the balanced ones.
std::vector<std::vector<int>> regular_count_multisets(int n, int m, bool balanced_only);

DeterministicStrategy strategy_of(const RegularArrangement& r, int m);

}  // namespace bellscan

#endif  // BELLSCAN_STRATEGIES_HPP
