#include "bellscan/strategies.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

namespace bellscan {

DeterministicStrategy::DeterministicStrategy(int m, std::vector<std::uint64_t> party_masks)
    : m_(m), masks_(std::move(party_masks)) {
  if (m < 1 || m > 64) throw ValidationError("strategy: m out of [1,64]");
  const std::uint64_t width_mask = (m == 64) ? ~0ull : ((1ull << m) - 1);
  for (auto mask : masks_)
    if (mask & ~width_mask) throw ValidationError("strategy: mask wider than m");
}

int DeterministicStrategy::count(int party) const {
  return std::popcount(masks_[static_cast<std::size_t>(party)]);
}

std::vector<int> DeterministicStrategy::counts() const {
  std::vector<int> out(masks_.size());
  for (std::size_t p = 0; p < masks_.size(); ++p) out[p] = std::popcount(masks_[p]);
  return out;
}

bool DeterministicStrategy::all_counts_positive() const {
  return std::all_of(masks_.begin(), masks_.end(), [](std::uint64_t v) { return v != 0; });
}

std::vector<int> DeterministicStrategy::plus_settings(int party) const {
  std::vector<int> out;
  for (int j = 0; j < m_; ++j)
    if (outputs_plus(party, j)) out.push_back(j);
  return out;
}

std::string DeterministicStrategy::str() const {
  std::string out;
  for (int p = 0; p < num_parties(); ++p) {
    if (p) out += '|';
    for (int j = 0; j < m_; ++j) out += outputs_plus(p, j) ? '1' : '0';
  }
  return out;
}

std::uint64_t count_zero_sum_naive(const DeterministicStrategy& s) {
  const int n = s.num_parties();
  const int m = s.num_settings();
  std::vector<std::vector<int>> sets(static_cast<std::size_t>(n));
  for (int p = 0; p < n; ++p) {
    sets[static_cast<std::size_t>(p)] = s.plus_settings(p);
    if (sets[static_cast<std::size_t>(p)].empty()) return 0;
  }
  // Odometer over one +1 setting per party.
  std::vector<std::size_t> pos(static_cast<std::size_t>(n), 0);
  std::uint64_t hits = 0;
  while (true) {
    long sum = 0;
    for (int p = 0; p < n; ++p) sum += sets[static_cast<std::size_t>(p)][pos[static_cast<std::size_t>(p)]];
    if (sum % m == 0) ++hits;
    int p = n - 1;
    while (p >= 0) {
      auto& i = pos[static_cast<std::size_t>(p)];
      if (++i < sets[static_cast<std::size_t>(p)].size()) break;
      i = 0;
      --p;
    }
    if (p < 0) break;
  }
  return hits;
}

namespace {

// One cyclic-convolution step: acc <- acc * indicator(mask), over Z_m.
template <typename Acc>
void convolve_mask(std::vector<Acc>& acc, std::uint64_t mask, int m) {
  std::vector<Acc> next(static_cast<std::size_t>(m), Acc(0));
  for (int k = 0; k < m; ++k) {
    if (!((mask >> k) & 1u)) continue;
    for (int r = 0; r < m; ++r) {
      int to = r + k;
      if (to >= m) to -= m;
      next[static_cast<std::size_t>(to)] += acc[static_cast<std::size_t>(r)];
    }
  }
  acc.swap(next);
}

template <typename Acc>
Acc count_zero_sum_conv_impl(const DeterministicStrategy& s) {
  const int m = s.num_settings();
  std::vector<Acc> acc(static_cast<std::size_t>(m), Acc(0));
  acc[0] = Acc(1);
  for (int p = 0; p < s.num_parties(); ++p) convolve_mask(acc, s.mask(p), m);
  return acc[0];
}

}  // namespace

BigInt count_zero_sum_convolution(const DeterministicStrategy& s) {
  if (zero_sum_fits_u64(s.num_parties(), s.num_settings())) {
    std::uint64_t v = count_zero_sum_conv_impl<std::uint64_t>(s);
    return BigInt(static_cast<unsigned long>(v));
  }
  return count_zero_sum_conv_impl<BigInt>(s);
}

bool zero_sum_fits_u64(int n, int m) {
  // Intermediate histogram entries are bounded by m^n.
  return static_cast<double>(n) * std::log2(static_cast<double>(m)) < 62.0;
}

std::uint64_t count_zero_sum_convolution_u64(const DeterministicStrategy& s) {
  return count_zero_sum_conv_impl<std::uint64_t>(s);
}

namespace {

template <typename Acc>
std::vector<Acc> prefix_convolution_impl(const std::vector<int>& counts, int m) {
  std::vector<Acc> acc(static_cast<std::size_t>(m), Acc(0));
  acc[0] = Acc(1);
  for (int c : counts) {
    if (c < 1 || c > m) throw ValidationError("prefix_convolution: count out of [1,m]");
    std::uint64_t mask = (c == 64) ? ~0ull : ((1ull << c) - 1);
    convolve_mask(acc, mask, m);
  }
  return acc;
}

}  // namespace

std::vector<BigInt> prefix_convolution(const std::vector<int>& counts, int m) {
  return prefix_convolution_impl<BigInt>(counts, m);
}

std::vector<std::uint64_t> prefix_convolution_u64(const std::vector<int>& counts, int m) {
  return prefix_convolution_impl<std::uint64_t>(counts, m);
}

Rational bell_value_deterministic(const DeterministicStrategy& s, const BellParams& params) {
  if (s.num_parties() != params.n || s.num_settings() != params.m)
    throw ValidationError("bell_value_deterministic: strategy does not match params' scenario");
  const auto counts = s.counts();
  BigInt product = 1;
  for (int c : counts) product *= c;
  BigInt marginal_sum = 0;
  for (std::size_t p = 0; p < counts.size(); ++p) {
    BigInt other = 1;
    for (std::size_t q = 0; q < counts.size(); ++q)
      if (q != p) other *= counts[q];
    marginal_sum += other;
  }
  BigInt zero_sum = (product == 0) ? BigInt(0) : count_zero_sum_convolution(s);
  Rational value = Rational(product, BigInt(1)) * params.y;
  value -= Rational(zero_sum, BigInt(1)) * params.x;
  value -= Rational(marginal_sum, BigInt(1));
  return value;
}

std::optional<ConstraintLine> line_from_strategy(const DeterministicStrategy& s) {
  if (!s.all_counts_positive()) return std::nullopt;
  const auto counts = s.counts();
  Rational p(0);
  BigInt product = 1;
  for (int c : counts) {
    p += Rational(1, c);
    product *= c;
  }
  BigInt zero_sum = count_zero_sum_convolution(s);
  return ConstraintLine{p, Rational(zero_sum, product), s.str()};
}

ExhaustiveEnumeration::ExhaustiveEnumeration(int n, int m, std::uint64_t budget) : n_(n), m_(m) {
  if (n < 2) throw ValidationError("enumerate_all: n < 2");
  if (m < 2 || m > 63) throw ValidationError("enumerate_all: m out of [2,63]");
  if (!fits_budget(n, m, budget))
    throw BudgetError("enumerate_all: (2^m - 1)^n exceeds budget; use regular-arrangement mode");
  const std::uint64_t per_party = (1ull << m) - 1;
  size_ = 1;
  for (int p = 0; p < n; ++p) size_ *= per_party;
}

bool ExhaustiveEnumeration::fits_budget(int n, int m, std::uint64_t budget) {
  if (m >= 64) return false;
  const double per_party = std::pow(2.0, m) - 1.0;
  return static_cast<double>(n) * std::log2(per_party) <= std::log2(static_cast<double>(budget));
}

DeterministicStrategy ExhaustiveEnumeration::at(std::uint64_t index) const {
  const std::uint64_t per_party = (1ull << m_) - 1;
  std::vector<std::uint64_t> masks(static_cast<std::size_t>(n_));
  for (int p = n_ - 1; p >= 0; --p) {
    masks[static_cast<std::size_t>(p)] = index % per_party + 1;
    index /= per_party;
  }
  return DeterministicStrategy(m_, std::move(masks));
}

namespace {

void visit_shifts(const std::vector<int>& counts, int m,
                  const std::function<void(const RegularArrangement&)>& fn) {
  RegularArrangement r{counts, 0};
  for (int i0 = 0; i0 < m; ++i0) {
    r.shift = i0;
    fn(r);
  }
}

void descend_multisets(std::vector<int>& counts, int remaining, int max_next, int m,
                       const std::function<void(const std::vector<int>&)>& fn) {
  if (remaining == 0) {
    fn(counts);
    return;
  }
  for (int c = std::min(max_next, m); c >= 1; --c) {
    counts.push_back(c);
    descend_multisets(counts, remaining - 1, c, m, fn);
    counts.pop_back();
  }
}

}  // namespace

std::vector<std::vector<int>> regular_count_multisets(int n, int m, bool balanced_only) {
  std::vector<std::vector<int>> out;
  if (balanced_only) {
    // Counts pairwise differ by <= 1, so the multiset is fixed by the total.
    for (int total = n; total <= n * m; ++total) {
      const int base = total / n;
      const int bigger = total % n;
      std::vector<int> counts;
      counts.reserve(static_cast<std::size_t>(n));
      for (int i = 0; i < bigger; ++i) counts.push_back(base + 1);
      for (int i = bigger; i < n; ++i) counts.push_back(base);
      out.push_back(std::move(counts));
    }
    return out;
  }
  std::vector<int> counts;
  descend_multisets(counts, n, m, m, [&](const std::vector<int>& c) { out.push_back(c); });
  return out;
}

void for_each_regular(int n, int m, bool balanced_only,
                      const std::function<void(const RegularArrangement&)>& fn) {
  if (n < 2) throw ValidationError("enumerate_regular: n < 2");
  if (m < 2 || m > 64) throw ValidationError("enumerate_regular: m out of [2,64]");
  if (balanced_only) {
    for (int total = n; total <= n * m; ++total) {
      const int base = total / n;
      const int bigger = total % n;
      std::vector<int> counts;
      counts.reserve(static_cast<std::size_t>(n));
      for (int i = 0; i < bigger; ++i) counts.push_back(base + 1);
      for (int i = bigger; i < n; ++i) counts.push_back(base);
      visit_shifts(counts, m, fn);
    }
    return;
  }
  std::vector<int> counts;
  descend_multisets(counts, n, m, m, [&](const std::vector<int>& c) { visit_shifts(c, m, fn); });
}

std::vector<RegularArrangement> enumerate_regular(int n, int m, bool balanced_only) {
  std::vector<RegularArrangement> out;
  for_each_regular(n, m, balanced_only, [&](const RegularArrangement& r) { out.push_back(r); });
  return out;
}

DeterministicStrategy strategy_of(const RegularArrangement& r, int m) {
  if (r.counts.empty()) throw ValidationError("strategy_of: no parties");
  std::vector<std::uint64_t> masks;
  masks.reserve(r.counts.size());
  for (std::size_t p = 0; p < r.counts.size(); ++p) {
    const int c = r.counts[p];
    if (c < 1 || c > m) throw ValidationError("strategy_of: count out of [1,m]");
    std::uint64_t mask = 0;
    if (p == 0) {
      for (int k = 0; k < c; ++k) mask |= 1ull << ((r.shift + k) % m);
    } else {
      mask = (c == 64) ? ~0ull : ((1ull << c) - 1);
    }
    masks.push_back(mask);
  }
  return DeterministicStrategy(m, std::move(masks));
}

}  // namespace bellscan
