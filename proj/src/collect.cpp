#include "bellscan/collect.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <numeric>
#include <string>
#include <unordered_map>
#include <utility>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace bellscan {

namespace {

// Reduced int64 fraction for the hot exhaustive loop. Safe because every
// quantity involved (products of counts, S, reciprocal-count sums) is
// bounded by the enumeration budget.
struct LineKey {
  std::int64_t pn, pd, qn, qd;
  bool operator==(const LineKey&) const = default;
};

struct LineKeyHash {
  std::size_t operator()(const LineKey& k) const {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (std::uint64_t v : {static_cast<std::uint64_t>(k.pn), static_cast<std::uint64_t>(k.pd),
                            static_cast<std::uint64_t>(k.qn), static_cast<std::uint64_t>(k.qd)}) {
      h ^= v;
      h *= 0x100000001b3ull;
    }
    return static_cast<std::size_t>(h);
  }
};

struct BoundKey {
  std::uint64_t product, zero_sum, marginal_sum;
  bool operator==(const BoundKey&) const = default;
};

struct BoundKeyHash {
  std::size_t operator()(const BoundKey& k) const {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (std::uint64_t v : {k.product, k.zero_sum, k.marginal_sum}) {
      h ^= v;
      h *= 0x100000001b3ull;
    }
    return static_cast<std::size_t>(h);
  }
};

using LineMap = std::unordered_map<LineKey, std::uint64_t, LineKeyHash>;
using BoundMap = std::unordered_map<BoundKey, std::uint64_t, BoundKeyHash>;

// Odometer over mask tuples in enumeration order, avoiding a vector
// allocation per strategy.
class StrategyCursor {
 public:
  StrategyCursor(const ExhaustiveEnumeration& e, std::uint64_t index)
      : m_(e.m()), per_party_((1ull << e.m()) - 1), masks_(static_cast<std::size_t>(e.n())) {
    for (int p = e.n() - 1; p >= 0; --p) {
      masks_[static_cast<std::size_t>(p)] = index % per_party_ + 1;
      index /= per_party_;
    }
  }

  const std::vector<std::uint64_t>& masks() const { return masks_; }
  int m() const { return m_; }

  void advance() {
    for (std::size_t p = masks_.size(); p-- > 0;) {
      if (masks_[p] < per_party_) {
        ++masks_[p];
        return;
      }
      masks_[p] = 1;
    }
  }

  bool canonical() const { return std::is_sorted(masks_.begin(), masks_.end()); }

 private:
  int m_;
  std::uint64_t per_party_;
  std::vector<std::uint64_t> masks_;
};

std::int64_t igcd(std::int64_t a, std::int64_t b) { return std::gcd(a, b); }

// Exact per-strategy line key: p = sum 1/c, q = S / prod c.
LineKey line_key_of(const std::vector<std::uint64_t>& masks, int m, std::uint64_t* scratch_a,
                    std::uint64_t* scratch_b) {
  std::int64_t p_num = 0, p_den = 1;
  for (std::uint64_t mask : masks) {
    const std::int64_t c = std::popcount(mask);
    p_num = p_num * c + p_den;
    p_den *= c;
  }
  const std::int64_t product = p_den;  // prod of counts before reduction
  // Cyclic convolution over Z_m with flat scratch buffers.
  std::fill(scratch_a, scratch_a + m, 0ull);
  scratch_a[0] = 1;
  std::uint64_t* cur = scratch_a;
  std::uint64_t* nxt = scratch_b;
  for (std::uint64_t mask : masks) {
    std::fill(nxt, nxt + m, 0ull);
    for (int k = 0; k < m; ++k) {
      if (!((mask >> k) & 1u)) continue;
      for (int r = 0; r < m; ++r) {
        int to = r + k;
        if (to >= m) to -= m;
        nxt[to] += cur[r];
      }
    }
    std::swap(cur, nxt);
  }
  const std::int64_t zero_sum = static_cast<std::int64_t>(cur[0]);

  const std::int64_t pg = igcd(p_num, p_den);
  std::int64_t qn = zero_sum, qd = product;
  const std::int64_t qg = igcd(qn, qd);
  if (qg > 0) {
    qn /= qg;
    qd /= qg;
  } else {
    qn = 0;
    qd = 1;
  }
  return LineKey{p_num / pg, p_den / pg, qn, qd};
}

BoundKey bound_key_of(const std::vector<std::uint64_t>& masks, int m, std::uint64_t* scratch_a,
                      std::uint64_t* scratch_b) {
  std::uint64_t product = 1;
  for (std::uint64_t mask : masks) product *= static_cast<std::uint64_t>(std::popcount(mask));
  std::uint64_t marginal_sum = 0;
  for (std::uint64_t mask : masks) marginal_sum += product / static_cast<std::uint64_t>(std::popcount(mask));
  std::fill(scratch_a, scratch_a + m, 0ull);
  scratch_a[0] = 1;
  std::uint64_t* cur = scratch_a;
  std::uint64_t* nxt = scratch_b;
  for (std::uint64_t mask : masks) {
    std::fill(nxt, nxt + m, 0ull);
    for (int k = 0; k < m; ++k) {
      if (!((mask >> k) & 1u)) continue;
      for (int r = 0; r < m; ++r) {
        int to = r + k;
        if (to >= m) to -= m;
        nxt[to] += cur[r];
      }
    }
    std::swap(cur, nxt);
  }
  return BoundKey{product, cur[0], marginal_sum};
}

void merge_min(LineMap& into, const LineMap& from) {
  for (const auto& [key, idx] : from) {
    auto [it, inserted] = into.try_emplace(key, idx);
    if (!inserted && idx < it->second) it->second = idx;
  }
}

void merge_min(BoundMap& into, const BoundMap& from) {
  for (const auto& [key, idx] : from) {
    auto [it, inserted] = into.try_emplace(key, idx);
    if (!inserted && idx < it->second) it->second = idx;
  }
}

LineSet finalize_lines(const ExhaustiveEnumeration& e, const LineMap& map, std::uint64_t seen) {
  LineSet out;
  out.strategies_seen = seen;
  out.lines.reserve(map.size());
  for (const auto& [key, idx] : map) {
    ConstraintLine line{Rational(key.pn, key.pd), Rational(key.qn, key.qd), e.at(idx).str()};
    out.lines.push_back(std::move(line));
  }
  std::sort(out.lines.begin(), out.lines.end(), [](const ConstraintLine& a, const ConstraintLine& b) {
    if (a.q != b.q) return b.q < a.q;
    return a.p < b.p;
  });
  return out;
}

LocalBoundReport finalize_bound(const ExhaustiveEnumeration& e, const BoundMap& map,
                                const BellParams& params) {
  bool have = false;
  Rational best_value;
  std::uint64_t best_idx = 0;
  for (const auto& [key, idx] : map) {
    Rational value = Rational(static_cast<long>(key.product), 1) * params.y -
                     Rational(static_cast<long>(key.zero_sum), 1) * params.x -
                     Rational(static_cast<long>(key.marginal_sum), 1);
    if (!have || value > best_value || (value == best_value && idx < best_idx)) {
      have = true;
      best_value = value;
      best_idx = idx;
    }
  }
  return LocalBoundReport{best_value, e.at(best_idx), e.size()};
}

void check_exhaustive_kernel_bounds(const ExhaustiveEnumeration& e) {
  // All intermediate integers in the fast kernel are bounded by
  // n * prod(counts) <= n * size(); keep well inside int64.
  if (e.size() > (1ull << 52))
    throw BudgetError("exhaustive kernel: enumeration too large for the int64 fast path");
}

}  // namespace

LineSet collect_lines_serial(const ExhaustiveEnumeration& e, bool canonical_only) {
  check_exhaustive_kernel_bounds(e);
  std::vector<std::uint64_t> scratch_a(static_cast<std::size_t>(e.m()));
  std::vector<std::uint64_t> scratch_b(static_cast<std::size_t>(e.m()));
  LineMap map;
  StrategyCursor cur(e, 0);
  std::uint64_t seen = 0;
  for (std::uint64_t idx = 0; idx < e.size(); ++idx, cur.advance()) {
    if (canonical_only && !cur.canonical()) continue;
    ++seen;
    LineKey key = line_key_of(cur.masks(), e.m(), scratch_a.data(), scratch_b.data());
    auto [it, inserted] = map.try_emplace(key, idx);
    if (!inserted && idx < it->second) it->second = idx;
  }
  return finalize_lines(e, map, seen);
}

LineSet collect_lines_parallel(const ExhaustiveEnumeration& e, bool canonical_only) {
  check_exhaustive_kernel_bounds(e);
  LineMap merged;
  std::uint64_t seen = 0;
  const std::int64_t total = static_cast<std::int64_t>(e.size());
#pragma omp parallel reduction(+ : seen)
  {
    std::vector<std::uint64_t> scratch_a(static_cast<std::size_t>(e.m()));
    std::vector<std::uint64_t> scratch_b(static_cast<std::size_t>(e.m()));
    LineMap local;
#ifdef _OPENMP
    const int threads = omp_get_num_threads();
    const int tid = omp_get_thread_num();
#else
    const int threads = 1;
    const int tid = 0;
#endif
    const std::int64_t chunk = (total + threads - 1) / threads;
    const std::int64_t lo = std::min<std::int64_t>(total, static_cast<std::int64_t>(tid) * chunk);
    const std::int64_t hi = std::min<std::int64_t>(total, lo + chunk);
    if (lo < hi) {
      StrategyCursor cur(e, static_cast<std::uint64_t>(lo));
      for (std::int64_t idx = lo; idx < hi; ++idx, cur.advance()) {
        if (canonical_only && !cur.canonical()) continue;
        ++seen;
        LineKey key = line_key_of(cur.masks(), e.m(), scratch_a.data(), scratch_b.data());
        auto [it, inserted] = local.try_emplace(key, static_cast<std::uint64_t>(idx));
        if (!inserted && static_cast<std::uint64_t>(idx) < it->second)
          it->second = static_cast<std::uint64_t>(idx);
      }
    }
#pragma omp critical(bellscan_collect_lines)
    merge_min(merged, local);
  }
  return finalize_lines(e, merged, seen);
}

LocalBoundReport max_bell_value_serial(const ExhaustiveEnumeration& e, const BellParams& params) {
  if (e.n() != params.n || e.m() != params.m)
    throw ValidationError("max_bell_value: enumeration does not match params");
  check_exhaustive_kernel_bounds(e);
  std::vector<std::uint64_t> scratch_a(static_cast<std::size_t>(e.m()));
  std::vector<std::uint64_t> scratch_b(static_cast<std::size_t>(e.m()));
  BoundMap map;
  StrategyCursor cur(e, 0);
  for (std::uint64_t idx = 0; idx < e.size(); ++idx, cur.advance()) {
    BoundKey key = bound_key_of(cur.masks(), e.m(), scratch_a.data(), scratch_b.data());
    auto [it, inserted] = map.try_emplace(key, idx);
    if (!inserted && idx < it->second) it->second = idx;
  }
  return finalize_bound(e, map, params);
}

LocalBoundReport max_bell_value_parallel(const ExhaustiveEnumeration& e, const BellParams& params) {
  if (e.n() != params.n || e.m() != params.m)
    throw ValidationError("max_bell_value: enumeration does not match params");
  check_exhaustive_kernel_bounds(e);
  BoundMap merged;
  const std::int64_t total = static_cast<std::int64_t>(e.size());
#pragma omp parallel
  {
    std::vector<std::uint64_t> scratch_a(static_cast<std::size_t>(e.m()));
    std::vector<std::uint64_t> scratch_b(static_cast<std::size_t>(e.m()));
    BoundMap local;
#ifdef _OPENMP
    const int threads = omp_get_num_threads();
    const int tid = omp_get_thread_num();
#else
    const int threads = 1;
    const int tid = 0;
#endif
    const std::int64_t chunk = (total + threads - 1) / threads;
    const std::int64_t lo = std::min<std::int64_t>(total, static_cast<std::int64_t>(tid) * chunk);
    const std::int64_t hi = std::min<std::int64_t>(total, lo + chunk);
    if (lo < hi) {
      StrategyCursor cur(e, static_cast<std::uint64_t>(lo));
      for (std::int64_t idx = lo; idx < hi; ++idx, cur.advance()) {
        BoundKey key = bound_key_of(cur.masks(), e.m(), scratch_a.data(), scratch_b.data());
        auto [it, inserted] = local.try_emplace(key, static_cast<std::uint64_t>(idx));
        if (!inserted && static_cast<std::uint64_t>(idx) < it->second)
          it->second = static_cast<std::uint64_t>(idx);
      }
    }
#pragma omp critical(bellscan_local_bound)
    merge_min(merged, local);
  }
  return finalize_bound(e, merged, params);
}

namespace {

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > ~0ull / a) return ~0ull;
  return a * b;
}

std::string regular_provenance(const std::vector<int>& counts, int shift) {
  std::string out = "reg(c=";
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(counts[i]);
  }
  out += ";i0=" + std::to_string(shift) + ")";
  return out;
}

using RegularLineMap = std::map<std::pair<Rational, Rational>, std::pair<std::uint64_t, std::string>>;

}  // namespace

std::uint64_t regular_arrangement_count(int n, int m, bool balanced_only) {
  if (balanced_only)
    return saturating_mul(static_cast<std::uint64_t>(n) * (m - 1) + 1, static_cast<std::uint64_t>(m));
  // Multisets of size n over [1, m]: C(n + m - 1, m - 1), saturating.
  std::uint64_t count = 1;
  for (int i = 1; i <= m - 1; ++i) {
    count = saturating_mul(count, static_cast<std::uint64_t>(n + i));
    count /= static_cast<std::uint64_t>(i);
  }
  return saturating_mul(count, static_cast<std::uint64_t>(m));
}

LineSet collect_lines_regular(int n, int m, bool balanced_only, std::uint64_t budget) {
  if (regular_arrangement_count(n, m, balanced_only) > budget)
    throw BudgetError("collect_lines_regular: arrangement count exceeds budget; "
                      "use balanced_only or raise the budget");
  const auto multisets = regular_count_multisets(n, m, balanced_only);
  const bool fast = zero_sum_fits_u64(n, m);
  RegularLineMap merged;
  const std::int64_t total = static_cast<std::int64_t>(multisets.size());
#pragma omp parallel
  {
    RegularLineMap local;
#pragma omp for schedule(dynamic, 16)
    for (std::int64_t i = 0; i < total; ++i) {
      const auto& counts = multisets[static_cast<std::size_t>(i)];
      Rational p(0);
      BigInt product = 1;
      for (int c : counts) {
        p += Rational(1, c);
        product *= c;
      }
      std::vector<BigInt> hist;
      std::vector<std::uint64_t> hist64;
      if (fast)
        hist64 = prefix_convolution_u64(counts, m);
      else
        hist = prefix_convolution(counts, m);
      for (int i0 = 0; i0 < m; ++i0) {
        const std::size_t slot = static_cast<std::size_t>((m - i0) % m);
        BigInt zero_sum = fast ? BigInt(static_cast<unsigned long>(hist64[slot])) : hist[slot];
        Rational q(zero_sum, product);
        const std::uint64_t id = static_cast<std::uint64_t>(i) * m + static_cast<std::uint64_t>(i0);
        auto key = std::make_pair(p, q);
        auto it = local.find(key);
        if (it == local.end())
          local.emplace(std::move(key), std::make_pair(id, regular_provenance(counts, i0)));
        else if (id < it->second.first)
          it->second = std::make_pair(id, regular_provenance(counts, i0));
      }
    }
#pragma omp critical(bellscan_collect_regular)
    for (const auto& [key, val] : local) {
      auto it = merged.find(key);
      if (it == merged.end())
        merged.emplace(key, val);
      else if (val.first < it->second.first)
        it->second = val;
    }
  }
  LineSet out;
  out.strategies_seen = static_cast<std::uint64_t>(multisets.size()) * static_cast<std::uint64_t>(m);
  out.lines.reserve(merged.size());
  for (const auto& [key, val] : merged)
    out.lines.push_back(ConstraintLine{key.first, key.second, val.second});
  std::sort(out.lines.begin(), out.lines.end(), [](const ConstraintLine& a, const ConstraintLine& b) {
    if (a.q != b.q) return b.q < a.q;
    return a.p < b.p;
  });
  return out;
}

LocalBoundReport max_bell_value_regular(int n, int m, const BellParams& params, bool balanced_only,
                                        std::uint64_t budget) {
  if (n != params.n || m != params.m)
    throw ValidationError("max_bell_value_regular: scenario does not match params");
  if (regular_arrangement_count(n, m, balanced_only) > budget)
    throw BudgetError("max_bell_value_regular: arrangement count exceeds budget");
  const auto multisets = regular_count_multisets(n, m, balanced_only);
  const bool fast = zero_sum_fits_u64(n, m);
  bool have = false;
  Rational best_value;
  std::uint64_t best_id = 0;
  RegularArrangement best_arrangement;
  const std::int64_t total = static_cast<std::int64_t>(multisets.size());
#pragma omp parallel
  {
    bool l_have = false;
    Rational l_best;
    std::uint64_t l_id = 0;
    RegularArrangement l_arr;
#pragma omp for schedule(dynamic, 16)
    for (std::int64_t i = 0; i < total; ++i) {
      const auto& counts = multisets[static_cast<std::size_t>(i)];
      BigInt product = 1;
      for (int c : counts) product *= c;
      BigInt marginal_sum = 0;
      for (std::size_t p = 0; p < counts.size(); ++p) marginal_sum += product / counts[p];
      std::vector<BigInt> hist;
      std::vector<std::uint64_t> hist64;
      if (fast)
        hist64 = prefix_convolution_u64(counts, m);
      else
        hist = prefix_convolution(counts, m);
      const Rational base = Rational(product, BigInt(1)) * params.y - Rational(marginal_sum, BigInt(1));
      for (int i0 = 0; i0 < m; ++i0) {
        const std::size_t slot = static_cast<std::size_t>((m - i0) % m);
        BigInt zero_sum = fast ? BigInt(static_cast<unsigned long>(hist64[slot])) : hist[slot];
        Rational value = base - Rational(zero_sum, BigInt(1)) * params.x;
        const std::uint64_t id = static_cast<std::uint64_t>(i) * m + static_cast<std::uint64_t>(i0);
        if (!l_have || value > l_best || (value == l_best && id < l_id)) {
          l_have = true;
          l_best = value;
          l_id = id;
          l_arr = RegularArrangement{counts, i0};
        }
      }
    }
#pragma omp critical(bellscan_bound_regular)
    if (l_have && (!have || l_best > best_value || (l_best == best_value && l_id < best_id))) {
      have = true;
      best_value = l_best;
      best_id = l_id;
      best_arrangement = l_arr;
    }
  }
  if (!have) throw ValidationError("max_bell_value_regular: empty arrangement set");
  return LocalBoundReport{best_value, strategy_of(best_arrangement, m),
                          static_cast<std::uint64_t>(multisets.size()) * static_cast<std::uint64_t>(m)};
}

}  // namespace bellscan
