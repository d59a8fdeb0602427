#ifndef BELLSCAN_ENVELOPE_HPP
#define BELLSCAN_ENVELOPE_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "bellscan/collect.hpp"
#include "bellscan/core.hpp"
#include "bellscan/strategies.hpp"

namespace bellscan {

/// Intersection of two adjacent envelope lines; line indices refer to the
/// envelope's surviving-line list.
struct EnvelopeVertex {
  Rational x;
  Rational y;
  std::size_t left_line = 0;
  std::size_t right_line = 0;
};

/// Lower envelope y(x) = min over lines of (p + q x). Surviving lines are
/// ordered by strictly decreasing slope; vertices by strictly increasing x.
/// A point (x, y) satisfies every constraint y <= p + q x iff y <= value_at(x).
class Envelope {
 public:
  /// Exact incremental hull: sort by slope, keep the minimal intercept per
  /// slope (duplicate (p, q) pairs merge, first provenance wins), drop lines
  /// that never strictly support the minimum.
  static Envelope build(std::vector<ConstraintLine> lines);

  const std::vector<ConstraintLine>& lines() const { return lines_; }
  const std::vector<EnvelopeVertex>& vertices() const { return vertices_; }

  /// Intercept of the zero-slope line, if one survives: the hard cap on y.
  std::optional<Rational> y_max() const;

  Rational value_at(const Rational& x) const;

 private:
  std::vector<ConstraintLine> lines_;
  std::vector<EnvelopeVertex> vertices_;
};

/// y_max or a GeometryError("y unbounded on this line set").
Rational y_max_or_throw(const Envelope& e);

/// Lowest detection efficiency at which the quantum value beats the local
/// bound, for the best (x, y) on the envelope at the scenario's visibility:
/// maximizes D = m y - (1-v) x (linear over a concave piecewise-linear
/// boundary, so a vertex is optimal except along a terminal ray) and returns
/// eta* = 2 n / D.
struct ThresholdResult {
  BellParams params;
  Rational eta_star;
  bool violation_possible = false;  // eta* <= 1
  bool on_ray = false;              // optimum constant along a terminal ray
  bool conjecture_conditional = false;
  std::optional<std::size_t> vertex_index;
};

/// Ties between vertices break toward smaller x, then smaller y. At v = 1
/// the objective is flat along the zero-slope ray and x is reported at the
/// ray's first vertex. Throws GeometryError when the objective is unbounded
/// (no zero-slope line for v = 1, missing steep lines for low v) or when
/// D <= 0 everywhere (no quantum violation at this visibility).
ThresholdResult optimize_for_visibility(const Envelope& e, const Scenario& scenario);

/// One piece of the exact piecewise map v -> optimal vertex. The vertex
/// between lines of slopes q_hi > q_lo is optimal exactly for
/// (1-v)/m in [q_lo, q_hi]; intervals are (v_lo, v_hi], clipped to (0, 1].
struct VisibilityInterval {
  Rational v_lo;
  Rational v_hi;
  Rational x;
  Rational y;
  bool is_ray = false;
};

std::vector<VisibilityInterval> visibility_sweep(const Envelope& e, const Scenario& scenario);

enum class EnumerationMode { exhaustive, regular, automatic };

/// Certifies max over deterministic strategies of the Bell functional at
/// params. Only strategies with all counts positive are scanned: the rest
/// evaluate to minus a sum of products of counts, never positive. Regular
/// mode scans regular arrangements only and is therefore flagged
/// conjecture-conditional.
struct LocalBoundCertificate {
  bool holds = false;  // max_value <= 0
  Rational max_value;
  DeterministicStrategy witness;
  bool conjecture_conditional = false;
  std::uint64_t strategies_seen = 0;
};

LocalBoundCertificate verify_local_bound(const BellParams& params, const Scenario& scenario,
                                         EnumerationMode mode, bool balanced_only = false,
                                         std::uint64_t budget = kDefaultStrategyBudget);

}  // namespace bellscan

#endif  // BELLSCAN_ENVELOPE_HPP
