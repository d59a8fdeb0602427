#include "bellscan/envelope.hpp"

#include <algorithm>
#include <cassert>

namespace bellscan {

namespace {

// x-coordinate where two lines of distinct slope meet.
Rational intersect_x(const ConstraintLine& a, const ConstraintLine& b) {
  return (b.p - a.p) / (a.q - b.q);
}

}  // namespace

Envelope Envelope::build(std::vector<ConstraintLine> lines) {
  if (lines.empty()) throw ValidationError("build_envelope: empty line set");
  std::sort(lines.begin(), lines.end(), [](const ConstraintLine& a, const ConstraintLine& b) {
    if (a.q != b.q) return b.q < a.q;  // slope descending
    return a.p < b.p;                  // then intercept ascending
  });
  // Per slope only the minimal intercept can support the minimum.
  std::vector<ConstraintLine> candidates;
  for (auto& line : lines) {
    if (!candidates.empty() && candidates.back().q == line.q) continue;
    candidates.push_back(std::move(line));
  }

  Envelope env;
  std::vector<Rational> join_x;  // meet of surviving line i with line i+1
  for (auto& line : candidates) {
    while (!env.lines_.empty()) {
      const Rational x_new = intersect_x(env.lines_.back(), line);
      if (!join_x.empty() && x_new <= join_x.back()) {
        // Previous line never wins strictly below the new one: dominated.
        env.lines_.pop_back();
        join_x.pop_back();
        continue;
      }
      join_x.push_back(x_new);
      break;
    }
    env.lines_.push_back(std::move(line));
  }
  env.vertices_.reserve(join_x.size());
  for (std::size_t i = 0; i < join_x.size(); ++i) {
    const Rational& x = join_x[i];
    env.vertices_.push_back(EnvelopeVertex{x, env.lines_[i].p + env.lines_[i].q * x, i, i + 1});
  }
  return env;
}

std::optional<Rational> Envelope::y_max() const {
  const ConstraintLine& last = lines_.back();
  if (last.q.is_zero()) return last.p;
  return std::nullopt;
}

Rational y_max_or_throw(const Envelope& e) {
  auto y = e.y_max();
  if (!y) throw GeometryError("y unbounded on this line set (no zero-slope constraint)");
  return *y;
}

Rational Envelope::value_at(const Rational& x) const {
  // Vertices' x ascend; segment i covers x <= vertices_[i].x.
  std::size_t i = 0;
  while (i < vertices_.size() && vertices_[i].x < x) ++i;
  return lines_[i].p + lines_[i].q * x;
}

ThresholdResult optimize_for_visibility(const Envelope& e, const Scenario& scenario) {
  const Rational m(scenario.m);
  const Rational one_minus_v = Rational(1) - scenario.v;
  const Rational c = one_minus_v / m;  // objective is flat along slope-c lines

  const auto& lines = e.lines();
  const auto& verts = e.vertices();

  Rational best_x, best_y;
  bool on_ray = false;
  std::optional<std::size_t> vertex_index;

  if (c > lines.front().q)
    throw GeometryError("objective unbounded toward x -> -infinity (line set misses steep slopes)");
  if (c < lines.back().q)
    throw GeometryError("y unbounded on this line set (no zero-slope constraint binds)");

  if (verts.empty()) {
    // Single line with q == c: objective constant along it.
    best_x = Rational(0);
    best_y = lines.front().p;
    on_ray = true;
  } else {
    bool have = false;
    Rational best_d;
    for (std::size_t i = 0; i < verts.size(); ++i) {
      const Rational d = m * verts[i].y - one_minus_v * verts[i].x;
      const bool better =
          !have || d > best_d ||
          (d == best_d && (verts[i].x < best_x || (verts[i].x == best_x && verts[i].y < best_y)));
      if (better) {
        have = true;
        best_d = d;
        best_x = verts[i].x;
        best_y = verts[i].y;
        vertex_index = i;
      }
    }
    on_ray = (c == lines.back().q) || (c == lines.front().q);
  }

  const Rational d = m * best_y - one_minus_v * best_x;
  if (!d.is_positive()) throw GeometryError("no quantum violation at this visibility (D <= 0)");
  const Rational eta = Rational(2 * scenario.n) / d;
  ThresholdResult out;
  out.params = BellParams{scenario.n, scenario.m, best_x, best_y};
  out.eta_star = eta;
  out.violation_possible = eta <= Rational(1);
  out.on_ray = on_ray;
  out.vertex_index = vertex_index;
  return out;
}

std::vector<VisibilityInterval> visibility_sweep(const Envelope& e, const Scenario& scenario) {
  const Rational m(scenario.m);
  const auto& lines = e.lines();
  const auto& verts = e.vertices();
  std::vector<VisibilityInterval> out;
  if (verts.empty()) {
    if (!lines.front().q.is_zero())
      throw GeometryError("visibility_sweep: need a vertex or a zero-slope line");
    out.push_back(VisibilityInterval{Rational(0), Rational(1), Rational(0), lines.front().p, true});
    return out;
  }
  for (std::size_t i = 0; i < verts.size(); ++i) {
    Rational lo = Rational(1) - m * lines[verts[i].left_line].q;
    Rational hi = Rational(1) - m * lines[verts[i].right_line].q;
    if (lo < Rational(0)) lo = Rational(0);
    if (hi > Rational(1)) hi = Rational(1);
    if (!(lo < hi)) continue;  // clipped away
    out.push_back(VisibilityInterval{lo, hi, verts[i].x, verts[i].y, false});
  }
  return out;
}

LocalBoundCertificate verify_local_bound(const BellParams& params, const Scenario& scenario,
                                         EnumerationMode mode, bool balanced_only,
                                         std::uint64_t budget) {
  if (params.n != scenario.n || params.m != scenario.m)
    throw ValidationError("verify_local_bound: params do not match scenario");
  bool exhaustive;
  switch (mode) {
    case EnumerationMode::exhaustive:
      exhaustive = true;
      break;
    case EnumerationMode::regular:
      exhaustive = false;
      break;
    case EnumerationMode::automatic:
    default:
      exhaustive = ExhaustiveEnumeration::fits_budget(scenario.n, scenario.m, budget);
      break;
  }
  LocalBoundReport report =
      exhaustive
          ? max_bell_value_parallel(ExhaustiveEnumeration(scenario.n, scenario.m, budget), params)
          : max_bell_value_regular(scenario.n, scenario.m, params, balanced_only, budget);
  LocalBoundCertificate cert{!report.max_value.is_positive(), report.max_value, report.witness,
                             !exhaustive, report.strategies_seen};
  return cert;
}

}  // namespace bellscan
