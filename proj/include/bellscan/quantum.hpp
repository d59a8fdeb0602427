#ifndef BELLSCAN_QUANTUM_HPP
#define BELLSCAN_QUANTUM_HPP

#include <cstdint>
#include <vector>

#include "bellscan/core.hpp"

namespace bellscan {

// Quantum side of the artifact: the noisy GHZ model under equatorial
// measurements. Everything here is double precision; closed forms are the
// source of truth and the dense density-matrix simulator is an independent
// consistency oracle.

/// Azimuthal angle per party and setting. The default places the m settings
/// evenly around the equator with a common offset of pi/n, which makes the
/// per-tuple angle sum equal 2*pi*(index sum)/m + pi.
struct MeasurementAngles {
  int n = 0;
  int m = 0;
  std::vector<std::vector<double>> phi;  // [party][setting]

  static MeasurementAngles equatorial(int n, int m);                 // offset pi/n
  static MeasurementAngles equatorial_with_offset(int n, int m, double offset);
  double angle(int party, int setting) const {
    return phi[static_cast<std::size_t>(party)][static_cast<std::size_t>(setting)];
  }
};

/// All-plus joint probability, closed form for the default angles:
/// (1 - v cos(2 pi (i+j+k+...)/m)) / 2^n.
double joint_probability(const Scenario& scenario, const std::vector<int>& settings);

/// Same probability from the dense 2^n x 2^n density matrix and explicit
/// rank-1 projectors. n <= 8.
double joint_probability_dense(const Scenario& scenario, const MeasurementAngles& angles,
                               const std::vector<int>& settings);

/// Probability of an arbitrary outcome string (+1/-1 per party), dense.
double outcome_probability_dense(const Scenario& scenario, const MeasurementAngles& angles,
                                 const std::vector<int>& settings, const std::vector<int>& outcomes);

/// All-plus probability for n-1 of the parties: exactly 1/2^(n-1) for
/// equatorial measurements, independent of v and of the settings.
/// `parties` must name n-1 distinct parties.
double marginal_probability(const Scenario& scenario, const std::vector<int>& parties,
                            const std::vector<int>& settings);

/// Dense cross-check of the marginal (omitted party traced out via identity).
double marginal_probability_dense(const Scenario& scenario, const MeasurementAngles& angles,
                                  const std::vector<int>& parties, const std::vector<int>& settings);

/// Quantum value of the Bell functional with detection efficiency eta
/// (non-detections output -1, so n-party terms scale by eta^n and
/// (n-1)-party terms by eta^(n-1)).
///
/// Direct mode sums the m^n joint terms one by one (compensated summation);
/// closed mode evaluates (y - (1-v)x/m)(eta m/2)^n - n (eta m/2)^(n-1).
double bell_value_quantum_direct(const Scenario& scenario, const BellParams& params, double eta,
                                 std::uint64_t term_budget = 50'000'000);
double bell_value_quantum_closed(const Scenario& scenario, const BellParams& params, double eta);

/// Bisection root of the direct-mode Bell value. With allow_above_one the
/// bracket extends beyond eta = 1 (useful for checking the algebra even when
/// the threshold is unphysical); otherwise a root above 1 raises
/// GeometryError("no violation at any efficiency").
double threshold_from_oracle(const Scenario& scenario, const BellParams& params,
                             bool allow_above_one = false);

/// Reference visibility constants for annotating sweeps: the state is fully
/// separable iff v <= 1/(1+2^(n-1)) and violates some two-setting
/// full-correlation inequality iff v > 2^(-(n-1)/2).
struct ReferenceVisibilityBounds {
  Rational separable;
  double two_setting;
};

ReferenceVisibilityBounds reference_visibility_bounds(int n);

}  // namespace bellscan

#endif  // BELLSCAN_QUANTUM_HPP
