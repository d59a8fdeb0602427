#include "bellscan/quantum.hpp"

#include <array>
#include <cmath>
#include <complex>
#include <numbers>

namespace bellscan {

namespace {

using Complex = std::complex<double>;

constexpr int kDenseMaxParties = 8;

void check_settings(const Scenario& scenario, const std::vector<int>& settings, std::size_t expected) {
  if (settings.size() != expected)
    throw ValidationError("quantum: settings tuple has wrong arity");
  for (int s : settings)
    if (s < 0 || s >= scenario.m) throw ValidationError("quantum: setting index out of range");
}

// Dense noisy-GHZ density matrix, row-major dim x dim.
std::vector<Complex> noisy_ghz_density(int n, double v) {
  const std::size_t dim = 1ull << n;
  std::vector<Complex> rho(dim * dim, Complex(0.0, 0.0));
  const double mixed = (1.0 - v) / static_cast<double>(dim);
  for (std::size_t i = 0; i < dim; ++i) rho[i * dim + i] += mixed;
  rho[0 * dim + 0] += v / 2.0;
  rho[(dim - 1) * dim + (dim - 1)] += v / 2.0;
  rho[0 * dim + (dim - 1)] += v / 2.0;
  rho[(dim - 1) * dim + 0] += v / 2.0;
  return rho;
}

std::vector<Complex> kron(const std::vector<Complex>& a, std::size_t adim,
                          const std::vector<Complex>& b, std::size_t bdim) {
  const std::size_t dim = adim * bdim;
  std::vector<Complex> out(dim * dim);
  for (std::size_t i = 0; i < adim; ++i)
    for (std::size_t j = 0; j < adim; ++j)
      for (std::size_t k = 0; k < bdim; ++k)
        for (std::size_t l = 0; l < bdim; ++l)
          out[(i * bdim + k) * dim + (j * bdim + l)] = a[i * adim + j] * b[k * bdim + l];
  return out;
}

// Projector onto the +1 eigenvector of cos(phi) sigma_x + sin(phi) sigma_y.
std::array<Complex, 4> plus_projector(double phi) {
  const Complex e_minus(std::cos(phi), -std::sin(phi));
  const Complex e_plus(std::cos(phi), std::sin(phi));
  return {Complex(0.5, 0.0), 0.5 * e_minus, 0.5 * e_plus, Complex(0.5, 0.0)};
}

double trace_product(const std::vector<Complex>& rho, const std::vector<Complex>& op,
                     std::size_t dim) {
  Complex acc(0.0, 0.0);
  for (std::size_t a = 0; a < dim; ++a)
    for (std::size_t b = 0; b < dim; ++b) acc += rho[a * dim + b] * op[b * dim + a];
  return acc.real();
}

double dense_probability(const Scenario& scenario, const MeasurementAngles& angles,
                         const std::vector<int>& settings, const std::vector<int>* outcomes,
                         const std::vector<int>* parties) {
  if (scenario.n > kDenseMaxParties)
    throw ValidationError("dense oracle: n > 8");
  if (angles.n != scenario.n || angles.m != scenario.m)
    throw ValidationError("dense oracle: angles do not match scenario");
  const std::size_t dim = 1ull << scenario.n;
  auto rho = noisy_ghz_density(scenario.n, scenario.v.to_double());

  std::vector<Complex> op = {Complex(1.0, 0.0)};
  std::size_t opdim = 1;
  for (int p = 0; p < scenario.n; ++p) {
    // Which entry of `settings` (aligned with `parties` when given, with the
    // party order otherwise) belongs to party p.
    std::ptrdiff_t slot = p;
    if (parties) {
      slot = -1;
      for (std::size_t i = 0; i < parties->size(); ++i)
        if ((*parties)[i] == p) slot = static_cast<std::ptrdiff_t>(i);
    }
    std::vector<Complex> factor(4);
    if (slot < 0) {
      factor = {Complex(1, 0), Complex(0, 0), Complex(0, 0), Complex(1, 0)};
    } else {
      const int setting = settings[static_cast<std::size_t>(slot)];
      const auto proj = plus_projector(angles.angle(p, setting));
      factor.assign(proj.begin(), proj.end());
      if (outcomes && (*outcomes)[static_cast<std::size_t>(slot)] < 0) {
        // I - P for outcome -1.
        factor[0] = Complex(1, 0) - factor[0];
        factor[1] = -factor[1];
        factor[2] = -factor[2];
        factor[3] = Complex(1, 0) - factor[3];
      }
    }
    op = kron(op, opdim, factor, 2);
    opdim *= 2;
  }
  (void)dim;
  return trace_product(rho, op, opdim);
}

}  // namespace

MeasurementAngles MeasurementAngles::equatorial(int n, int m) {
  return equatorial_with_offset(n, m, std::numbers::pi / static_cast<double>(n));
}

MeasurementAngles MeasurementAngles::equatorial_with_offset(int n, int m, double offset) {
  MeasurementAngles out;
  out.n = n;
  out.m = m;
  out.phi.assign(static_cast<std::size_t>(n), std::vector<double>(static_cast<std::size_t>(m)));
  for (int p = 0; p < n; ++p)
    for (int s = 0; s < m; ++s)
      out.phi[static_cast<std::size_t>(p)][static_cast<std::size_t>(s)] =
          2.0 * std::numbers::pi * static_cast<double>(s) / static_cast<double>(m) + offset;
  return out;
}

double joint_probability(const Scenario& scenario, const std::vector<int>& settings) {
  check_settings(scenario, settings, static_cast<std::size_t>(scenario.n));
  long sum = 0;
  for (int s : settings) sum += s;
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(sum % scenario.m) /
                       static_cast<double>(scenario.m);
  return (1.0 - scenario.v.to_double() * std::cos(angle)) / std::pow(2.0, scenario.n);
}

double joint_probability_dense(const Scenario& scenario, const MeasurementAngles& angles,
                               const std::vector<int>& settings) {
  check_settings(scenario, settings, static_cast<std::size_t>(scenario.n));
  return dense_probability(scenario, angles, settings, nullptr, nullptr);
}

double outcome_probability_dense(const Scenario& scenario, const MeasurementAngles& angles,
                                 const std::vector<int>& settings, const std::vector<int>& outcomes) {
  check_settings(scenario, settings, static_cast<std::size_t>(scenario.n));
  if (outcomes.size() != settings.size())
    throw ValidationError("dense oracle: outcomes arity mismatch");
  return dense_probability(scenario, angles, settings, &outcomes, nullptr);
}

double marginal_probability(const Scenario& scenario, const std::vector<int>& parties,
                            const std::vector<int>& settings) {
  if (parties.size() != static_cast<std::size_t>(scenario.n - 1))
    throw ValidationError("marginal_probability: subset size must be n-1");
  check_settings(scenario, settings, parties.size());
  for (std::size_t i = 0; i < parties.size(); ++i) {
    if (parties[i] < 0 || parties[i] >= scenario.n)
      throw ValidationError("marginal_probability: party index out of range");
    for (std::size_t j = i + 1; j < parties.size(); ++j)
      if (parties[i] == parties[j]) throw ValidationError("marginal_probability: duplicate party");
  }
  // GHZ has no (n-1)-subcorrelations for equatorial measurements.
  return 1.0 / std::pow(2.0, scenario.n - 1);
}

double marginal_probability_dense(const Scenario& scenario, const MeasurementAngles& angles,
                                  const std::vector<int>& parties, const std::vector<int>& settings) {
  if (parties.size() != static_cast<std::size_t>(scenario.n - 1))
    throw ValidationError("marginal_probability_dense: subset size must be n-1");
  check_settings(scenario, settings, parties.size());
  return dense_probability(scenario, angles, settings, nullptr, &parties);
}

double bell_value_quantum_direct(const Scenario& scenario, const BellParams& params, double eta,
                                 std::uint64_t term_budget) {
  if (params.n != scenario.n || params.m != scenario.m)
    throw ValidationError("bell_value_quantum: params do not match scenario");
  const int n = scenario.n;
  const int m = scenario.m;
  double terms = 1.0;
  for (int p = 0; p < n; ++p) terms *= static_cast<double>(m);
  if (terms > static_cast<double>(term_budget))
    throw BudgetError("bell_value_quantum_direct: m^n exceeds the term budget");

  const double v = scenario.v.to_double();
  const double x = params.x.to_double();
  const double y = params.y.to_double();
  std::vector<double> cos_table(static_cast<std::size_t>(m));
  for (int r = 0; r < m; ++r)
    cos_table[static_cast<std::size_t>(r)] =
        std::cos(2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(m));
  const double inv2n = 1.0 / std::pow(2.0, n);

  // Kahan sum over all m^n joint terms.
  double sum = 0.0, comp = 0.0;
  std::vector<int> tuple(static_cast<std::size_t>(n), 0);
  int residue = 0;
  while (true) {
    const double prob = (1.0 - v * cos_table[static_cast<std::size_t>(residue)]) * inv2n;
    const double weight = (residue == 0) ? (y - x) : y;
    const double term = prob * weight - comp;
    const double next = sum + term;
    comp = (next - sum) - term;
    sum = next;
    int p = n - 1;
    while (p >= 0) {
      auto& t = tuple[static_cast<std::size_t>(p)];
      ++residue;
      if (residue == m) residue = 0;
      if (++t < m) break;
      // Rolling back m increments of one digit leaves the residue unchanged
      // mod m, so just reset the digit.
      t = 0;
      --p;
    }
    if (p < 0) break;
  }

  const double joint_part = std::pow(eta, n) * sum;
  const double marginal_terms = static_cast<double>(n) * std::pow(static_cast<double>(m), n - 1);
  const double marginal_part =
      std::pow(eta, n - 1) * marginal_terms / std::pow(2.0, n - 1);
  return joint_part - marginal_part;
}

double bell_value_quantum_closed(const Scenario& scenario, const BellParams& params, double eta) {
  if (params.n != scenario.n || params.m != scenario.m)
    throw ValidationError("bell_value_quantum: params do not match scenario");
  const double v = scenario.v.to_double();
  const double x = params.x.to_double();
  const double y = params.y.to_double();
  const double half_em = eta * static_cast<double>(scenario.m) / 2.0;
  return (y - (1.0 - v) * x / static_cast<double>(scenario.m)) * std::pow(half_em, scenario.n) -
         static_cast<double>(scenario.n) * std::pow(half_em, scenario.n - 1);
}

double threshold_from_oracle(const Scenario& scenario, const BellParams& params,
                             bool allow_above_one) {
  auto value = [&](double eta) { return bell_value_quantum_direct(scenario, params, eta); };
  double lo = 1e-12;
  double hi = 1.0;
  constexpr double kMaxBracket = 1024.0;
  while (value(hi) <= 0.0) {
    hi *= 2.0;
    if (hi > kMaxBracket)
      throw GeometryError("threshold_from_oracle: no violation at any efficiency");
  }
  if (!allow_above_one && hi > 1.0 && value(1.0) < 0.0)
    throw GeometryError("threshold_from_oracle: no sign change on (0,1]");
  for (int it = 0; it < 200 && (hi - lo) > 1e-13; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (value(mid) > 0.0)
      hi = mid;
    else
      lo = mid;
  }
  return 0.5 * (lo + hi);
}

ReferenceVisibilityBounds reference_visibility_bounds(int n) {
  if (n < 2) throw ValidationError("reference_visibility_bounds: n < 2");
  BigInt den = bigint_pow(2, static_cast<unsigned>(n - 1)) + 1;
  return ReferenceVisibilityBounds{Rational(BigInt(1), den),
                                   std::pow(2.0, -0.5 * static_cast<double>(n - 1))};
}

}  // namespace bellscan
