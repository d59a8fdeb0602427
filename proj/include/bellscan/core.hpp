#ifndef BELLSCAN_CORE_HPP
#define BELLSCAN_CORE_HPP

#include <stdexcept>
#include <string>

#include "bellscan/rational.hpp"

namespace bellscan {

/// Bad user input (out-of-range scenario fields, malformed values). Maps to
/// CLI exit code 1.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

/// An enumeration would exceed the configured strategy budget. Maps to CLI
/// exit code 2.
class BudgetError : public std::runtime_error {
 public:
  explicit BudgetError(const std::string& msg) : std::runtime_error(msg) {}
};

/// The requested geometric quantity does not exist for the given line set
/// (no zero-slope line, unbounded objective, non-positive denominator).
class GeometryError : public std::runtime_error {
 public:
  explicit GeometryError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Experiment definition: n parties, m settings per party, visibility v of
/// the shared state. m_prime is recorded because the asymptotic formulas
/// assume a prime settings count; composite m admits extra zero-sum
/// strategies and needs the exhaustive machinery.
struct Scenario {
  int n = 0;
  int m = 0;
  Rational v;
  bool m_prime = false;
};

/// One member of the inequality family: the pair (x, y) plus the (n, m) it
/// was built for. Whether the local bound actually holds at (x, y) is
/// certified separately by verify_local_bound.
struct BellParams {
  int n = 0;
  int m = 0;
  Rational x;
  Rational y;
};

bool is_prime(int x);

/// Checks n >= 2, m >= 2, v in [0, 1]; fills the primality flag.
Scenario validate_scenario(int n, int m, const Rational& v);

}  // namespace bellscan

#endif  // BELLSCAN_CORE_HPP
