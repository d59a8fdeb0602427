#include "bellscan/core.hpp"

namespace bellscan {

bool is_prime(int x) {
  if (x < 2) return false;
  for (int d = 2; static_cast<long>(d) * d <= x; ++d)
    if (x % d == 0) return false;
  return true;
}

Scenario validate_scenario(int n, int m, const Rational& v) {
  if (n < 2) throw ValidationError("n < 2");
  if (m < 2) throw ValidationError("m < 2");
  if (v < Rational(0) || v > Rational(1)) throw ValidationError("v outside [0,1]");
  return Scenario{n, m, v, is_prime(m)};
}

}  // namespace bellscan
