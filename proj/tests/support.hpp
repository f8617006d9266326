#ifndef SPECTRAL_TESTS_SUPPORT_HPP
#define SPECTRAL_TESTS_SUPPORT_HPP

#include <functional>
#include <random>

#include "spectral/error.hpp"
#include "spectral/numerics.hpp"

namespace spectral::testing {

/// Random rational with well-separated roots inside the disc of radius 2.
inline FactoredRational random_rational(std::mt19937_64& rng, int max_factors = 5) {
  std::uniform_real_distribution<double> coord(-2.0, 2.0);
  std::uniform_int_distribution<int> count(1, max_factors);
  std::uniform_int_distribution<int> mult(-3, 2);
  std::vector<FactoredRational::Factor> factors;
  const int k = count(rng);
  while (static_cast<int>(factors.size()) < k) {
    const Complex z(coord(rng), coord(rng));
    bool separated = true;
    for (const auto& f : factors) separated = separated && std::abs(f.root - z) > 0.2;
    int m = mult(rng);
    if (m == 0) m = -1;
    if (separated) factors.push_back({z, m});
  }
  return FactoredRational(Complex(coord(rng), coord(rng)) + 2.5, std::move(factors));
}

/// True when fn throws an Error of the given kind.
inline bool throws_kind(const std::function<void()>& fn, ErrorKind kind) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind() == kind;
  }
  return false;
}

inline double rel_err(Complex a, Complex b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

}  // namespace spectral::testing

#endif  // SPECTRAL_TESTS_SUPPORT_HPP
