#ifndef SPECTRAL_NUMERICS_HPP
#define SPECTRAL_NUMERICS_HPP

#include <complex>
#include <span>
#include <vector>

#include "spectral/error.hpp"

namespace spectral {

using Complex = std::complex<double>;

/// Two roots closer than this (relative to 1 + |root|) are the same point.
inline constexpr double kRootTolerance = 1e-9;

/// Throws InvalidData unless both parts are finite.
Complex checked_complex(double re, double im);

bool same_point(Complex a, Complex b, double tol = kRootTolerance) noexcept;

/// A point of the Riemann sphere: either a finite affine coordinate or infinity.
class PointOnP1 {
 public:
  PointOnP1() = default;
  PointOnP1(Complex z) : z_(z) {}  // NOLINT: implicit from a finite coordinate
  PointOnP1(double x) : z_(x) {}   // NOLINT

  static PointOnP1 infinity() noexcept {
    PointOnP1 p;
    p.infinite_ = true;
    return p;
  }

  bool is_infinite() const noexcept { return infinite_; }
  bool is_finite() const noexcept { return !infinite_; }
  /// Affine coordinate; only meaningful for finite points.
  Complex value() const noexcept { return z_; }

  bool same_as(const PointOnP1& other, double tol = kRootTolerance) const noexcept;

 private:
  Complex z_{0.0, 0.0};
  bool infinite_ = false;
};

/// scale * prod (z - root)^mult, with distinct roots and nonzero multiplicities.
class FactoredRational {
 public:
  struct Factor {
    Complex root;
    int mult;
  };

  FactoredRational() = default;
  explicit FactoredRational(Complex scale, std::vector<Factor> factors = {});

  static FactoredRational constant(Complex c) { return FactoredRational(c); }
  /// The coordinate function z.
  static FactoredRational coordinate() { return FactoredRational(1.0, {{0.0, 1}}); }
  /// The function 1/z.
  static FactoredRational inverse_coordinate() { return FactoredRational(1.0, {{0.0, -1}}); }

  Complex scale() const noexcept { return scale_; }
  std::span<const Factor> factors() const noexcept { return factors_; }
  /// Sum of multiplicities; the order at infinity is -degree().
  int degree() const noexcept;
  bool is_constant() const noexcept { return factors_.empty(); }

  /// Multiplicity of z - p among the stored factors (0 if absent).
  int multiplicity(Complex p, double tol = kRootTolerance) const noexcept;

  FactoredRational operator*(const FactoredRational& rhs) const;
  FactoredRational operator*(Complex c) const;
  FactoredRational reciprocal() const;

 private:
  Complex scale_{1.0, 0.0};
  std::vector<Factor> factors_;
};

/// f(z) dz on the affine chart of one component.
class RationalDifferential {
 public:
  RationalDifferential() = default;
  explicit RationalDifferential(FactoredRational f) : f_(std::move(f)) {}

  const FactoredRational& coefficient() const noexcept { return f_; }

 private:
  FactoredRational f_;
};

/// Product formula at a finite point; throws PoleEvaluation at a pole.
Complex eval(const FactoredRational& f, Complex z);
/// As above, with the limit value at infinity (0 below degree 0, scale at degree 0).
Complex eval(const FactoredRational& f, const PointOnP1& z);

int order_at(const FactoredRational& f, const PointOnP1& p) noexcept;
/// Order of f dz; at infinity this includes the -2 from dz = -dw/w^2.
int order_at(const RationalDifferential& w, const PointOnP1& p) noexcept;

struct ResidueOptions {
  double rel_tol = 1e-13;
  int min_nodes = 16;
  int max_nodes = 1 << 14;
};

/// Residue by the trapezoid rule on a circle around p (node doubling until
/// successive values agree); at infinity minus the sum of finite residues,
/// cross-checked against a large-circle integral.
Complex residue(const RationalDifferential& w, const PointOnP1& p, const ResidueOptions& opts = {});

/// Residue at infinity computed directly on the chart w = 1/z.
Complex residue_via_chart(const RationalDifferential& w, const ResidueOptions& opts = {});

/// Exact value of lim (z - p) f(z) when p is a simple pole.
Complex simple_pole_limit(const RationalDifferential& w, Complex p);

/// Constant term of the Laurent expansion of f at p (in z - p, or in z at infinity).
Complex laurent_constant(const FactoredRational& f, const PointOnP1& p);

struct DivisorEntry {
  PointOnP1 point;
  int order;
};

/// Finite roots with their orders plus the point at infinity (if its order is nonzero).
std::vector<DivisorEntry> divisor(const FactoredRational& f);
/// Same for f dz; the orders always sum to -2.
std::vector<DivisorEntry> divisor(const RationalDifferential& w);

}  // namespace spectral

#endif  // SPECTRAL_NUMERICS_HPP
