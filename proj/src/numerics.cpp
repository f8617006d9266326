#include "spectral/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace spectral {

namespace {

struct ContourResult {
  Complex value;
  double scale;  // radius times mean |integrand|, the natural size of the integral
  bool converged;
};

// (1/2 pi i) times the integral of g over |z - c| = rho, trapezoid rule with doubling.
template <class G>
ContourResult contour_integral(const G& g, Complex c, double rho, const ResidueOptions& opts) {
  auto level = [&](int n, double& mean_abs) {
    Complex sum{0.0, 0.0};
    double acc = 0.0;
    for (int k = 0; k < n; ++k) {
      const Complex e = std::polar(1.0, 2.0 * std::numbers::pi * k / n);
      const Complex val = g(c + rho * e);
      sum += val * rho * e;
      acc += std::abs(val);
    }
    mean_abs = acc / n;
    return sum / static_cast<double>(n);
  };

  double mean_abs = 0.0;
  int n = opts.min_nodes;
  Complex prev = level(n, mean_abs);
  while (n < opts.max_nodes) {
    n *= 2;
    const Complex cur = level(n, mean_abs);
    const double scale = rho * mean_abs;
    if (std::abs(cur - prev) <= opts.rel_tol * std::max(std::abs(cur), scale)) {
      return {cur, scale, true};
    }
    prev = cur;
  }
  return {prev, rho * mean_abs, false};
}

double nearest_other_root(const FactoredRational& f, Complex p) {
  double d = std::numeric_limits<double>::infinity();
  for (const auto& fac : f.factors()) {
    if (same_point(fac.root, p)) continue;
    d = std::min(d, std::abs(fac.root - p));
  }
  return d;
}

double max_root_modulus(const FactoredRational& f) {
  double m = 0.0;
  for (const auto& fac : f.factors()) m = std::max(m, std::abs(fac.root));
  return m;
}

Complex finite_residue(const FactoredRational& f, Complex p, const ResidueOptions& opts) {
  if (f.multiplicity(p) >= 0) {
    // Holomorphic at p: the residue is exactly zero.
    return {0.0, 0.0};
  }
  double d = nearest_other_root(f, p);
  const double rho = std::isfinite(d) ? 0.5 * d : 1.0;
  if (!(rho > 1e-12 * (1.0 + std::abs(p)))) {
    throw Error(ErrorKind::NoIsolation, "contour radius underflows around a pole");
  }
  auto res = contour_integral([&](Complex z) { return eval(f, z); }, p, rho, opts);
  if (!res.converged) throw Error(ErrorKind::NonConvergence, "residue quadrature did not converge");
  return res.value;
}

// Residue at infinity on the chart w = 1/z: f(z) dz = -f(1/w) / w^2 dw.
ContourResult chart_residue_at_infinity(const FactoredRational& f, const ResidueOptions& opts) {
  // Holomorphic at infinity, or a polynomial: the residue is exactly zero.
  const bool polynomial = std::all_of(f.factors().begin(), f.factors().end(), [](const auto& x) { return x.mult >= 0; });
  if (f.degree() <= -2 || polynomial) return {Complex{0.0, 0.0}, 0.0, true};
  const double big = 2.0 * max_root_modulus(f) + 1.0;
  auto g = [&](Complex w) { return -eval(f, 1.0 / w) / (w * w); };
  return contour_integral(g, 0.0, 1.0 / big, opts);
}

}  // namespace

Complex checked_complex(double re, double im) {
  if (!std::isfinite(re) || !std::isfinite(im)) {
    throw Error(ErrorKind::InvalidData, "complex value with non-finite component");
  }
  return {re, im};
}

bool same_point(Complex a, Complex b, double tol) noexcept {
  return std::abs(a - b) <= tol * (1.0 + std::max(std::abs(a), std::abs(b)));
}

bool PointOnP1::same_as(const PointOnP1& other, double tol) const noexcept {
  if (infinite_ || other.infinite_) return infinite_ && other.infinite_;
  return same_point(z_, other.z_, tol);
}

FactoredRational::FactoredRational(Complex scale, std::vector<Factor> factors) : scale_(scale) {
  if (!std::isfinite(scale.real()) || !std::isfinite(scale.imag())) {
    throw Error(ErrorKind::InvalidData, "non-finite scale");
  }
  if (scale == Complex{0.0, 0.0}) throw Error(ErrorKind::InvalidData, "zero scale");
  for (const auto& f : factors) {
    if (!std::isfinite(f.root.real()) || !std::isfinite(f.root.imag())) {
      throw Error(ErrorKind::InvalidData, "non-finite root");
    }
    auto it = std::find_if(factors_.begin(), factors_.end(),
                           [&](const Factor& g) { return same_point(g.root, f.root); });
    if (it == factors_.end()) {
      factors_.push_back(f);
    } else {
      it->mult += f.mult;
    }
  }
  std::erase_if(factors_, [](const Factor& f) { return f.mult == 0; });
}

int FactoredRational::degree() const noexcept {
  int d = 0;
  for (const auto& f : factors_) d += f.mult;
  return d;
}

int FactoredRational::multiplicity(Complex p, double tol) const noexcept {
  for (const auto& f : factors_) {
    if (same_point(f.root, p, tol)) return f.mult;
  }
  return 0;
}

FactoredRational FactoredRational::operator*(const FactoredRational& rhs) const {
  std::vector<Factor> all(factors_.begin(), factors_.end());
  all.insert(all.end(), rhs.factors_.begin(), rhs.factors_.end());
  return FactoredRational(scale_ * rhs.scale_, std::move(all));
}

FactoredRational FactoredRational::operator*(Complex c) const {
  return FactoredRational(scale_ * c, factors_);
}

FactoredRational FactoredRational::reciprocal() const {
  std::vector<Factor> inv(factors_.begin(), factors_.end());
  for (auto& f : inv) f.mult = -f.mult;
  return FactoredRational(1.0 / scale_, std::move(inv));
}

Complex eval(const FactoredRational& f, Complex z) {
  Complex v = f.scale();
  for (const auto& fac : f.factors()) {
    if (same_point(fac.root, z)) {
      if (fac.mult < 0) throw Error(ErrorKind::PoleEvaluation, "evaluation at a pole");
      return {0.0, 0.0};
    }
    v *= std::pow(z - fac.root, fac.mult);
  }
  return v;
}

Complex eval(const FactoredRational& f, const PointOnP1& z) {
  if (z.is_finite()) return eval(f, z.value());
  const int deg = f.degree();
  if (deg > 0) throw Error(ErrorKind::PoleEvaluation, "evaluation at a pole at infinity");
  if (deg < 0) return {0.0, 0.0};
  return f.scale();
}

int order_at(const FactoredRational& f, const PointOnP1& p) noexcept {
  if (p.is_infinite()) return -f.degree();
  return f.multiplicity(p.value());
}

int order_at(const RationalDifferential& w, const PointOnP1& p) noexcept {
  const int base = order_at(w.coefficient(), p);
  return p.is_infinite() ? base - 2 : base;
}

Complex residue(const RationalDifferential& w, const PointOnP1& p, const ResidueOptions& opts) {
  const auto& f = w.coefficient();
  if (p.is_finite()) return finite_residue(f, p.value(), opts);

  Complex sum{0.0, 0.0};
  for (const auto& fac : f.factors()) {
    if (fac.mult < 0) sum += finite_residue(f, fac.root, opts);
  }
  const Complex at_inf = -sum;
  auto chart = chart_residue_at_infinity(f, opts);
  if (!chart.converged) {
    throw Error(ErrorKind::NonConvergence, "residue at infinity: chart quadrature did not converge");
  }
  const double scale = std::max({std::abs(at_inf), chart.scale, 1e-300});
  if (std::abs(chart.value - at_inf) > 1e-8 * scale) {
    throw Error(ErrorKind::NonConvergence, "residue at infinity disagrees with the chart computation");
  }
  return at_inf;
}

Complex residue_via_chart(const RationalDifferential& w, const ResidueOptions& opts) {
  auto chart = chart_residue_at_infinity(w.coefficient(), opts);
  if (!chart.converged) throw Error(ErrorKind::NonConvergence, "chart quadrature did not converge");
  return chart.value;
}

Complex simple_pole_limit(const RationalDifferential& w, Complex p) {
  const auto& f = w.coefficient();
  if (f.multiplicity(p) != -1) throw Error(ErrorKind::InvalidData, "not a simple pole");
  Complex v = f.scale();
  for (const auto& fac : f.factors()) {
    if (same_point(fac.root, p)) continue;
    v *= std::pow(p - fac.root, fac.mult);
  }
  return v;
}

Complex laurent_constant(const FactoredRational& f, const PointOnP1& p) {
  if (p.is_finite()) {
    const FactoredRational g = f * FactoredRational(1.0, {{p.value(), -1}});
    return residue(RationalDifferential(g), p);
  }
  // Constant term in z at infinity equals minus the residue of f dz / z there.
  const FactoredRational g = f * FactoredRational::inverse_coordinate();
  return -residue(RationalDifferential(g), PointOnP1::infinity());
}

std::vector<DivisorEntry> divisor(const FactoredRational& f) {
  std::vector<DivisorEntry> out;
  for (const auto& fac : f.factors()) out.push_back({fac.root, fac.mult});
  if (f.degree() != 0) out.push_back({PointOnP1::infinity(), -f.degree()});
  return out;
}

std::vector<DivisorEntry> divisor(const RationalDifferential& w) {
  std::vector<DivisorEntry> out;
  for (const auto& fac : w.coefficient().factors()) out.push_back({fac.root, fac.mult});
  const int at_inf = -w.coefficient().degree() - 2;
  if (at_inf != 0) out.push_back({PointOnP1::infinity(), at_inf});
  return out;
}

}  // namespace spectral
