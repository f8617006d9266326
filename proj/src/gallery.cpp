#include "spectral/gallery.hpp"

#include <charconv>
#include <cmath>
#include <numbers>

#include "spectral/baker.hpp"

namespace spectral {

namespace {

constexpr Complex kI{0.0, 1.0};
const PointOnP1 kInf = PointOnP1::infinity();

FactoredRational coordinate() { return FactoredRational::coordinate(); }

// -(z^2 - p^2 ...) style differentials are written out factor by factor.
RationalDifferential differential(Complex scale, std::vector<FactoredRational::Factor> factors) {
  return RationalDifferential(FactoredRational(scale, std::move(factors)));
}

// -dz / (z (z^2 - a^2))
RationalDifferential node_differential(Complex a) { return differential(-1.0, {{0.0, -1}, {a, -1}, {-a, -1}}); }

InvolutionSpec negation_everywhere(int components) {
  InvolutionSpec s;
  for (int c = 0; c < components; ++c) {
    s.component_perm.push_back(c);
    s.moebius.push_back(Moebius::negation());
  }
  return s;
}

void require_nondegenerate(bool ok, const char* what) {
  if (!ok) throw Error(ErrorKind::DegenerateParameters, what);
}

}  // namespace

Eigen::VectorXd spherical_reference(const Eigen::VectorXd& u) {
  const int n = static_cast<int>(u.size());
  const double r = std::exp(u(0));
  Eigen::VectorXd x(n);
  double prod = r;
  for (int k = 0; k + 1 < n; ++k) {
    x(k) = prod * std::sin(u(k + 1));
    prod *= std::cos(u(k + 1));
  }
  x(n - 1) = prod;
  return x;
}

GalleryEntry euclidean(int n) {
  if (n < 1) throw Error(ErrorKind::InvalidData, "euclidean needs n >= 1");
  GalleryEntry e;
  e.name = "euclidean" + std::to_string(n);
  auto& d = e.data;
  d.n = n;
  d.components = n;
  for (int j = 0; j < n; ++j) {
    d.ansatz.push_back({{{j + 1, coordinate()}}, {}});
    d.normalizations.push_back({{j, -1.0}, 1.0});
    d.Q.push_back({j, 0.0});
    d.P.push_back({j, kInf});
    d.omega.push_back(node_differential(1.0));
  }
  d.sigma = negation_everywhere(n);
  e.reference = [](const Eigen::VectorXd& u) { return Eigen::VectorXd(u.array().exp()); };
  return e;
}

GalleryEntry example1_with_radius(Complex b, Complex c, Complex r) {
  require_nondegenerate(std::abs(b) > 0.0 && std::abs(c) > 0.0 && std::abs(r) > 0.0, "b, c and r must be nonzero");
  require_nondegenerate(!same_point(b, c) && !same_point(b, -c), "b must differ from +-c");
  require_nondegenerate(!same_point(b, r) && !same_point(b, -r) && !same_point(r, c) && !same_point(r, -c),
                        "r must differ from +-b and +-c");
  const Complex a = b * r / c;

  GalleryEntry e;
  e.name = "example1";
  auto& d = e.data;
  d.n = 2;
  d.components = 2;
  d.ansatz = {{{{1, coordinate()}}, {}}, {{{2, coordinate()}}, {c}}};
  d.gluings = {{{{0, a}, {1, b}}}, {{{0, -a}, {1, -b}}}};
  d.normalizations = {{{1, r}, 1.0}};
  d.Q = {{0, 0.0}, {1, 0.0}};
  d.P = {{0, kInf}, {1, kInf}};
  d.omega = {node_differential(a), differential(-1.0, {{c, 1}, {-c, 1}, {0.0, -1}, {b, -1}, {-b, -1}, {r, -1}, {-r, -1}})};
  d.sigma = negation_everywhere(2);

  e.reference = [a, b, c, r](const Eigen::VectorXd& u) {
    const Complex y1 = std::exp(u(0)), y2 = std::exp(u(1));
    const Complex Y = std::pow(y2, 2.0 * b) / std::pow(y1, 2.0 * a);
    const Complex den = 1.0 + (b + c) * (b - r) / ((c - b) * (b + r)) * Y;
    const Complex x1 = -2.0 * b * (r - c) / ((c - b) * (b + r)) * std::pow(y2, -r) *
                       (std::pow(y2, b) / std::pow(y1, a)) / den;
    const Complex x2 = b * (c - r) / (c * (b + r)) * std::pow(y2, -r) * (1.0 + (b + c) / (c - b) * Y) / den;
    return Eigen::Vector2d(x1.real(), x2.real()).eval();
  };
  auto centre = [b, c, r](const Eigen::VectorXd& u) {
    return (std::exp(-r * u(1)) * b * (c - r) / (c * (b * b - r * r))).real();
  };
  e.identities.push_back({"circle", [=](const Eigen::VectorXd& u, const Eigen::VectorXd& x) {
                            const double C = centre(u);
                            const double bb = b.real(), rr = r.real();
                            return x(0) * x(0) + (x(1) - bb * C) * (x(1) - bb * C) - rr * rr * C * C;
                          }});
  e.identities.push_back({"circle-unit-centre",
                          [=](const Eigen::VectorXd& u, const Eigen::VectorXd& x) {
                            const double C = centre(u);
                            return x(0) * x(0) + (x(1) - C) * (x(1) - C) - C * C;
                          },
                          true});
  return e;
}

GalleryEntry example1(Complex b, Complex c) {
  require_nondegenerate(std::abs(c) > 0.0, "c must be nonzero");
  const Complex r = b / std::sqrt(2.0 - b * b / (c * c));
  require_nondegenerate(std::isfinite(std::abs(r)), "radius is not finite");
  return example1_with_radius(b, c, r);
}

GalleryEntry example2() {
  const Complex b = kI, c = -1.0, a = 0.5 * kI, r = 0.5;
  GalleryEntry e;
  e.name = "example2";
  auto& d = e.data;
  d.n = 2;
  d.components = 2;
  d.ansatz = {{{{1, coordinate()}, {2, FactoredRational::inverse_coordinate()}}, {}}, {{}, {c}}};
  d.gluings = {{{{0, a}, {1, b}}}, {{{0, -a}, {1, -b}}}};
  d.normalizations = {{{0, r}, 1.0}};
  d.Q = {{1, kInf}, {1, 0.0}};
  d.P = {{0, kInf}, {0, 0.0}};
  d.omega = {differential(-1.0, {{0.0, 1}, {a, -1}, {-a, -1}, {r, -1}, {-r, -1}}),
             differential(-1.0, {{c, 1}, {-c, 1}, {0.0, -1}, {b, -1}, {-b, -1}})};
  d.sigma = negation_everywhere(2);

  e.reference = [](const Eigen::VectorXd& u) {
    const double t = u(0) / 2 - 2 * u(1), s = std::exp(-u(0) / 2 - 2 * u(1));
    return Eigen::Vector2d(s * (std::cos(t) + std::sin(t)), s * (std::cos(t) - std::sin(t))).eval();
  };
  e.identities.push_back({"circle", [](const Eigen::VectorXd& u, const Eigen::VectorXd& x) {
                            return x.squaredNorm() - 2.0 * std::exp(-u(0) - 4 * u(1));
                          }});
  e.identities.push_back({"ray", [](const Eigen::VectorXd& u, const Eigen::VectorXd& x) {
                            const double t = u(0) / 2 - 2 * u(1);
                            return x(0) * (std::cos(t) - std::sin(t)) - x(1) * (std::cos(t) + std::sin(t));
                          }});
  return e;
}

GalleryEntry example3() {
  const double s3 = std::sqrt(3.0);
  const Complex a = kI / (2.0 * s3), b = kI / s3, c = kI, dd = kI, beta = b * c, gamma = -1.0, r = 0.5;
  GalleryEntry e;
  e.name = "example3";
  auto& d = e.data;
  d.n = 3;
  d.components = 3;
  d.ansatz = {{{{1, coordinate()}, {2, FactoredRational::inverse_coordinate()}}, {}},
              {{{3, coordinate()}}, {beta}},
              {{}, {gamma}}};
  d.gluings = {{{{0, a}, {1, b}}}, {{{0, -a}, {1, -b}}}, {{{1, c}, {2, dd}}}, {{{1, -c}, {2, -dd}}}};
  d.normalizations = {{{0, r}, 1.0}};
  d.Q = {{1, 0.0}, {2, kInf}, {2, 0.0}};
  d.P = {{0, kInf}, {0, 0.0}, {1, kInf}};
  d.omega = {differential(-1.0, {{0.0, 1}, {a, -1}, {-a, -1}, {r, -1}, {-r, -1}}),
             differential(-1.0, {{beta, 1}, {-beta, 1}, {0.0, -1}, {b, -1}, {-b, -1}, {c, -1}, {-c, -1}}),
             differential(-1.0, {{gamma, 1}, {-gamma, 1}, {0.0, -1}, {dd, -1}, {-dd, -1}})};
  d.sigma = negation_everywhere(3);

  e.reference = [s3](const Eigen::VectorXd& u) {
    const double pi = std::numbers::pi;
    const double s = std::sqrt(2.0) * std::exp(-u(0) / 2 - 2 * u(1));
    const double w = u(0) - 2 * (6 * u(1) + u(2));
    const double t = w / (2 * s3);
    Eigen::Vector3d x;
    x(0) = s * std::cos((3 * pi + 2 * s3 * w) / 12);
    x(1) = s * (std::cos(t) * std::sin(pi / 4 + u(2)) + std::sin(t) * std::cos(pi / 12 + u(2)));
    x(2) = s * (std::cos(t) * std::cos(pi / 4 + u(2)) - std::sin(t) * std::sin(pi / 12 + u(2)));
    return Eigen::VectorXd(x);
  };
  e.identities.push_back({"sphere", [](const Eigen::VectorXd& u, const Eigen::VectorXd& x) {
                            return x.squaredNorm() - 3.0 * std::exp(-u(0) - 4 * u(1));
                          }});
  e.identities.push_back({"plane", [s3](const Eigen::VectorXd& u, const Eigen::VectorXd& x) {
                            return x(0) - ((1 - s3) / 2 * x(1) + (1 + s3) / 2 * x(2)) * std::cos(u(2)) -
                                   ((1 + s3) / 2 * x(1) + (s3 - 1) / 2 * x(2)) * std::sin(u(2));
                          }});
  e.identities.push_back({"cone", [s3](const Eigen::VectorXd& u, const Eigen::VectorXd& x) {
                            const double w = u(0) - 2 * (6 * u(1) + u(2));
                            return 2 * x(0) * x(0) - x(1) * x(1) - x(2) * x(2) + x.squaredNorm() * std::sin(w / s3);
                          }});
  return e;
}

namespace {

// Chain of one base line and n - 1 four-component blocks; returns the C component of each block.
std::vector<int> build_spherical_chain(SpectralData& d, int n, Complex alpha) {
  require_nondegenerate(std::abs(alpha) > 0.0, "alpha must be nonzero");
  const Complex a = kI, b1 = 0.5 * kI, b2 = -0.5 * kI, c1 = (kI - 1.0) / 2.0, c2 = (-kI - 1.0) / 2.0;
  const Complex dpt = -kI * alpha, beta1 = kI, beta2 = -kI;
  const Complex m = (b2 - c2) / (b1 - c1), t = (b1 * c2 - b2 * c1) / (b1 - c1);

  d.n = n;
  d.components = 1 + 4 * (n - 1);
  d.ansatz.assign(d.components, {});
  d.omega.assign(d.components, RationalDifferential());
  InvolutionSpec sigma;
  sigma.component_perm.resize(d.components);
  sigma.moebius.resize(d.components);

  d.ansatz[0] = {{{1, coordinate()}}, {}};
  d.omega[0] = node_differential(1.0);
  d.normalizations.push_back({{0, -1.0}, 1.0});
  d.P.push_back({0, kInf});
  sigma.component_perm[0] = 0;
  sigma.moebius[0] = Moebius::negation();

  std::vector<int> cs;
  int prev = 0;
  for (int k = 2; k <= n; ++k) {
    const int E = 4 * (k - 2) + 1, A = E + 1, B = E + 2, C = E + 3;
    d.ansatz[E] = {{{k, coordinate()}}, {}};
    d.ansatz[A] = {{}, {0.0}};
    d.ansatz[B] = {{}, {0.0}};
    d.ansatz[C] = {{}, {alpha}};
    d.P.push_back({E, kInf});

    d.gluings.push_back({{{prev, 0.0}, {E, 0.0}}});
    d.gluings.push_back({{{E, a}, {A, b1}}});
    d.gluings.push_back({{{E, -a}, {B, b2}}});
    d.gluings.push_back({{{A, c1}, {C, dpt}}});
    d.gluings.push_back({{{B, c2}, {C, -dpt}}});
    d.normalizations.push_back({{A, kInf}, 0.0});
    d.normalizations.push_back({{B, kInf}, 0.0});

    d.omega[E] = node_differential(a);
    d.omega[A] = differential(-1.0, {{0.0, 1}, {beta1, 1}, {b1, -1}, {c1, -1}});
    d.omega[B] = differential(-1.0, {{0.0, 1}, {beta2, 1}, {b2, -1}, {c2, -1}});
    d.omega[C] = differential(-1.0, {{alpha, 1}, {-alpha, 1}, {0.0, -1}, {dpt, -1}, {-dpt, -1}});

    sigma.component_perm[E] = E;
    sigma.component_perm[C] = C;
    sigma.component_perm[A] = B;
    sigma.component_perm[B] = A;
    sigma.moebius[E] = Moebius::negation();
    sigma.moebius[C] = Moebius::negation();
    sigma.moebius[A] = Moebius(m, t, 0.0, 1.0);
    sigma.moebius[B] = Moebius(1.0, -t, 0.0, m);
    cs.push_back(C);
    prev = C;
  }
  d.sigma = sigma;
  return cs;
}

}  // namespace

GalleryEntry polar(Complex alpha) {
  GalleryEntry e;
  e.name = "polar";
  const auto cs = build_spherical_chain(e.data, 2, alpha);
  e.data.Q = {{cs.back(), 0.0}, {cs.back(), kInf}};
  e.reference = [](const Eigen::VectorXd& u) {
    const double r = std::exp(u(0));
    return Eigen::Vector2d(r * std::cos(u(1)), r * std::sin(u(1))).eval();
  };
  e.identities.push_back({"circle", [](const Eigen::VectorXd& u, const Eigen::VectorXd& x) {
                            return x.norm() - std::exp(u(0));
                          }});
  return e;
}

GalleryEntry cylindrical(Complex alpha) {
  GalleryEntry e = polar(alpha);
  e.name = "cylindrical";
  auto& d = e.data;
  const int z = d.components;
  d.n = 3;
  d.components += 1;
  d.ansatz.push_back({{{3, coordinate()}}, {}});
  d.omega.push_back(node_differential(1.0));
  d.normalizations.push_back({{z, -1.0}, 1.0});
  d.Q.push_back({z, 0.0});
  d.P.push_back({z, kInf});
  d.sigma->component_perm.push_back(z);
  d.sigma->moebius.push_back(Moebius::negation());
  e.reference = [](const Eigen::VectorXd& u) {
    const double r = std::exp(u(0));
    return Eigen::Vector3d(r * std::cos(u(1)), r * std::sin(u(1)), std::exp(u(2))).eval();
  };
  e.identities.clear();
  return e;
}

GalleryEntry spherical_n(int n, Complex alpha) {
  if (n < 3) throw Error(ErrorKind::InvalidData, "spherical_n needs n >= 3");
  GalleryEntry e;
  e.name = "spherical" + std::to_string(n);
  const auto cs = build_spherical_chain(e.data, n, alpha);
  for (int c : cs) e.data.Q.push_back({c, kInf});
  e.data.Q.push_back({cs.back(), 0.0});
  e.reference = spherical_reference;
  e.identities.push_back({"sphere", [](const Eigen::VectorXd& u, const Eigen::VectorXd& x) {
                            return x.norm() - std::exp(u(0));
                          }});
  return e;
}

std::vector<std::string> gallery_names() {
  return {"euclidean1", "euclidean2", "euclidean3", "example1", "example2", "example3",
          "polar",      "cylindrical", "spherical3", "spherical4"};
}

GalleryEntry gallery_entry(std::string_view name) {
  auto suffix = [&](std::string_view prefix, int& value) {
    if (name.substr(0, prefix.size()) != prefix) return false;
    const auto rest = name.substr(prefix.size());
    auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), value);
    return ec == std::errc() && ptr == rest.data() + rest.size();
  };
  int n = 0;
  if (suffix("euclidean", n)) return euclidean(n);
  if (suffix("spherical", n)) return spherical_n(n, 1.0);
  if (name == "example1") return example1(1.0, 2.0);
  if (name == "example1-decoy") return example1_with_radius(1.0, 2.0, 2.0 / 3.0);
  if (name == "example2") return example2();
  if (name == "example3") return example3();
  if (name == "polar") return polar(1.0);
  if (name == "cylindrical") return cylindrical(1.0);
  throw Error(ErrorKind::InvalidData, "unknown gallery entry '" + std::string(name) + "'");
}

double reference_residual(const GalleryEntry& entry, const Eigen::VectorXd& u) {
  if (!entry.reference) throw Error(ErrorKind::InvalidData, "entry has no reference map");
  const Eigen::VectorXcd x = coordinate_map(entry.data, u);
  const Eigen::VectorXd ref = entry.reference(u);
  return (x - ref.cast<Complex>()).cwiseAbs().maxCoeff();
}

}  // namespace spectral
