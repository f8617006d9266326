#include <doctest.h>

#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

#include "spectral/baker.hpp"
#include "spectral/gallery.hpp"

using namespace spectral;

namespace {

const PointOnP1 kInf = PointOnP1::infinity();

ComponentAnsatz phases(std::vector<EssentialTerm> terms) { return ComponentAnsatz{std::move(terms), {}}; }

std::vector<Eigen::VectorXd> cube_grid(int n, int per_axis, double lo, double hi) {
  int total = 1;
  for (int i = 0; i < n; ++i) total *= per_axis;
  std::vector<Eigen::VectorXd> pts;
  for (int p = 0; p < total; ++p) {
    Eigen::VectorXd u(n);
    int rest = p;
    for (int i = 0; i < n; ++i) {
      u(i) = lo + (hi - lo) * (rest % per_axis) / (per_axis - 1);
      rest /= per_axis;
    }
    pts.push_back(u);
  }
  return pts;
}

}  // namespace

TEST_CASE("exponential factor") {
  Eigen::VectorXd u(2);
  u << 2.0, 0.7;
  const auto lin = phases({{1, FactoredRational::coordinate()}});
  CHECK(std::abs(exp_factor(lin, u, 3.0) - std::exp(6.0)) < 1e-12 * std::exp(6.0));

  const auto both = phases({{1, FactoredRational::coordinate()}, {2, FactoredRational::inverse_coordinate()}});
  const Complex a(0.0, 0.5);
  CHECK(std::abs(exp_factor(both, u, a) - std::exp(2.0 * a + 0.7 / a)) < 1e-13);
  CHECK_THROWS_AS(exp_factor(lin, u, kInf), Error);
}

TEST_CASE("single line system") {
  const auto d = euclidean(1).data;
  Eigen::VectorXd u(1);
  u << 0.3;
  const auto sys = assemble_system(d, u);
  REQUIRE(sys.A.rows() == 1);
  REQUIRE(sys.A.cols() == 1);
  CHECK(std::abs(sys.A(0, 0) - std::exp(-0.3)) < 1e-15);
  CHECK(std::abs(sys.b(0) - 1.0) < 1e-15);
  const auto c = solve_coefficients(d, u);
  CHECK(std::abs(c.values(0) - std::exp(0.3)) < 1e-14);
  CHECK(std::abs(eval_psi(d, c, d.Q[0]) - std::exp(0.3)) < 1e-14);
  CHECK(std::abs(h_values(d, c)(0) - std::exp(0.3)) < 1e-14);
}

TEST_CASE("two lines: coefficients match the closed-form psi") {
  const Complex b = 1.0, c = 2.0, r = 1.0 / std::sqrt(2.0 - 0.25), a = b * r / c;
  const auto d = example1(b, c).data;
  Eigen::VectorXd u(2);
  u << 0.1, -0.2;
  const auto cv = solve_coefficients(d, u);
  const Complex e2a = std::exp(2.0 * a * u(0)), e2b = std::exp(2.0 * b * u(1));
  const Complex f0 = 2.0 * b * (c - r) * std::exp(a * u(0) + (b - r) * u(1)) /
                     ((b + c) * (b - r) * e2b - (b + r) * (b - c) * e2a);
  const Complex g0 = std::exp(-r * u(1)) * ((b - c) * e2a + (b + c) * e2b) * (c - r) /
                     ((b + c) * (b - r) * e2b - (b - c) * (b + r) * e2a);
  const Complex g1 = (b * b - c * c) * (r - c) * std::exp(-r * u(1)) * (e2a - e2b) /
                     ((b + c) * (r - b) * e2b + (b - c) * (b + r) * e2a);
  REQUIRE(cv.values.size() == 3);
  CHECK(std::abs(cv.values(cv.offsets[0]) - f0) < 1e-12);
  CHECK(std::abs(cv.values(cv.offsets[1]) - g0) < 1e-12);
  CHECK(std::abs(cv.values(cv.offsets[1] + 1) - g1) < 1e-12);
}

TEST_CASE("duplicate normalization rows are singular") {
  auto d = polar(1.0).data;
  d.normalizations.push_back(d.normalizations.front());
  d.ansatz[0].poles.push_back(0.37);
  Eigen::VectorXd u = Eigen::VectorXd::Zero(2);
  try {
    solve_coefficients(d, u);
    FAIL("expected SingularSystem");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::SingularSystem);
  }
}

TEST_CASE("coordinate map values") {
  SUBCASE("polar at (0, pi/2)") {
    const Eigen::Vector2d u(0.0, std::numbers::pi / 2);
    const auto x = coordinate_map(polar(1.0).data, u);
    CHECK(std::abs(x(0)) < 1e-12);
    CHECK(std::abs(x(1) - 1.0) < 1e-12);
  }
  SUBCASE("spherical R3 at the origin") {
    const auto x = coordinate_map(spherical3(1.0).data, Eigen::VectorXd::Zero(3));
    CHECK(std::abs(x(0)) < 1e-12);
    CHECK(std::abs(x(1)) < 1e-12);
    CHECK(std::abs(x(2) - 1.0) < 1e-12);
  }
  SUBCASE("three components: sphere identity") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    const auto d = example3().data;
    for (int k = 0; k < 10; ++k) {
      const Eigen::Vector3d u(unif(rng), unif(rng), unif(rng));
      const Eigen::VectorXcd x = coordinate_map(d, u);
      CHECK(std::abs(x.squaredNorm() - 3.0 * std::exp(-u(0) - 4.0 * u(1))) < 1e-10);
    }
  }
}

TEST_CASE("normalizations to zero hold after the solve") {
  const auto d = spherical3(1.0).data;
  const Eigen::Vector3d u(0.2, -0.1, 0.4);
  const auto c = solve_coefficients(d, u);
  int zeros = 0;
  for (const auto& nm : d.normalizations) {
    if (std::abs(nm.value) != 0.0) continue;
    ++zeros;
    CHECK(std::abs(eval_psi(d, c, nm.point)) < 1e-14);
  }
  CHECK(zeros > 0);
}

TEST_CASE("leading coefficients for the reduced two-phase component") {
  const auto d = example2().data;
  const Eigen::Vector2d u(0.3, -0.2);
  const auto c = solve_coefficients(d, u);
  const auto h = h_values(d, c);
  // psi1 = exp(u1 z + u2 / z) f: both limits return f.
  CHECK(std::abs(h(0) - c.values(c.offsets[0])) < 1e-14);
  CHECK(std::abs(h(1) - c.values(c.offsets[0])) < 1e-14);
}

TEST_CASE("property: solution is independent of row order") {
  std::mt19937_64 rng(23);
  for (const auto& name : gallery_names()) {
    CAPTURE(name);
    const auto d = gallery_entry(name).data;
    const Eigen::VectorXd u = Eigen::VectorXd::LinSpaced(d.n, -0.4, 0.3);
    const auto sys = assemble_system(d, u);
    const Eigen::VectorXcd ref = solve_linear(sys.A, sys.b);
    std::vector<int> order(sys.A.rows());
    std::iota(order.begin(), order.end(), 0);
    for (int trial = 0; trial < 5; ++trial) {
      std::shuffle(order.begin(), order.end(), rng);
      Eigen::MatrixXcd A(sys.A.rows(), sys.A.cols());
      Eigen::VectorXcd b(sys.b.size());
      for (int k = 0; k < A.rows(); ++k) {
        A.row(k) = sys.A.row(order[k]);
        b(k) = sys.b(order[k]);
      }
      CHECK((solve_linear(A, b) - ref).norm() <= 1e-12 * ref.norm());
    }
  }
}

TEST_CASE("property: psi is linear in the normalization values") {
  const Complex lambda(1.7, -0.4);
  for (const auto& name : gallery_names()) {
    CAPTURE(name);
    const auto d = gallery_entry(name).data;
    auto scaled = d;
    for (auto& nm : scaled.normalizations) nm.value *= lambda;
    const Eigen::VectorXd u = Eigen::VectorXd::LinSpaced(d.n, 0.2, -0.3);
    const auto c0 = solve_coefficients(d, u), c1 = solve_coefficients(scaled, u);
    const Eigen::VectorXcd x0 = coordinate_map(d, u), x1 = coordinate_map(scaled, u);
    CHECK((x1 - lambda * x0).norm() <= 1e-12 * (1.0 + x0.norm()));
    const Eigen::VectorXcd h0 = h_values(d, c0), h1 = h_values(scaled, c1);
    CHECK((h1 - lambda * h0).norm() <= 1e-12 * (1.0 + h0.norm()));
  }
}

TEST_CASE("property: outputs are real on the cube grid") {
  for (const auto& name : gallery_names()) {
    CAPTURE(name);
    const auto d = gallery_entry(name).data;
    double worst = 0.0;
    for (const auto& u : cube_grid(d.n, 5, -1.0, 1.0)) worst = std::max(worst, coordinate_sample(d, u).max_imag);
    CHECK(worst <= 1e-9);
  }
}

TEST_CASE("property: glued branches agree after the solve") {
  for (const auto& name : gallery_names()) {
    CAPTURE(name);
    const auto d = gallery_entry(name).data;
    const Eigen::VectorXd u = Eigen::VectorXd::LinSpaced(d.n, -0.5, 0.5);
    const auto c = solve_coefficients(d, u);
    double worst = 0.0;
    for (const auto& g : d.gluings) {
      for (std::size_t k = 1; k < g.points.size(); ++k) {
        worst = std::max(worst, std::abs(eval_psi(d, c, g.points[k]) - eval_psi(d, c, g.points[k - 1])));
      }
    }
    CHECK(worst <= 1e-11 * (1.0 + c.values.norm()));
  }
}
