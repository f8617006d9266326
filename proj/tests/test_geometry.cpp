#include <doctest.h>

#include <cmath>
#include <numbers>

#include "spectral/baker.hpp"
#include "spectral/gallery.hpp"
#include "spectral/geometry.hpp"

using namespace spectral;

namespace {

CoordinateFunction real_map(std::function<Eigen::VectorXd(const Eigen::VectorXd&)> f) {
  return [f = std::move(f)](const Eigen::VectorXd& u) -> Eigen::VectorXcd { return f(u).cast<Complex>(); };
}

}  // namespace

TEST_CASE("polar chart: metric, lame coefficients, christoffels, rotation") {
  const auto map = make_coordinate_function(polar(1.0).data);
  const Eigen::Vector2d u(0.2, 0.4);
  const double r = std::exp(0.2);

  const Eigen::MatrixXd J = jacobian(map, u, kFirstDerivativeFD);
  Eigen::Matrix2d Jref;
  Jref << r * std::cos(0.4), -r * std::sin(0.4), r * std::sin(0.4), r * std::cos(0.4);
  CHECK((J - Jref).norm() < 1e-8);

  const Eigen::MatrixXd g = metric(map, u, kFirstDerivativeFD, {});
  CHECK(std::abs(g(0, 1)) < 1e-9);
  CHECK(std::abs(g(0, 0) - r * r) < 1e-8);
  CHECK(std::abs(g(1, 1) - r * r) < 1e-8);

  const Eigen::VectorXd H = lame(g);
  CHECK(std::abs(H(0) - r) < 1e-8);
  CHECK(std::abs(H(1) - r) < 1e-8);

  // beta_12 = d_1 H_2 / H_1 = 1.
  const Eigen::MatrixXd beta = rotation(map, u, kCurvatureFD);
  CHECK(std::abs(beta(0, 1) - 1.0) < 1e-8);
  CHECK(std::abs(beta(1, 0)) < 1e-8);

  // Gamma^1_22 = -1, Gamma^1_11 = 1, Gamma^2_12 = 1.
  const auto cr = christoffel_and_riemann(map, u, kCurvatureFD);
  auto gamma = [&](int l, int i, int j) { return cr.christoffel(l * 4 + i * 2 + j); };
  CHECK(std::abs(gamma(0, 1, 1) + 1.0) < 1e-8);
  CHECK(std::abs(gamma(0, 0, 0) - 1.0) < 1e-8);
  CHECK(std::abs(gamma(1, 0, 1) - 1.0) < 1e-8);
  CHECK(cr.riemann_max < 1e-6);
}

TEST_CASE("exponential euclidean chart is flat") {
  const auto map = make_coordinate_function(euclidean(3).data);
  const Eigen::Vector3d u(0.1, -0.4, 0.7);
  const auto rep = analyze(map, u);
  CHECK(rep.orthogonal);
  CHECK((rep.H - Eigen::VectorXd(u.array().exp())).norm() < 1e-9);
  CHECK(rep.beta.norm() < 1e-9);
  CHECK(rep.curvature.riemann_max < 1e-8);
  CHECK(within(rep.systems.rotation_triple, 1e-8));
  CHECK(within(rep.immersion, 1e-8));
}

TEST_CASE("two lines: lame coefficients at the origin") {
  const auto map = make_coordinate_function(example1(1.0, 2.0).data);
  const Eigen::VectorXd H = lame(metric(map, Eigen::Vector2d::Zero(), kFirstDerivativeFD, {}));
  CHECK(std::abs(H(0) - 0.37796447300922723) < 1e-9);
  CHECK(std::abs(H(1) - 0.37796447300922723) < 1e-9);
}

TEST_CASE("three components: orthogonal and consistent") {
  const auto map = make_coordinate_function(example3().data);
  const Eigen::Vector3d u(0.1, 0.2, -0.3);
  const auto rep = analyze(map, u);
  CHECK(rep.g_offdiag_max <= 1e-6 * rep.g_norm);
  CHECK(rep.orthogonal);
  CHECK(rep.max_imag < 1e-9);
  CHECK(within(rep.systems.lame_mixed, 1e-4));
  CHECK(within(rep.systems.lame_pair, 1e-4));
  CHECK(within(rep.systems.rotation_triple, 1e-4));
  CHECK(within(rep.systems.rotation_pair, 1e-4));
  CHECK(within(rep.curvature.riemann, 1e-4));
  CHECK(within(rep.immersion, 1e-4));
}

TEST_CASE("non-orthogonal map is detected") {
  const auto map = real_map([](const Eigen::VectorXd& u) {
    Eigen::VectorXd x(2);
    x << u(0), u(0) + u(1);
    return x;
  });
  const auto rep = analyze(map, Eigen::Vector2d(0.3, 0.1));
  CHECK_FALSE(rep.orthogonal);
  CHECK(rep.g_offdiag_max > 0.5);
}

TEST_CASE("two dimensions have no triple equations") {
  const auto sys = check_systems(make_coordinate_function(polar(1.0).data), Eigen::Vector2d(0.1, 0.2), kCurvatureFD);
  CHECK(sys.rotation_triple.empty());
  CHECK(sys.lame_mixed.empty());
  CHECK(sys.rotation_pair.size() == 1);
  CHECK(sys.lame_pair.size() == 1);
}

TEST_CASE("immersion residual is small for the polar chart") {
  const auto imm = check_immersion(make_coordinate_function(polar(1.0).data), Eigen::Vector2d(0.2, 0.4), kCurvatureFD);
  CHECK_FALSE(imm.empty());
  CHECK(max_relative_residual(imm) <= 1e-5);
}

TEST_CASE("invalid finite-difference settings are rejected") {
  CHECK_THROWS_AS(validate(FDConfig{0.0, 4}), Error);
  CHECK_THROWS_AS(validate(FDConfig{1e-3, 3}), Error);
  CHECK_NOTHROW(validate(FDConfig{1e-3, 2}));
}

TEST_CASE("property: epsilon invariant is constant over samples") {
  for (const auto* name : {"euclidean2", "example2", "polar"}) {
    CAPTURE(name);
    const auto d = gallery_entry(name).data;
    std::vector<Eigen::VectorXd> samples;
    for (double a : {-0.4, 0.0, 0.3}) {
      for (double b : {-0.2, 0.5}) samples.push_back(Eigen::Vector2d(a, b));
    }
    const auto rep = epsilon_invariant(d, samples);
    CHECK(rep.spread.maxCoeff() <= 1e-6);
  }
}

TEST_CASE("property: gallery coordinates are orthogonal on a small grid") {
  for (const auto& name : gallery_names()) {
    CAPTURE(name);
    const auto d = gallery_entry(name).data;
    const auto map = make_coordinate_function(d);
    for (double t : {-0.3, 0.0, 0.25}) {
      const Eigen::VectorXd u = Eigen::VectorXd::Constant(d.n, t);
      const Eigen::MatrixXd g = metric(map, u, kFirstDerivativeFD, {});
      const double off = (g - Eigen::MatrixXd(g.diagonal().asDiagonal())).cwiseAbs().maxCoeff();
      CHECK(off <= 1e-6 * g.norm());
    }
  }
}
