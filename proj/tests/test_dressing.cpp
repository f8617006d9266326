#include <doctest.h>

#include <cmath>

#include "spectral/dressing.hpp"
#include "support.hpp"

using namespace spectral;
using spectral::testing::throws_kind;

namespace {

KernelTerm gaussian_term(int i, int j, double amplitude, Profile g, Profile h) {
  return {i, j, ProfileFamily::Gaussian, amplitude, g, h};
}

KernelSpec two_component_spec() {
  return {2,
          {gaussian_term(0, 1, 0.4, {0.0, 1.0}, {0.2, 1.2}), gaussian_term(0, 0, 0.3, {-0.1, 1.0}, {0.3, 0.9}),
           gaussian_term(1, 1, 0.5, {0.5, 2.0}, {1.0, 1.5})}};
}

KernelSpec three_component_spec() {
  return {3,
          {gaussian_term(0, 1, 0.3, {0.0, 1.0}, {0.2, 1.1}), gaussian_term(1, 2, 0.25, {0.4, 0.9}, {-0.1, 1.0}),
           gaussian_term(0, 2, 0.2, {-0.2, 1.2}, {0.3, 0.8}), gaussian_term(1, 1, 0.3, {0.1, 1.0}, {0.6, 1.3})}};
}

double gauss(double t, double c, double w) { return std::exp(-((t - c) / w) * ((t - c) / w)); }

}  // namespace

TEST_CASE("profiles") {
  const Profile p{0.5, 2.0};
  CHECK(profile_value(ProfileFamily::Gaussian, p, 0.5) == 1.0);
  CHECK(std::abs(profile_value(ProfileFamily::Gaussian, p, 2.5) - std::exp(-1.0)) < 1e-15);
  CHECK(std::abs(profile_value(ProfileFamily::Bump, p, 0.5) - std::exp(-1.0)) < 1e-15);
  CHECK(profile_value(ProfileFamily::Bump, p, 2.5) == 0.0);
  CHECK(profile_value(ProfileFamily::Bump, p, -3.0) == 0.0);
  CHECK(profile_derivative(ProfileFamily::Bump, p, 2.6) == 0.0);
  for (auto fam : {ProfileFamily::Gaussian, ProfileFamily::Bump}) {
    for (double t : {-0.7, 0.3, 1.1, 2.2}) {
      const double h = 1e-5;
      const double fd = (profile_value(fam, p, t + h) - profile_value(fam, p, t - h)) / (2 * h);
      CHECK(std::abs(profile_derivative(fam, p, t) - fd) < 1e-8);
    }
  }
}

TEST_CASE("kernel specs are validated") {
  CHECK_NOTHROW(validate(two_component_spec()));
  CHECK(throws_kind([] { validate(KernelSpec{2, {gaussian_term(1, 0, 1.0, {}, {})}}); }, ErrorKind::InvalidData));
  CHECK(throws_kind([] { validate(KernelSpec{2, {gaussian_term(0, 2, 1.0, {}, {})}}); }, ErrorKind::InvalidData));
  CHECK(throws_kind([] { validate(KernelSpec{2, {gaussian_term(0, 1, 1.0, {0.0, 0.0}, {})}}); }, ErrorKind::InvalidData));
  CHECK(throws_kind([] { validate(KernelSpec{0, {}}); }, ErrorKind::InvalidData));
}

TEST_CASE("kernel matrix at a fixed point") {
  const Eigen::MatrixXd F = build_F(two_component_spec(), Eigen::Vector2d::Zero(), 0.0, 0.5);
  CHECK(std::abs(F(0, 0) + 0.19527592005710058) < 1e-14);
  CHECK(std::abs(F(0, 1)) < 1e-15);
  CHECK(std::abs(F(1, 0) + 0.084162792044107393) < 1e-14);
  CHECK(std::abs(F(1, 1) + 0.17989109360761109) < 1e-14);
}

TEST_CASE("kernel equations") {
  const Eigen::Vector2d u(0.2, -0.3);
  const auto skew = check_F_equations(two_component_spec(), u);
  CHECK(skew.transport <= 1e-7);
  CHECK(skew.skew <= 1e-7);
  const auto three = check_F_equations(three_component_spec(), Eigen::Vector3d(0.1, -0.2, 0.3));
  CHECK(three.transport <= 1e-7);
  CHECK(three.skew <= 1e-7);

  // The plain s-derivative in the lower triangle breaks the skew reduction.
  const auto plain = check_F_equations(two_component_spec(), u, FConvention::PlainDerivative);
  CHECK(plain.transport <= 1e-7);
  CHECK(plain.skew > 1e-3);

  const auto zero = check_F_equations(KernelSpec{2, {}}, u);
  CHECK(zero.transport == 0.0);
  CHECK(zero.skew == 0.0);
}

TEST_CASE("quadrature rules") {
  const auto gl = make_quadrature(-1.0, 3.0, 8, QuadratureRule::GaussLegendre);
  CHECK(std::abs(gl.weights.sum() - 4.0) < 1e-13);
  // Exact through degree 15.
  double integral = 0.0;
  for (int k = 0; k < 8; ++k) integral += gl.weights(k) * std::pow(gl.nodes(k), 15);
  CHECK(std::abs(integral - (std::pow(3.0, 16) - 1.0) / 16.0) < 1e-13 * std::pow(3.0, 16));

  const auto tr = make_quadrature(0.0, 1.0, 11, QuadratureRule::Trapezoid);
  CHECK(std::abs(tr.nodes(10) - 1.0) < 1e-15);
  CHECK(std::abs(tr.weights(0) - 0.05) < 1e-15);
  CHECK(std::abs(tr.weights.sum() - 1.0) < 1e-14);

  CHECK(throws_kind([] { validate(DressingGrid{0.0, -1.0, 200, QuadratureRule::GaussLegendre}); }, ErrorKind::InvalidData));
  CHECK(throws_kind([] { validate(DressingGrid{0.0, 8.0, 1, QuadratureRule::GaussLegendre}); }, ErrorKind::InvalidData));
}

TEST_CASE("rank-one kernel has the closed-form resolvent") {
  const double lambda = 0.9;
  const MatrixKernel F = [&](double a, double b) {
    return Eigen::MatrixXd::Constant(1, 1, lambda * gauss(a, 0.5, 1.0) * gauss(b, 1.0, 0.8));
  };
  const auto sol = solve_marchenko(F, 1, DressingGrid{0.0, 10.0, 200, QuadratureRule::GaussLegendre});
  CHECK(std::abs(sol.K_ss(0, 0) - 0.84604729252350205886) < 1e-8);
  CHECK(sol.residual <= 1e-10 * (1.0 + sol.F_norm));

  // Trapezoid error falls by four when the step halves.
  const double exact = 0.84604729252350205886;
  const double e1 = std::abs(solve_marchenko(F, 1, {0.0, 10.0, 41, QuadratureRule::Trapezoid}).K_ss(0, 0) - exact);
  const double e2 = std::abs(solve_marchenko(F, 1, {0.0, 10.0, 81, QuadratureRule::Trapezoid}).K_ss(0, 0) - exact);
  CHECK(e1 / e2 >= 3.5);
  CHECK(e1 / e2 <= 4.5);
}

TEST_CASE("resolvent near a Fredholm eigenvalue is rejected") {
  // 1 - lambda mu = 0 at lambda = 1 / mu.
  const double lambda = 1.0 / 0.91816029867242739673;
  const MatrixKernel F = [&](double a, double b) {
    return Eigen::MatrixXd::Constant(1, 1, lambda * gauss(a, 0.5, 1.0) * gauss(b, 1.0, 0.8));
  };
  CHECK(throws_kind([&] { solve_marchenko(F, 1, DressingGrid{0.0, 10.0, 200, QuadratureRule::GaussLegendre}); },
                    ErrorKind::SingularFredholm));
}

TEST_CASE("fat tails are rejected") {
  const KernelSpec wide{2, {gaussian_term(0, 1, 0.4, {0.0, 40.0}, {0.0, 40.0})}};
  const Eigen::Vector2d u = Eigen::Vector2d::Zero();
  const MatrixKernel F = [&](double a, double b) { return build_F(wide, u, a, b); };
  CHECK(throws_kind([&] { auto_s_max(F, 0.0); }, ErrorKind::TailTooFat));
  CHECK(throws_kind([&] { solve_marchenko(wide, u, DressingGrid{0.0, 8.0, 60, QuadratureRule::GaussLegendre}); },
                    ErrorKind::TailTooFat));
  const double smax = auto_s_max([&](double a, double b) { return build_F(two_component_spec(), u, a, b); }, 0.0);
  CHECK(smax > 0.0);
  CHECK(smax <= 64.0);
}

TEST_CASE("dressed rotation coefficients satisfy both systems") {
  const DressingGrid grid{0.0, 12.0, 80, QuadratureRule::GaussLegendre};
  SUBCASE("two components") {
    const auto spec = two_component_spec();
    const BetaField beta = [&](const Eigen::VectorXd& v) { return rotation_from_dressing(spec, v, grid); };
    const auto res = check_beta_systems(beta, Eigen::Vector2d(0.1, -0.2));
    CHECK(res.triple.empty());
    CHECK(max_relative_residual(res.pair) <= 1e-4);
  }
  SUBCASE("three components") {
    const auto spec = three_component_spec();
    const BetaField beta = [&](const Eigen::VectorXd& v) { return rotation_from_dressing(spec, v, grid); };
    const auto res = check_beta_systems(beta, Eigen::Vector3d(0.1, -0.2, 0.15));
    CHECK(res.triple.size() == 6);
    CHECK(max_relative_residual(res.triple) <= 1e-4);
    CHECK(max_relative_residual(res.pair) <= 1e-4);
  }
}

TEST_CASE("property: shifting u and s together leaves the rotation unchanged") {
  const auto spec = three_component_spec();
  const Eigen::Vector3d u(0.2, -0.1, 0.05);
  for (double t : {-0.3, 0.4}) {
    const Eigen::MatrixXd b0 = rotation_from_dressing(spec, u, {0.0, 12.0, 120, QuadratureRule::GaussLegendre});
    const Eigen::MatrixXd b1 =
        rotation_from_dressing(spec, (u.array() + t).matrix(), {t, 12.0 + t, 120, QuadratureRule::GaussLegendre});
    CHECK((b1 - b0).cwiseAbs().maxCoeff() <= 1e-10);
  }
}

TEST_CASE("property: discrete equation is solved to round-off") {
  const auto spec = three_component_spec();
  for (double t : {-0.5, 0.0, 0.5}) {
    const auto sol = solve_marchenko(spec, Eigen::Vector3d(t, -t, 0.3 * t), {0.0, 12.0, 100, QuadratureRule::GaussLegendre});
    CHECK(sol.residual <= 1e-10 * (1.0 + sol.F_norm));
    CHECK(sol.tail <= kTailBound);
  }
}

TEST_CASE("lame coefficients from a constant rotation field") {
  const BetaField beta = [](const Eigen::VectorXd&) {
    Eigen::Matrix2d b;
    b << 0.0, 1.0, 0.0, 0.0;
    return Eigen::MatrixXd(b);
  };
  const std::vector<std::function<double(double)>> cauchy = {[](double t) { return std::exp(t); },
                                                             [](double) { return 1.0; }};
  const auto rec = lame_from_rotation(beta, cauchy, {{-1.0, 1.0, 101}, {-1.0, 1.0, 101}});
  double worst = 0.0;
  for (Eigen::Index k = 0; k < rec.H.rows(); ++k) {
    const auto idx = unflatten(static_cast<int>(k), rec.axes);
    const double u1 = rec.axes[0](idx[0]);
    worst = std::max({worst, std::abs(rec.H(k, 0) - std::exp(u1)), std::abs(rec.H(k, 1) - std::exp(u1))});
  }
  CHECK(worst <= 1e-8);
  CHECK(rec.path_spread <= 1e-8);
}

TEST_CASE("zero rotation field keeps the Cauchy data") {
  const BetaField beta = [](const Eigen::VectorXd&) { return Eigen::MatrixXd::Zero(3, 3).eval(); };
  const auto one = [](double) { return 1.0; };
  const auto rec = lame_from_rotation(beta, {one, one, one}, {{-0.5, 0.5, 5}, {-0.5, 0.5, 5}, {0.0, 1.0, 5}});
  CHECK((rec.H.array() - 1.0).abs().maxCoeff() == 0.0);
}

TEST_CASE("incompatible rotation field is rejected") {
  const BetaField beta = [](const Eigen::VectorXd&) {
    Eigen::Matrix3d b;
    b << 0.0, 0.5, 0.3, 0.2, 0.0, 0.4, 0.6, 0.1, 0.0;
    return Eigen::MatrixXd(b);
  };
  const auto one = [](double) { return 1.0; };
  CHECK(throws_kind([&] { lame_from_rotation(beta, {one, one, one}, {{-0.5, 0.5, 5}, {-0.5, 0.5, 5}, {-0.5, 0.5, 5}}); },
                    ErrorKind::IncompatibleField));
}

TEST_CASE("grid index round trip") {
  const std::vector<Eigen::VectorXd> axes = {Eigen::VectorXd::LinSpaced(3, 0, 1), Eigen::VectorXd::LinSpaced(4, 0, 1)};
  CHECK(unflatten(0, axes) == std::vector<int>{0, 0});
  CHECK(unflatten(2, axes) == std::vector<int>{2, 0});
  CHECK(unflatten(3, axes) == std::vector<int>{0, 1});
  CHECK(unflatten(11, axes) == std::vector<int>{2, 3});
}
