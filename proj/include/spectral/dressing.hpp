#ifndef SPECTRAL_DRESSING_HPP
#define SPECTRAL_DRESSING_HPP

#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "spectral/geometry.hpp"

namespace spectral {

enum class ProfileFamily { Gaussian, Bump };

/// Gaussian exp(-((t - center) / width)^2), or the compact bump
/// exp(-1 / (1 - ((t - center) / width)^2)) supported on |t - center| < width.
struct Profile {
  double center = 0.0;
  double width = 1.0;
};

double profile_value(ProfileFamily family, const Profile& p, double t) noexcept;
double profile_derivative(ProfileFamily family, const Profile& p, double t) noexcept;

/// amplitude * g(x) h(y) for i < j; amplitude * (g(x) h(y) - g(y) h(x)) for i = j. Indices 0-based.
struct KernelTerm {
  int i = 0;
  int j = 0;
  ProfileFamily family = ProfileFamily::Gaussian;
  double amplitude = 1.0;
  Profile g;
  Profile h;
};

struct KernelSpec {
  int n = 1;
  std::vector<KernelTerm> terms;
};

void validate(const KernelSpec& spec);

/// Skew: the lower-triangle entries carry the sign that makes the kernel satisfy the
/// skew reduction. PlainDerivative: the lower-triangle entries use the unsigned s-derivative.
enum class FConvention { Skew, PlainDerivative };

Eigen::MatrixXd build_F(const KernelSpec& spec, const Eigen::VectorXd& u, double s, double sp,
                        FConvention conv = FConvention::Skew);

struct FEquationResiduals {
  double transport = 0.0;  // d_{u^i} F + I_i d_s F + d_{s'} F I_i
  double skew = 0.0;       // d_{s'} F_ij(s, s') + d_s F_ji(s', s)
};

FEquationResiduals check_F_equations(const KernelSpec& spec, const Eigen::VectorXd& u,
                                     FConvention conv = FConvention::Skew, double h = 1e-4);

enum class QuadratureRule { Trapezoid, GaussLegendre };

struct Quadrature {
  Eigen::VectorXd nodes;
  Eigen::VectorXd weights;
};

Quadrature make_quadrature(double a, double b, int count, QuadratureRule rule);

struct DressingGrid {
  double s = 0.0;
  double s_max = 8.0;
  int nodes = 200;
  QuadratureRule rule = QuadratureRule::GaussLegendre;
};

void validate(const DressingGrid& grid);

using MatrixKernel = std::function<Eigen::MatrixXd(double, double)>;

struct MarchenkoSolution {
  Quadrature quadrature;
  std::vector<Eigen::MatrixXd> K;  // K(s, q_j)
  Eigen::MatrixXd K_ss;            // K(s, s)
  double residual = 0.0;           // max defining-equation residual at the nodes
  double F_norm = 0.0;
  double tail = 0.0;
  double rcond = 0.0;
};

inline constexpr double kTailBound = 1e-10;

/// Largest |F| entry seen beyond s_max.
double tail_estimate(const MatrixKernel& F, double s, double s_max);
/// Smallest s_max = s + 2k (k = 1..32) passing the tail bound; throws TailTooFat.
double auto_s_max(const MatrixKernel& F, double s);

/// Nystrom solve of K(s, s') = F(s, s') + int_s^inf K(s, q) F(q, s') dq.
/// Throws TailTooFat or SingularFredholm.
MarchenkoSolution solve_marchenko(const MatrixKernel& F, int n, const DressingGrid& grid);
MarchenkoSolution solve_marchenko(const KernelSpec& spec, const Eigen::VectorXd& u, const DressingGrid& grid,
                                  FConvention conv = FConvention::Skew);

/// beta_ij = K_ji(s, s), zero diagonal.
Eigen::MatrixXd rotation_from_dressing(const KernelSpec& spec, const Eigen::VectorXd& u, const DressingGrid& grid,
                                       FConvention conv = FConvention::Skew);

using BetaField = std::function<Eigen::MatrixXd(const Eigen::VectorXd&)>;

struct BetaResiduals {
  ResidualFamily triple;  // d_k beta_ij - beta_ik beta_kj
  ResidualFamily pair;    // d_i beta_ij + d_j beta_ji + sum_k beta_ki beta_kj
};

BetaResiduals check_beta_systems(const BetaField& beta, const Eigen::VectorXd& u, const FDConfig& fd = kCurvatureFD);

struct AxisGrid {
  double lo = 0.0;
  double hi = 1.0;
  int count = 5;
};

struct LameReconstruction {
  std::vector<Eigen::VectorXd> axes;  // node values per axis
  Eigen::MatrixXd H;                  // (flat grid index, j), first axis fastest
  double path_spread = 0.0;           // ascending vs descending leg order
  double compatibility = 0.0;         // triple-equation residual used as the gate
  int iterations = 0;
};

/// Integrates d_i H_j = beta_ij H_i from the Cauchy data H_j = h_j(u^j) on the axes.
/// Each axis grid must contain 0 and at least 4 nodes. Throws IncompatibleField.
LameReconstruction lame_from_rotation(const BetaField& beta, const std::vector<std::function<double(double)>>& cauchy,
                                      const std::vector<AxisGrid>& grid, double compat_tol = 1e-4);

std::vector<int> unflatten(int index, const std::vector<Eigen::VectorXd>& axes);

}  // namespace spectral

#endif  // SPECTRAL_DRESSING_HPP
