#ifndef SPECTRAL_GEOMETRY_HPP
#define SPECTRAL_GEOMETRY_HPP

#include <array>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "spectral/curve.hpp"
#include "spectral/finite_difference.hpp"

namespace spectral {

using CoordinateFunction = std::function<Eigen::VectorXcd(const Eigen::VectorXd&)>;

struct FDConfig {
  double h = 1e-3;
  int order = 4;
};

/// Orthogonality and other first-derivative checks.
inline constexpr FDConfig kFirstDerivativeFD{1e-5, 2};
/// Curvature, rotation systems and immersion.
inline constexpr FDConfig kCurvatureFD{1e-3, 4};

void validate(const FDConfig& fd);

/// Coordinates sampled on the lattice u0 + h * offset, memoized per offset.
class LatticeProbe {
 public:
  using Offset = std::vector<int>;

  LatticeProbe(CoordinateFunction map, Eigen::VectorXd u0, FDConfig fd, Eigen::VectorXd eta = {});

  int dim() const noexcept { return static_cast<int>(u0_.size()); }
  const FDConfig& fd() const noexcept { return fd_; }
  const Eigen::VectorXd& eta() const noexcept { return eta_; }
  Offset origin() const { return Offset(dim(), 0); }
  double max_imag() const noexcept { return max_imag_; }
  std::size_t evaluations() const noexcept { return x_.size(); }

  const Eigen::VectorXd& x(const Offset& o);
  /// (k, i) = d x^k / d u^i.
  Eigen::MatrixXd jacobian(const Offset& o);
  /// H_i = sqrt(sum_k eta_k (d_i x^k)^2).
  const Eigen::VectorXd& lame(const Offset& o);
  /// (i, j) = d_j H_i.
  const Eigen::MatrixXd& lame_gradient(const Offset& o);
  /// beta_ij = d_i H_j / H_i, zero diagonal.
  Eigen::MatrixXd rotation(const Offset& o);
  /// Gamma^l_ij flattened as l * n^2 + i * n + j.
  Eigen::VectorXd christoffel(const Offset& o);

  template <class Field>
  auto d1(const Field& f, const Offset& o, int axis);
  template <class Field>
  auto d2(const Field& f, const Offset& o, int axis);

 private:
  CoordinateFunction map_;
  Eigen::VectorXd u0_;
  FDConfig fd_;
  Eigen::VectorXd eta_;
  double max_imag_ = 0.0;
  std::map<Offset, Eigen::VectorXd> x_;
  std::map<Offset, Eigen::VectorXd> lame_;
  std::map<Offset, Eigen::MatrixXd> grad_;
};

/// One scalar equation of a checked family: residual and the largest term size.
struct ResidualEntry {
  std::array<int, 3> index{};
  double residual = 0.0;
  double scale = 0.0;
};

using ResidualFamily = std::vector<ResidualEntry>;

double max_residual(const ResidualFamily& family) noexcept;
/// max over entries of residual / (1 + scale).
double max_relative_residual(const ResidualFamily& family) noexcept;
bool within(const ResidualFamily& family, double tol) noexcept;

Eigen::MatrixXd jacobian(const CoordinateFunction& map, const Eigen::VectorXd& u, const FDConfig& fd);
/// g = J^T diag(eta) J on real parts.
Eigen::MatrixXd metric(const CoordinateFunction& map, const Eigen::VectorXd& u, const FDConfig& fd,
                       const Eigen::VectorXd& eta);
/// Throws NonPositiveDiagonal.
Eigen::VectorXd lame(const Eigen::MatrixXd& g);
Eigen::MatrixXd rotation(const CoordinateFunction& map, const Eigen::VectorXd& u, const FDConfig& fd);

struct SystemResiduals {
  ResidualFamily lame_mixed;     // d_j d_k H_i equations, distinct i, j < k
  ResidualFamily lame_pair;      // second-order pair equations, i < j
  ResidualFamily rotation_triple;  // d_k beta_ij = beta_ik beta_kj, distinct i, j, k
  ResidualFamily rotation_pair;  // d_i beta_ij + d_j beta_ji + sum beta_ki beta_kj, i < j
};

SystemResiduals check_systems(LatticeProbe& probe);
SystemResiduals check_systems(const CoordinateFunction& map, const Eigen::VectorXd& u, const FDConfig& fd);

struct CurvatureResult {
  Eigen::VectorXd christoffel;  // flattened as in LatticeProbe::christoffel
  ResidualFamily riemann;       // lowered components R_lijk with j < k, from second derivatives of g
  double riemann_max = 0.0;
};

CurvatureResult christoffel_and_riemann(LatticeProbe& probe);
CurvatureResult christoffel_and_riemann(const CoordinateFunction& map, const Eigen::VectorXd& u, const FDConfig& fd);

ResidualFamily check_immersion(LatticeProbe& probe);
ResidualFamily check_immersion(const CoordinateFunction& map, const Eigen::VectorXd& u, const FDConfig& fd);

struct EpsilonReport {
  Eigen::MatrixXcd ratios;  // (sample, i)
  Eigen::VectorXcd mean;
  Eigen::VectorXd spread;   // max relative deviation from the mean
  double eta0_sq = 0.0;
};

EpsilonReport epsilon_invariant(const SpectralData& data, const std::vector<Eigen::VectorXd>& samples,
                                const FDConfig& fd = kFirstDerivativeFD);

struct GeometryReport {
  Eigen::VectorXd u;
  Eigen::VectorXcd x;
  double max_imag = 0.0;
  Eigen::MatrixXd g;
  double g_offdiag_max = 0.0;
  double g_norm = 0.0;
  bool orthogonal = false;
  Eigen::VectorXd H;
  Eigen::MatrixXd beta;
  SystemResiduals systems;
  CurvatureResult curvature;
  ResidualFamily immersion;
};

struct AnalyzeOptions {
  FDConfig first = kFirstDerivativeFD;
  FDConfig second = kCurvatureFD;
  double orthogonality_tol = 1e-6;
  Eigen::VectorXd eta;
};

GeometryReport analyze(const CoordinateFunction& map, const Eigen::VectorXd& u, const AnalyzeOptions& opts = {});

CoordinateFunction make_coordinate_function(const SpectralData& data);

template <class Field>
auto LatticeProbe::d1(const Field& f, const Offset& o, int axis) {
  return fd::d1(f, o, axis, fd_.h, fd_.order);
}

template <class Field>
auto LatticeProbe::d2(const Field& f, const Offset& o, int axis) {
  return fd::d2(f, o, axis, fd_.h, fd_.order);
}

}  // namespace spectral

#endif  // SPECTRAL_GEOMETRY_HPP
