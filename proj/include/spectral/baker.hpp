#ifndef SPECTRAL_BAKER_HPP
#define SPECTRAL_BAKER_HPP

#include <Eigen/Dense>

#include "spectral/curve.hpp"

namespace spectral {

/// Ansatz coefficients, component by component: c0 followed by one entry per pole.
struct CoefficientVector {
  std::vector<int> offsets;  // offsets[c] is the position of c0 on component c
  Eigen::VectorXcd values;
  Eigen::VectorXd u;
};

struct SolveDiagnostics {
  double condition_estimate = 0.0;
  double residual_norm = 0.0;
};

struct LinearSystem {
  Eigen::MatrixXcd A;
  Eigen::VectorXcd b;
};

inline constexpr double kMaxCondition = 1e12;

Complex exp_factor(const ComponentAnsatz& ansatz, const Eigen::VectorXd& u, const PointOnP1& z);

LinearSystem assemble_system(const SpectralData& data, const Eigen::VectorXd& u);

/// Row-equilibrated partial-pivoting solve; throws SingularSystem past kMaxCondition.
Eigen::VectorXcd solve_linear(const Eigen::MatrixXcd& A, const Eigen::VectorXcd& b, SolveDiagnostics* diag = nullptr);

CoefficientVector solve_coefficients(const SpectralData& data, const Eigen::VectorXd& u,
                                     SolveDiagnostics* diag = nullptr);

Complex eval_psi(const SpectralData& data, const CoefficientVector& coeffs, const CurvePoint& p);

struct CoordinateSample {
  Eigen::VectorXcd x;
  double max_imag = 0.0;
  SolveDiagnostics diagnostics;
};

CoordinateSample coordinate_sample(const SpectralData& data, const Eigen::VectorXd& u);
Eigen::VectorXcd coordinate_map(const SpectralData& data, const Eigen::VectorXd& u);

/// Leading coefficients of psi at the P markers with the essential factor removed.
Eigen::VectorXcd h_values(const SpectralData& data, const CoefficientVector& coeffs);

}  // namespace spectral

#endif  // SPECTRAL_BAKER_HPP
