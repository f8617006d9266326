#include "spectral/baker.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace spectral {

namespace {

std::vector<int> coefficient_offsets(const SpectralData& data) {
  std::vector<int> off(data.components + 1, 0);
  for (int c = 0; c < data.components; ++c) {
    off[c + 1] = off[c] + 1 + static_cast<int>(data.ansatz[c].poles.size());
  }
  return off;
}

// exp factor times (1, 1/(z - a_1), ...), written into row[off .. off + 1 + #poles).
void basis_row(const SpectralData& data, const Eigen::VectorXd& u, const CurvePoint& p, int off,
               Eigen::Ref<Eigen::RowVectorXcd> row) {
  const auto& a = data.ansatz[p.component];
  const Complex e = exp_factor(a, u, p.point);
  row(off) += e;
  if (p.point.is_infinite()) return;
  for (std::size_t k = 0; k < a.poles.size(); ++k) {
    const Complex dz = p.point.value() - a.poles[k];
    if (same_point(p.point.value(), a.poles[k])) throw Error(ErrorKind::PoleEvaluation, "point at an ansatz pole");
    row(off + 1 + static_cast<int>(k)) += e / dz;
  }
}

Complex rational_part(const ComponentAnsatz& a, const CoefficientVector& coeffs, int c, const PointOnP1& z) {
  const int off = coeffs.offsets[c];
  Complex v = coeffs.values(off);
  if (z.is_infinite()) return v;
  for (std::size_t k = 0; k < a.poles.size(); ++k) {
    if (same_point(z.value(), a.poles[k])) throw Error(ErrorKind::PoleEvaluation, "psi evaluated at an ansatz pole");
    v += coeffs.values(off + 1 + static_cast<int>(k)) / (z.value() - a.poles[k]);
  }
  return v;
}

}  // namespace

Complex exp_factor(const ComponentAnsatz& ansatz, const Eigen::VectorXd& u, const PointOnP1& z) {
  Complex s{0.0, 0.0};
  for (const auto& t : ansatz.essential) {
    if (order_at(t.phase, z) < 0) throw Error(ErrorKind::EssentialSingularity, "exponential factor at a phase pole");
    s += u(t.var - 1) * eval(t.phase, z);
  }
  return std::exp(s);
}

LinearSystem assemble_system(const SpectralData& data, const Eigen::VectorXd& u) {
  const auto off = coefficient_offsets(data);
  int rows = 0;
  for (const auto& g : data.gluings) rows += static_cast<int>(g.points.size()) - 1;
  rows += static_cast<int>(data.normalizations.size());

  LinearSystem sys{Eigen::MatrixXcd::Zero(rows, off.back()), Eigen::VectorXcd::Zero(rows)};
  Eigen::RowVectorXcd tmp(off.back());
  int r = 0;
  for (const auto& g : data.gluings) {
    for (std::size_t k = 0; k + 1 < g.points.size(); ++k, ++r) {
      tmp.setZero();
      basis_row(data, u, g.points[k], off[g.points[k].component], tmp);
      sys.A.row(r) += tmp;
      tmp.setZero();
      basis_row(data, u, g.points[k + 1], off[g.points[k + 1].component], tmp);
      sys.A.row(r) -= tmp;
    }
  }
  for (const auto& nm : data.normalizations) {
    tmp.setZero();
    basis_row(data, u, nm.point, off[nm.point.component], tmp);
    sys.A.row(r) = tmp;
    sys.b(r) = nm.value;
    ++r;
  }
  return sys;
}

Eigen::VectorXcd solve_linear(const Eigen::MatrixXcd& A, const Eigen::VectorXcd& b, SolveDiagnostics* diag) {
  if (A.rows() != A.cols()) {
    throw Error(ErrorKind::CountMismatch, "linear system is not square");
  }
  Eigen::VectorXd scale = A.rowwise().lpNorm<Eigen::Infinity>();
  for (Eigen::Index i = 0; i < scale.size(); ++i) {
    if (!(scale(i) > 0.0) || !std::isfinite(scale(i))) {
      throw Error(ErrorKind::SingularSystem, "zero or non-finite row in the linear system");
    }
  }
  const Eigen::MatrixXcd As = scale.cwiseInverse().asDiagonal() * A;
  const Eigen::VectorXcd bs = scale.cwiseInverse().asDiagonal() * b;

  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(As);
  // rcond() can miss an exactly zero pivot, so the pivot ratio is a second lower bound.
  const Eigen::VectorXd pivots = lu.matrixLU().diagonal().cwiseAbs();
  const double pivot_ratio = pivots.minCoeff() > 0.0 ? pivots.maxCoeff() / pivots.minCoeff()
                                                     : std::numeric_limits<double>::infinity();
  const double rcond = lu.rcond();
  const double cond =
      std::max(rcond > 0.0 ? 1.0 / rcond : std::numeric_limits<double>::infinity(), pivot_ratio);
  SolveDiagnostics d;
  d.condition_estimate = cond;
  if (!(cond <= kMaxCondition)) {
    if (diag) *diag = d;
    std::ostringstream os;
    os << "condition estimate " << cond << " exceeds " << kMaxCondition;
    throw Error(ErrorKind::SingularSystem, os.str());
  }
  Eigen::VectorXcd x = lu.solve(bs);
  // Residual of the equilibrated rows.
  d.residual_norm = (As * x - bs).norm();
  if (diag) *diag = d;
  if (!x.allFinite() || d.residual_norm > 1e-10 * (1.0 + bs.norm())) {
    std::ostringstream os;
    os << "solve residual " << d.residual_norm << " too large";
    throw Error(ErrorKind::SingularSystem, os.str());
  }
  return x;
}

CoefficientVector solve_coefficients(const SpectralData& data, const Eigen::VectorXd& u, SolveDiagnostics* diag) {
  const auto sys = assemble_system(data, u);
  CoefficientVector cv;
  cv.offsets = coefficient_offsets(data);
  cv.values = solve_linear(sys.A, sys.b, diag);
  cv.u = u;
  return cv;
}

Complex eval_psi(const SpectralData& data, const CoefficientVector& coeffs, const CurvePoint& p) {
  const auto& a = data.ansatz[p.component];
  return exp_factor(a, coeffs.u, p.point) * rational_part(a, coeffs, p.component, p.point);
}

CoordinateSample coordinate_sample(const SpectralData& data, const Eigen::VectorXd& u) {
  CoordinateSample s;
  const auto coeffs = solve_coefficients(data, u, &s.diagnostics);
  s.x.resize(data.n);
  for (int j = 0; j < data.n; ++j) {
    s.x(j) = eval_psi(data, coeffs, data.Q[j]);
    s.max_imag = std::max(s.max_imag, std::abs(s.x(j).imag()));
  }
  return s;
}

Eigen::VectorXcd coordinate_map(const SpectralData& data, const Eigen::VectorXd& u) {
  return coordinate_sample(data, u).x;
}

Eigen::VectorXcd h_values(const SpectralData& data, const CoefficientVector& coeffs) {
  Eigen::VectorXcd h(data.n);
  for (int i = 0; i < data.n; ++i) {
    const auto& p = data.P[i];
    const auto& a = data.ansatz[p.component];
    Complex s{0.0, 0.0};
    for (const auto& t : a.essential) {
      if (order_at(t.phase, p.point) < 0) {
        if (t.var != i + 1) {
          throw Error(ErrorKind::EssentialSingularity,
                      "another phase blows up at P_" + std::to_string(i + 1));
        }
        s += coeffs.u(t.var - 1) * laurent_constant(t.phase, p.point);
      } else {
        s += coeffs.u(t.var - 1) * eval(t.phase, p.point);
      }
    }
    h(i) = std::exp(s) * rational_part(a, coeffs, p.component, p.point);
  }
  return h;
}

}  // namespace spectral
