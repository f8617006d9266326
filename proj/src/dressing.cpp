#include "spectral/dressing.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace spectral {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorKind::InvalidData, what);
}

// Integral over [t_l, t_{l+1}] of the cubic through four neighbouring nodes.
double interval_integral(const Eigen::VectorXd& f, int l, double h) {
  const int m = static_cast<int>(f.size());
  if (l == 0) return h * (9 * f(0) + 19 * f(1) - 5 * f(2) + f(3)) / 24;
  if (l == m - 2) return h * (9 * f(m - 1) + 19 * f(m - 2) - 5 * f(m - 3) + f(m - 4)) / 24;
  return h * (-f(l - 1) + 13 * f(l) + 13 * f(l + 1) - f(l + 2)) / 24;
}

// int from node `from` to node `to` of f sampled on a uniform line.
double line_integral(const Eigen::VectorXd& f, int from, int to, double h) {
  double acc = 0.0;
  if (to >= from) {
    for (int l = from; l < to; ++l) acc += interval_integral(f, l, h);
  } else {
    for (int l = to; l < from; ++l) acc -= interval_integral(f, l, h);
  }
  return acc;
}

}  // namespace

double profile_value(ProfileFamily family, const Profile& p, double t) noexcept {
  const double x = (t - p.center) / p.width;
  if (family == ProfileFamily::Gaussian) return std::exp(-x * x);
  if (std::abs(x) >= 1.0) return 0.0;
  return std::exp(-1.0 / (1.0 - x * x));
}

double profile_derivative(ProfileFamily family, const Profile& p, double t) noexcept {
  const double x = (t - p.center) / p.width;
  if (family == ProfileFamily::Gaussian) return -2.0 * x / p.width * std::exp(-x * x);
  if (std::abs(x) >= 1.0) return 0.0;
  const double q = 1.0 - x * x;
  return std::exp(-1.0 / q) * (-2.0 * x / (q * q)) / p.width;
}

void validate(const KernelSpec& spec) {
  require(spec.n >= 1, "kernel spec needs n >= 1");
  for (const auto& t : spec.terms) {
    require(t.i >= 0 && t.j >= 0 && t.i < spec.n && t.j < spec.n, "kernel term index out of range");
    require(t.i <= t.j, "kernel terms are given for i <= j");
    require(t.g.width > 0.0 && t.h.width > 0.0, "profile widths must be positive");
    require(std::isfinite(t.amplitude) && std::isfinite(t.g.center) && std::isfinite(t.h.center) &&
                std::isfinite(t.g.width) && std::isfinite(t.h.width),
            "kernel parameters must be finite");
  }
}

Eigen::MatrixXd build_F(const KernelSpec& spec, const Eigen::VectorXd& u, double s, double sp, FConvention conv) {
  Eigen::MatrixXd F = Eigen::MatrixXd::Zero(spec.n, spec.n);
  for (const auto& t : spec.terms) {
    auto g = [&](double x) { return profile_value(t.family, t.g, x); };
    auto h = [&](double x) { return profile_value(t.family, t.h, x); };
    auto dg = [&](double x) { return profile_derivative(t.family, t.g, x); };
    auto dh = [&](double x) { return profile_derivative(t.family, t.h, x); };
    const int i = t.i, j = t.j;
    if (i < j) {
      F(i, j) += t.amplitude * dg(s - u(i)) * h(sp - u(j));
      const double sign = conv == FConvention::Skew ? -1.0 : 1.0;
      F(j, i) += sign * t.amplitude * g(sp - u(i)) * dh(s - u(j));
    } else {
      const double x = s - u(i), y = sp - u(i);
      F(i, i) += t.amplitude * (dg(x) * h(y) - dh(x) * g(y));
    }
  }
  return F;
}

FEquationResiduals check_F_equations(const KernelSpec& spec, const Eigen::VectorXd& u, FConvention conv, double h) {
  FEquationResiduals r;
  const int n = spec.n;
  const double samples[] = {-1.1, -0.3, 0.0, 0.45, 1.2};
  auto dds = [&](double s, double sp) {
    return Eigen::MatrixXd((-build_F(spec, u, s + 2 * h, sp, conv) + 8 * build_F(spec, u, s + h, sp, conv) -
                            8 * build_F(spec, u, s - h, sp, conv) + build_F(spec, u, s - 2 * h, sp, conv)) /
                           (12 * h));
  };
  auto ddsp = [&](double s, double sp) {
    return Eigen::MatrixXd((-build_F(spec, u, s, sp + 2 * h, conv) + 8 * build_F(spec, u, s, sp + h, conv) -
                            8 * build_F(spec, u, s, sp - h, conv) + build_F(spec, u, s, sp - 2 * h, conv)) /
                           (12 * h));
  };
  for (double s : samples) {
    for (double sp : samples) {
      const Eigen::MatrixXd Fs = dds(s, sp), Fsp = ddsp(s, sp);
      for (int i = 0; i < n; ++i) {
        auto shifted = [&](double dh) {
          Eigen::VectorXd v = u;
          v(i) += dh;
          return build_F(spec, v, s, sp, conv);
        };
        Eigen::MatrixXd R = (-shifted(2 * h) + 8 * shifted(h) - 8 * shifted(-h) + shifted(-2 * h)) / (12 * h);
        R.row(i) += Fs.row(i);
        R.col(i) += Fsp.col(i);
        r.transport = std::max(r.transport, R.cwiseAbs().maxCoeff());
      }
      // Both terms differentiate in the second slot: d/ds' F(s, s') and d/ds F(s', s).
      const Eigen::MatrixXd swapped_second = ddsp(sp, s);
      for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
          r.skew = std::max(r.skew, std::abs(Fsp(a, b) + swapped_second(b, a)));
        }
      }
    }
  }
  return r;
}

Quadrature make_quadrature(double a, double b, int count, QuadratureRule rule) {
  require(count >= 2, "quadrature needs at least two nodes");
  Quadrature q;
  if (rule == QuadratureRule::Trapezoid) {
    q.nodes = Eigen::VectorXd::LinSpaced(count, a, b);
    const double h = (b - a) / (count - 1);
    q.weights = Eigen::VectorXd::Constant(count, h);
    q.weights(0) = q.weights(count - 1) = h / 2;
    return q;
  }
  // Golub-Welsch: eigenvalues of the Legendre Jacobi matrix.
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(count, count);
  for (int k = 1; k < count; ++k) {
    const double beta = k / std::sqrt(4.0 * k * k - 1.0);
    J(k, k - 1) = J(k - 1, k) = beta;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
  const Eigen::VectorXd x = es.eigenvalues();
  const Eigen::VectorXd w = 2.0 * es.eigenvectors().row(0).transpose().array().square();
  q.nodes = (a + b) / 2 + (b - a) / 2 * x.array();
  q.weights = (b - a) / 2 * w;
  return q;
}

void validate(const DressingGrid& grid) {
  require(grid.s < grid.s_max, "grid needs s < s_max");
  require(grid.nodes >= 8, "grid needs at least 8 nodes");
}

double tail_estimate(const MatrixKernel& F, double s, double s_max) {
  double m = 0.0;
  for (int k = 0; k <= 40; ++k) {
    const double q = s_max + 0.5 * k;
    for (double qp = s; qp <= s_max + 20.0; qp += 0.5) {
      m = std::max({m, F(q, qp).cwiseAbs().maxCoeff(), F(qp, q).cwiseAbs().maxCoeff()});
    }
  }
  return m;
}

double auto_s_max(const MatrixKernel& F, double s) {
  for (int k = 1; k <= 32; ++k) {
    if (tail_estimate(F, s, s + 2.0 * k) <= kTailBound) return s + 2.0 * k;
  }
  throw Error(ErrorKind::TailTooFat, "no cut-off up to s + 64 meets the tail bound");
}

MarchenkoSolution solve_marchenko(const MatrixKernel& F, int n, const DressingGrid& grid) {
  validate(grid);
  MarchenkoSolution sol;
  sol.tail = tail_estimate(F, grid.s, grid.s_max);
  if (sol.tail > kTailBound) {
    std::ostringstream os;
    os << "kernel magnitude " << sol.tail << " beyond s_max = " << grid.s_max << " exceeds " << kTailBound;
    throw Error(ErrorKind::TailTooFat, os.str());
  }
  const int N = grid.nodes;
  sol.quadrature = make_quadrature(grid.s, grid.s_max, N, grid.rule);
  const auto& q = sol.quadrature.nodes;
  const auto& w = sol.quadrature.weights;

  std::vector<Eigen::MatrixXd> Fqq(static_cast<std::size_t>(N) * N);
  std::vector<Eigen::MatrixXd> Fs(N), Fqs(N);
  for (int j = 0; j < N; ++j) {
    Fs[j] = F(grid.s, q(j));
    Fqs[j] = F(q(j), grid.s);
    for (int m = 0; m < N; ++m) Fqq[static_cast<std::size_t>(j) * N + m] = F(q(j), q(m));
  }
  sol.F_norm = 0.0;
  for (const auto& M : Fqq) sol.F_norm = std::max(sol.F_norm, M.cwiseAbs().maxCoeff());
  for (const auto& M : Fs) sol.F_norm = std::max(sol.F_norm, M.cwiseAbs().maxCoeff());

  // Row a of K(s, .) as a row vector x indexed by (j, b): x (I - M) = f.
  const int dim = n * N;
  Eigen::MatrixXd A = Eigen::MatrixXd::Identity(dim, dim);
  for (int j = 0; j < N; ++j) {
    for (int m = 0; m < N; ++m) {
      A.block(j * n, m * n, n, n) -= w(j) * Fqq[static_cast<std::size_t>(j) * N + m];
    }
  }
  Eigen::MatrixXd rhs(dim, n);
  for (int m = 0; m < N; ++m) rhs.block(m * n, 0, n, n) = Fs[m].transpose();

  Eigen::PartialPivLU<Eigen::MatrixXd> lu(A.transpose());
  sol.rcond = lu.rcond();
  if (!(sol.rcond > 1e-12)) {
    std::ostringstream os;
    os << "discretized operator is singular (rcond " << sol.rcond << ")";
    throw Error(ErrorKind::SingularFredholm, os.str());
  }
  const Eigen::MatrixXd X = lu.solve(rhs);  // column a is row a of K

  sol.K.resize(N);
  for (int j = 0; j < N; ++j) sol.K[j] = X.block(j * n, 0, n, n).transpose();

  sol.residual = 0.0;
  for (int m = 0; m < N; ++m) {
    Eigen::MatrixXd R = sol.K[m] - Fs[m];
    for (int j = 0; j < N; ++j) R -= w(j) * sol.K[j] * Fqq[static_cast<std::size_t>(j) * N + m];
    sol.residual = std::max(sol.residual, R.cwiseAbs().maxCoeff());
  }
  sol.K_ss = F(grid.s, grid.s);
  for (int j = 0; j < N; ++j) sol.K_ss += w(j) * sol.K[j] * Fqs[j];
  return sol;
}

MarchenkoSolution solve_marchenko(const KernelSpec& spec, const Eigen::VectorXd& u, const DressingGrid& grid,
                                  FConvention conv) {
  validate(spec);
  require(u.size() == spec.n, "u has the wrong dimension");
  return solve_marchenko([&](double a, double b) { return build_F(spec, u, a, b, conv); }, spec.n, grid);
}

Eigen::MatrixXd rotation_from_dressing(const KernelSpec& spec, const Eigen::VectorXd& u, const DressingGrid& grid,
                                       FConvention conv) {
  Eigen::MatrixXd beta = solve_marchenko(spec, u, grid, conv).K_ss.transpose();
  beta.diagonal().setZero();
  return beta;
}

BetaResiduals check_beta_systems(const BetaField& beta, const Eigen::VectorXd& u, const FDConfig& fd) {
  validate(fd);
  const int n = static_cast<int>(u.size());
  auto field = [&](const std::vector<int>& o) -> Eigen::MatrixXd {
    Eigen::VectorXd v = u;
    for (int i = 0; i < n; ++i) v(i) += fd.h * o[i];
    return beta(v);
  };
  const std::vector<int> origin(n, 0);
  const Eigen::MatrixXd B = beta(u);
  std::vector<Eigen::MatrixXd> dB(n);
  for (int k = 0; k < n; ++k) dB[k] = fd::d1(field, origin, k, fd.h, fd.order);

  BetaResiduals r;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        if (i == j || j == k || i == k) continue;
        const double t0 = dB[k](i, j), t1 = B(i, k) * B(k, j);
        r.triple.push_back({{i, j, k}, std::abs(t0 - t1), std::max(std::abs(t0), std::abs(t1))});
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      double sum = dB[i](i, j) + dB[j](j, i), big = std::max(std::abs(dB[i](i, j)), std::abs(dB[j](j, i)));
      for (int k = 0; k < n; ++k) {
        if (k == i || k == j) continue;
        sum += B(k, i) * B(k, j);
        big = std::max(big, std::abs(B(k, i) * B(k, j)));
      }
      r.pair.push_back({{i, j, -1}, std::abs(sum), big});
    }
  }
  return r;
}

std::vector<int> unflatten(int index, const std::vector<Eigen::VectorXd>& axes) {
  std::vector<int> idx(axes.size());
  for (std::size_t a = 0; a < axes.size(); ++a) {
    const int m = static_cast<int>(axes[a].size());
    idx[a] = index % m;
    index /= m;
  }
  return idx;
}

LameReconstruction lame_from_rotation(const BetaField& beta, const std::vector<std::function<double(double)>>& cauchy,
                                      const std::vector<AxisGrid>& grid, double compat_tol) {
  const int n = static_cast<int>(grid.size());
  require(n >= 1 && static_cast<int>(cauchy.size()) == n, "one axis grid and one Cauchy function per variable");
  LameReconstruction rec;
  std::vector<int> zero(n), stride(n);
  std::vector<double> step(n);
  int total = 1;
  for (int a = 0; a < n; ++a) {
    const auto& g = grid[a];
    require(g.count >= 4 && g.hi > g.lo, "each axis needs at least 4 nodes on a non-empty interval");
    rec.axes.push_back(Eigen::VectorXd::LinSpaced(g.count, g.lo, g.hi));
    step[a] = (g.hi - g.lo) / (g.count - 1);
    zero[a] = -1;
    for (int k = 0; k < g.count; ++k) {
      if (std::abs(rec.axes[a](k)) <= 1e-12 * (1.0 + std::abs(g.lo) + std::abs(g.hi))) {
        zero[a] = k;
        rec.axes[a](k) = 0.0;
      }
    }
    require(zero[a] >= 0, "each axis grid must contain 0");
    stride[a] = total;
    total *= g.count;
  }

  auto point = [&](const std::vector<int>& idx) {
    Eigen::VectorXd u(n);
    for (int a = 0; a < n; ++a) u(a) = rec.axes[a](idx[a]);
    return u;
  };
  auto flat = [&](const std::vector<int>& idx) {
    int f = 0;
    for (int a = 0; a < n; ++a) f += idx[a] * stride[a];
    return f;
  };

  // Compatibility gate at the origin and at the far corner.
  {
    std::vector<int> corner(n);
    for (int a = 0; a < n; ++a) corner[a] = grid[a].count - 1;
    for (const auto& idx : {std::vector<int>(zero), corner}) {
      const auto r = check_beta_systems(beta, point(idx), FDConfig{1e-3, 4});
      rec.compatibility = std::max(rec.compatibility, max_residual(r.triple));
    }
    if (rec.compatibility > compat_tol) {
      std::ostringstream os;
      os << "rotation field violates the compatibility equations (residual " << rec.compatibility << ")";
      throw Error(ErrorKind::IncompatibleField, os.str());
    }
  }

  std::vector<Eigen::MatrixXd> B(total);
  for (int p = 0; p < total; ++p) B[p] = beta(point(unflatten(p, rec.axes)));

  auto integrate = [&](bool ascending, int& iterations) {
    Eigen::MatrixXd H(total, n);
    for (int p = 0; p < total; ++p) {
      const auto idx = unflatten(p, rec.axes);
      for (int j = 0; j < n; ++j) H(p, j) = cauchy[j](rec.axes[j](idx[j]));
    }
    Eigen::MatrixXd next(total, n);
    for (iterations = 1; iterations <= 1000; ++iterations) {
      for (int p = 0; p < total; ++p) {
        const auto idx = unflatten(p, rec.axes);
        for (int j = 0; j < n; ++j) {
          double value = cauchy[j](rec.axes[j](idx[j]));
          std::vector<int> cur(zero);
          cur[j] = idx[j];
          for (int step_k = 0; step_k < n; ++step_k) {
            const int k = ascending ? step_k : n - 1 - step_k;
            if (k == j) continue;
            Eigen::VectorXd f(grid[k].count);
            std::vector<int> line(cur);
            for (int t = 0; t < grid[k].count; ++t) {
              line[k] = t;
              const int q = flat(line);
              f(t) = B[q](k, j) * H(q, k);
            }
            value += line_integral(f, zero[k], idx[k], step[k]);
            cur[k] = idx[k];
          }
          next(p, j) = value;
        }
      }
      const double change = (next - H).cwiseAbs().maxCoeff();
      H = next;
      if (change <= 1e-14 * (1.0 + H.cwiseAbs().maxCoeff())) return H;
    }
    throw Error(ErrorKind::NonConvergence, "Picard iteration for the Lame coefficients did not converge");
  };

  int it_desc = 0;
  rec.H = integrate(true, rec.iterations);
  const Eigen::MatrixXd Hd = integrate(false, it_desc);
  rec.path_spread = (rec.H - Hd).cwiseAbs().maxCoeff();
  return rec;
}

}  // namespace spectral
