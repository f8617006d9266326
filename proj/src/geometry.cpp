#include "spectral/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "spectral/baker.hpp"

namespace spectral {

namespace {

using Offset = LatticeProbe::Offset;

void push(ResidualFamily& fam, std::array<int, 3> idx, double residual, std::initializer_list<double> terms) {
  double scale = 0.0;
  for (double t : terms) scale = std::max(scale, std::abs(t));
  fam.push_back({idx, std::abs(residual), scale});
}

}  // namespace

void validate(const FDConfig& fd) {
  if (!(fd.h >= 1e-8 && fd.h <= 1e-1)) throw Error(ErrorKind::InvalidData, "finite-difference step outside [1e-8, 1e-1]");
  if (fd.order != 2 && fd.order != 4) throw Error(ErrorKind::InvalidData, "finite-difference order must be 2 or 4");
}

LatticeProbe::LatticeProbe(CoordinateFunction map, Eigen::VectorXd u0, FDConfig fd, Eigen::VectorXd eta)
    : map_(std::move(map)), u0_(std::move(u0)), fd_(fd), eta_(std::move(eta)) {
  validate(fd_);
  if (eta_.size() == 0) eta_ = Eigen::VectorXd::Ones(u0_.size());
}

const Eigen::VectorXd& LatticeProbe::x(const Offset& o) {
  auto it = x_.find(o);
  if (it != x_.end()) return it->second;
  Eigen::VectorXd u = u0_;
  for (int i = 0; i < dim(); ++i) u(i) += fd_.h * o[i];
  Eigen::VectorXcd val;
  try {
    val = map_(u);
  } catch (const Error& e) {
    throw Error(ErrorKind::StencilFailure, std::string("coordinate evaluation failed on the stencil: ") + e.what());
  }
  max_imag_ = std::max(max_imag_, val.imag().cwiseAbs().maxCoeff());
  return x_.emplace(o, val.real()).first->second;
}

Eigen::MatrixXd LatticeProbe::jacobian(const Offset& o) {
  const int n = dim();
  Eigen::MatrixXd J(x(o).size(), n);
  for (int i = 0; i < n; ++i) {
    J.col(i) = d1([&](const Offset& p) -> Eigen::VectorXd { return x(p); }, o, i);
  }
  return J;
}

const Eigen::VectorXd& LatticeProbe::lame(const Offset& o) {
  auto it = lame_.find(o);
  if (it != lame_.end()) return it->second;
  const Eigen::MatrixXd J = jacobian(o);
  Eigen::VectorXd H(dim());
  for (int i = 0; i < dim(); ++i) {
    const double g = (eta_.asDiagonal() * J.col(i)).dot(J.col(i));
    if (!(g > 0.0)) throw Error(ErrorKind::NonPositiveDiagonal, "metric diagonal entry is not positive");
    H(i) = std::sqrt(g);
  }
  return lame_.emplace(o, H).first->second;
}

const Eigen::MatrixXd& LatticeProbe::lame_gradient(const Offset& o) {
  auto it = grad_.find(o);
  if (it != grad_.end()) return it->second;
  const int n = dim();
  Eigen::MatrixXd G(n, n);
  for (int j = 0; j < n; ++j) {
    G.col(j) = d1([&](const Offset& p) -> Eigen::VectorXd { return lame(p); }, o, j);
  }
  return grad_.emplace(o, G).first->second;
}

Eigen::MatrixXd LatticeProbe::rotation(const Offset& o) {
  const int n = dim();
  const Eigen::VectorXd& H = lame(o);
  const Eigen::MatrixXd& G = lame_gradient(o);
  Eigen::MatrixXd B = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i != j) B(i, j) = G(j, i) / H(i);
    }
  }
  return B;
}

Eigen::VectorXd LatticeProbe::christoffel(const Offset& o) {
  const int n = dim();
  const Eigen::VectorXd& H = lame(o);
  const Eigen::MatrixXd& G = lame_gradient(o);
  Eigen::VectorXd gamma = Eigen::VectorXd::Zero(n * n * n);
  auto at = [n](int l, int i, int j) { return l * n * n + i * n + j; };
  for (int k = 0; k < n; ++k) {
    for (int j = 0; j < n; ++j) {
      gamma(at(k, k, j)) = G(k, j) / H(k);
      gamma(at(k, j, k)) = G(k, j) / H(k);
    }
    for (int i = 0; i < n; ++i) {
      if (i != k) gamma(at(k, i, i)) = -H(i) * G(i, k) / (H(k) * H(k));
    }
  }
  return gamma;
}

double max_residual(const ResidualFamily& family) noexcept {
  double m = 0.0;
  for (const auto& e : family) m = std::max(m, e.residual);
  return m;
}

double max_relative_residual(const ResidualFamily& family) noexcept {
  double m = 0.0;
  for (const auto& e : family) m = std::max(m, e.residual / (1.0 + e.scale));
  return m;
}

bool within(const ResidualFamily& family, double tol) noexcept {
  return std::all_of(family.begin(), family.end(),
                     [tol](const ResidualEntry& e) { return e.residual <= tol * (1.0 + e.scale); });
}

Eigen::MatrixXd jacobian(const CoordinateFunction& map, const Eigen::VectorXd& u, const FDConfig& fd) {
  LatticeProbe probe(map, u, fd);
  return probe.jacobian(probe.origin());
}

Eigen::MatrixXd metric(const CoordinateFunction& map, const Eigen::VectorXd& u, const FDConfig& fd,
                       const Eigen::VectorXd& eta) {
  const Eigen::MatrixXd J = jacobian(map, u, fd);
  const Eigen::VectorXd w = eta.size() ? eta : Eigen::VectorXd::Ones(J.rows());
  return J.transpose() * w.asDiagonal() * J;
}

Eigen::VectorXd lame(const Eigen::MatrixXd& g) {
  Eigen::VectorXd H(g.rows());
  for (Eigen::Index i = 0; i < g.rows(); ++i) {
    if (!(g(i, i) > 0.0)) throw Error(ErrorKind::NonPositiveDiagonal, "metric diagonal entry is not positive");
    H(i) = std::sqrt(g(i, i));
  }
  return H;
}

Eigen::MatrixXd rotation(const CoordinateFunction& map, const Eigen::VectorXd& u, const FDConfig& fd) {
  LatticeProbe probe(map, u, fd);
  return probe.rotation(probe.origin());
}

SystemResiduals check_systems(LatticeProbe& probe) {
  const int n = probe.dim();
  const Offset o = probe.origin();
  const Eigen::VectorXd H = probe.lame(o);
  const Eigen::MatrixXd G = probe.lame_gradient(o);
  const Eigen::MatrixXd B = probe.rotation(o);
  SystemResiduals r;

  // d_b B evaluated once per axis.
  std::vector<Eigen::MatrixXd> dB(n), dG(n);
  for (int k = 0; k < n; ++k) {
    dB[k] = probe.d1([&](const Offset& p) -> Eigen::MatrixXd { return probe.rotation(p); }, o, k);
    dG[k] = probe.d1([&](const Offset& p) -> Eigen::MatrixXd { return probe.lame_gradient(p); }, o, k);
  }

  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = j + 1; k < n; ++k) {
        if (i == j || i == k) continue;
        const double t0 = dG[j](i, k);  // d_j d_k H_i
        const double t1 = G(j, k) / H(j) * G(i, j);
        const double t2 = G(k, j) / H(k) * G(i, k);
        push(r.lame_mixed, {i, j, k}, t0 - t1 - t2, {t0, t1, t2});
      }
    }
  }

  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      auto quotient = [&](int a, int b) {
        // d_b of (d_b H_a / H_b)
        return probe.d1([&](const Offset& p) { return probe.lame_gradient(p)(a, b) / probe.lame(p)(b); }, o, b);
      };
      const double t0 = quotient(i, j);
      const double t1 = quotient(j, i);
      double t2 = 0.0, big = 0.0;
      for (int k = 0; k < n; ++k) {
        if (k == i || k == j) continue;
        const double term = G(i, k) * G(j, k) / (H(k) * H(k));
        t2 += term;
        big = std::max(big, std::abs(term));
      }
      push(r.lame_pair, {i, j, -1}, t0 + t1 + t2, {t0, t1, big});
    }
  }

  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        if (i == j || j == k || i == k) continue;
        const double t0 = dB[k](i, j);
        const double t1 = B(i, k) * B(k, j);
        push(r.rotation_triple, {i, j, k}, t0 - t1, {t0, t1});
      }
    }
  }

  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double t0 = dB[i](i, j);
      const double t1 = dB[j](j, i);
      double t2 = 0.0, big = 0.0;
      for (int k = 0; k < n; ++k) {
        if (k == i || k == j) continue;
        t2 += B(k, i) * B(k, j);
        big = std::max(big, std::abs(B(k, i) * B(k, j)));
      }
      push(r.rotation_pair, {i, j, -1}, t0 + t1 + t2, {t0, t1, big});
    }
  }
  return r;
}

SystemResiduals check_systems(const CoordinateFunction& map, const Eigen::VectorXd& u, const FDConfig& fd) {
  LatticeProbe probe(map, u, fd);
  return check_systems(probe);
}

CurvatureResult christoffel_and_riemann(LatticeProbe& probe) {
  const int n = probe.dim();
  const Offset o = probe.origin();
  CurvatureResult res;
  res.christoffel = probe.christoffel(o);

  // Lowered tensor from second derivatives of the full metric.
  auto gfield = [&](const Offset& p) -> Eigen::VectorXd {
    const Eigen::MatrixXd J = probe.jacobian(p);
    const Eigen::MatrixXd g = J.transpose() * probe.eta().asDiagonal() * J;
    return g.reshaped();
  };
  auto G = [n](const Eigen::VectorXd& v, int a, int b) { return v(b * n + a); };
  const Eigen::VectorXd g0 = gfield(o);
  const Eigen::MatrixXd ginv = g0.reshaped(n, n).inverse();
  std::vector<Eigen::VectorXd> dg(n);
  std::vector<std::vector<Eigen::VectorXd>> ddg(n, std::vector<Eigen::VectorXd>(n));
  for (int a = 0; a < n; ++a) dg[a] = probe.d1(gfield, o, a);
  for (int a = 0; a < n; ++a) {
    ddg[a][a] = probe.d2(gfield, o, a);
    for (int b = a + 1; b < n; ++b) {
      ddg[a][b] = probe.d1([&](const Offset& p) -> Eigen::VectorXd { return probe.d1(gfield, p, a); }, o, b);
      ddg[b][a] = ddg[a][b];
    }
  }
  // Gamma_{e,bc} = (d_b g_ec + d_c g_eb - d_e g_bc) / 2
  auto low = [&](int e, int b, int c) { return 0.5 * (G(dg[b], e, c) + G(dg[c], e, b) - G(dg[e], b, c)); };

  for (int l = 0; l < n; ++l) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        for (int k = j + 1; k < n; ++k) {
          // R_lijk with the convention R^l_ijk = d_j Gamma^l_ik - d_k Gamma^l_ij + ...
          const double t1 = 0.5 * G(ddg[i][j], l, k), t2 = 0.5 * G(ddg[l][k], i, j);
          const double t3 = 0.5 * G(ddg[i][k], l, j), t4 = 0.5 * G(ddg[l][j], i, k);
          double quad = 0.0, big = 0.0;
          for (int e = 0; e < n; ++e) {
            for (int f = 0; f < n; ++f) {
              const double q1 = low(e, l, k) * ginv(e, f) * low(f, i, j);
              const double q2 = low(e, l, j) * ginv(e, f) * low(f, i, k);
              quad += q1 - q2;
              big = std::max({big, std::abs(q1), std::abs(q2)});
            }
          }
          const double value = t1 + t2 - t3 - t4 + quad;
          push(res.riemann, {l * n + i, j, k}, value, {t1, t2, t3, t4, big});
          res.riemann_max = std::max(res.riemann_max, std::abs(value));
        }
      }
    }
  }
  return res;
}

CurvatureResult christoffel_and_riemann(const CoordinateFunction& map, const Eigen::VectorXd& u, const FDConfig& fd) {
  LatticeProbe probe(map, u, fd);
  return christoffel_and_riemann(probe);
}

ResidualFamily check_immersion(LatticeProbe& probe) {
  const int n = probe.dim();
  const Offset o = probe.origin();
  const Eigen::MatrixXd J = probe.jacobian(o);
  const Eigen::VectorXd gam = probe.christoffel(o);
  auto at = [n](int l, int i, int j) { return l * n * n + i * n + j; };
  auto xf = [&](const Offset& p) -> Eigen::VectorXd { return probe.x(p); };
  ResidualFamily fam;
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      Eigen::VectorXd second;
      if (i == j) {
        second = probe.d2(xf, o, i);
      } else {
        second = probe.d1([&](const Offset& p) -> Eigen::VectorXd { return probe.d1(xf, p, i); }, o, j);
      }
      for (int k = 0; k < J.rows(); ++k) {
        double rhs = 0.0, big = 0.0;
        for (int l = 0; l < n; ++l) {
          const double t = gam(at(l, i, j)) * J(k, l);
          rhs += t;
          big = std::max(big, std::abs(t));
        }
        push(fam, {i, j, k}, second(k) - rhs, {second(k), big});
      }
    }
  }
  return fam;
}

ResidualFamily check_immersion(const CoordinateFunction& map, const Eigen::VectorXd& u, const FDConfig& fd) {
  LatticeProbe probe(map, u, fd);
  return check_immersion(probe);
}

CoordinateFunction make_coordinate_function(const SpectralData& data) {
  return [data](const Eigen::VectorXd& u) { return coordinate_map(data, u); };
}

EpsilonReport epsilon_invariant(const SpectralData& data, const std::vector<Eigen::VectorXd>& samples,
                                const FDConfig& fd) {
  EpsilonReport rep;
  rep.eta0_sq = check_Q_residues(data, 1e-8);
  const int n = data.n;
  rep.ratios.resize(static_cast<Eigen::Index>(samples.size()), n);
  const auto map = make_coordinate_function(data);
  for (std::size_t s = 0; s < samples.size(); ++s) {
    const Eigen::MatrixXd g = metric(map, samples[s], fd, Eigen::VectorXd::Ones(n));
    const Eigen::VectorXcd h = h_values(data, solve_coefficients(data, samples[s]));
    for (int i = 0; i < n; ++i) {
      rep.ratios(static_cast<Eigen::Index>(s), i) = rep.eta0_sq * g(i, i) / (h(i) * h(i));
    }
  }
  rep.mean = rep.ratios.colwise().mean().transpose();
  rep.spread = Eigen::VectorXd::Zero(n);
  for (int i = 0; i < n; ++i) {
    for (Eigen::Index s = 0; s < rep.ratios.rows(); ++s) {
      rep.spread(i) = std::max(rep.spread(i), std::abs(rep.ratios(s, i) - rep.mean(i)) / std::abs(rep.mean(i)));
    }
  }
  return rep;
}

GeometryReport analyze(const CoordinateFunction& map, const Eigen::VectorXd& u, const AnalyzeOptions& opts) {
  GeometryReport r;
  r.u = u;
  r.x = map(u);
  r.max_imag = r.x.imag().cwiseAbs().maxCoeff();
  const Eigen::VectorXd eta = opts.eta.size() ? opts.eta : Eigen::VectorXd::Ones(r.x.size());

  LatticeProbe first(map, u, opts.first, eta);
  const Eigen::MatrixXd J = first.jacobian(first.origin());
  r.g = J.transpose() * eta.asDiagonal() * J;
  r.g_norm = r.g.norm();
  for (Eigen::Index i = 0; i < r.g.rows(); ++i) {
    for (Eigen::Index j = 0; j < r.g.cols(); ++j) {
      if (i != j) r.g_offdiag_max = std::max(r.g_offdiag_max, std::abs(r.g(i, j)));
    }
  }
  r.orthogonal = r.g_offdiag_max <= opts.orthogonality_tol * (1.0 + r.g_norm);
  r.H = lame(r.g);

  LatticeProbe second(map, u, opts.second, eta);
  r.beta = second.rotation(second.origin());
  r.systems = check_systems(second);
  r.curvature = christoffel_and_riemann(second);
  r.immersion = check_immersion(second);
  r.max_imag = std::max({r.max_imag, first.max_imag(), second.max_imag()});
  return r;
}

}  // namespace spectral
