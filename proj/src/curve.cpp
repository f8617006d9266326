#include "spectral/curve.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

namespace spectral {

namespace {

std::string describe(const CurvePoint& p) {
  std::ostringstream os;
  os << "component " << p.component << " at ";
  if (p.point.is_infinite()) {
    os << "inf";
  } else {
    os << "(" << p.point.value().real() << ", " << p.point.value().imag() << ")";
  }
  return os.str();
}

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorKind::InvalidData, what);
}

void check_component(const SpectralData& d, const CurvePoint& p, const char* what) {
  require(p.component >= 0 && p.component < d.components,
          std::string(what) + ": component index out of range");
}

void check_regular_point(const SpectralData& d, const CurvePoint& p, const char* what) {
  check_component(d, p, what);
  const auto& a = d.ansatz[p.component];
  require(!is_phase_pole(a, p.point), std::string(what) + " at a phase pole: " + describe(p));
  require(!is_ansatz_pole(a, p.point), std::string(what) + " at an ansatz pole: " + describe(p));
}

// Multiset of points with multiplicities, merged at a tolerance.
struct PointMultiset {
  double tol;
  std::vector<std::pair<PointOnP1, int>> items;

  void add(const PointOnP1& p, int mult) {
    for (auto& [q, m] : items) {
      if (q.same_as(p, tol)) {
        m += mult;
        return;
      }
    }
    items.emplace_back(p, mult);
  }

  bool equals(const PointMultiset& other) const {
    auto covered = [](const PointMultiset& a, const PointMultiset& b) {
      for (const auto& [p, m] : a.items) {
        if (m == 0) continue;
        bool found = false;
        for (const auto& [q, k] : b.items) {
          if (q.same_as(p, a.tol) && k == m) found = true;
        }
        if (!found) return false;
      }
      return true;
    };
    return covered(*this, other) && covered(other, *this);
  }
};

std::string describe(const PointMultiset& s) {
  std::ostringstream os;
  os << "{";
  for (const auto& [p, m] : s.items) {
    if (m == 0) continue;
    os << " ";
    if (p.is_infinite()) {
      os << "inf";
    } else {
      os << "(" << p.value().real() << "," << p.value().imag() << ")";
    }
    os << "^" << m;
  }
  os << " }";
  return os.str();
}

}  // namespace

Moebius::Moebius(Complex a, Complex b, Complex c, Complex d) : a_(a), b_(b), c_(c), d_(d) {
  const Complex det = a * d - b * c;
  if (std::abs(det) <= 1e-14 * (std::abs(a * d) + std::abs(b * c))) {
    throw Error(ErrorKind::InvalidData, "Moebius map with ad - bc = 0");
  }
}

PointOnP1 Moebius::operator()(const PointOnP1& z) const noexcept {
  if (z.is_infinite()) {
    if (c_ == Complex{0.0, 0.0}) return PointOnP1::infinity();
    return a_ / c_;
  }
  const Complex den = c_ * z.value() + d_;
  if (std::abs(den) <= 1e-300) return PointOnP1::infinity();
  return (a_ * z.value() + b_) / den;
}

CurvePoint InvolutionSpec::operator()(const CurvePoint& p) const {
  return {component_perm.at(p.component), moebius.at(p.component)(p.point)};
}

bool same_curve_point(const CurvePoint& a, const CurvePoint& b, double tol) noexcept {
  return a.component == b.component && a.point.same_as(b.point, tol);
}

bool is_phase_pole(const ComponentAnsatz& ansatz, const PointOnP1& p) noexcept {
  return std::any_of(ansatz.essential.begin(), ansatz.essential.end(),
                     [&](const EssentialTerm& t) { return order_at(t.phase, p) < 0; });
}

bool is_ansatz_pole(const ComponentAnsatz& ansatz, const PointOnP1& p) noexcept {
  if (p.is_infinite()) return false;
  return std::any_of(ansatz.poles.begin(), ansatz.poles.end(),
                     [&](Complex a) { return same_point(a, p.value()); });
}

void validate_structure(const SpectralData& d) {
  require(d.n >= 1, "n must be at least 1");
  require(d.components >= 1, "at least one component required");
  require(static_cast<int>(d.ansatz.size()) == d.components, "one ansatz per component required");
  require(d.omega.empty() || static_cast<int>(d.omega.size()) == d.components,
          "omega must be given on every component");

  std::vector<bool> seen(d.n, false);
  for (int c = 0; c < d.components; ++c) {
    const auto& a = d.ansatz[c];
    for (const auto& t : a.essential) {
      require(t.var >= 1 && t.var <= d.n, "essential term variable out of range");
      require(!t.phase.is_constant(), "essential phase must be non-constant");
      seen[t.var - 1] = true;
    }
    for (std::size_t i = 0; i < a.poles.size(); ++i) {
      for (std::size_t j = i + 1; j < a.poles.size(); ++j) {
        require(!same_point(a.poles[i], a.poles[j]), "repeated ansatz pole");
      }
      require(!is_phase_pole(a, a.poles[i]), "ansatz pole coincides with a phase pole");
    }
  }
  for (int v = 0; v < d.n; ++v) {
    require(seen[v], "variable u^" + std::to_string(v + 1) + " has no essential term");
  }

  for (const auto& g : d.gluings) {
    require(g.points.size() >= 2, "gluing needs at least two points");
    for (std::size_t i = 0; i < g.points.size(); ++i) {
      check_regular_point(d, g.points[i], "gluing point");
      for (std::size_t j = i + 1; j < g.points.size(); ++j) {
        require(!same_curve_point(g.points[i], g.points[j]), "repeated point in a gluing");
      }
    }
  }

  double norm2 = 0.0;
  for (const auto& nm : d.normalizations) {
    check_regular_point(d, nm.point, "normalization point");
    norm2 += std::norm(nm.value);
  }
  require(norm2 > 0.0, "normalization values must not all vanish");

  require(static_cast<int>(d.Q.size()) == d.n, "exactly n Q points required");
  for (const auto& q : d.Q) check_regular_point(d, q, "Q point");

  require(static_cast<int>(d.P.size()) == d.n, "exactly n P markers required");
  for (int i = 0; i < d.n; ++i) {
    const auto& p = d.P[i];
    check_component(d, p, "P marker");
    const auto& terms = d.ansatz[p.component].essential;
    const bool ok = std::any_of(terms.begin(), terms.end(), [&](const EssentialTerm& t) {
      return t.var == i + 1 && order_at(t.phase, p.point) < 0;
    });
    require(ok, "P marker " + std::to_string(i + 1) + " is not a pole of a u^" + std::to_string(i + 1) +
                    " phase");
  }

  if (d.sigma) {
    require(static_cast<int>(d.sigma->component_perm.size()) == d.components,
            "sigma permutation has wrong length");
    require(static_cast<int>(d.sigma->moebius.size()) == d.components, "sigma needs one map per component");
    for (int c : d.sigma->component_perm) require(c >= 0 && c < d.components, "sigma permutation out of range");
  }
}

std::vector<int> connected_component_labels(const SpectralData& d) {
  std::vector<int> parent(d.components);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& g : d.gluings) {
    for (std::size_t k = 1; k < g.points.size(); ++k) {
      parent[find(g.points[k].component)] = find(g.points[0].component);
    }
  }
  std::vector<int> label(d.components);
  for (int c = 0; c < d.components; ++c) label[c] = find(c);
  return label;
}

int nodal_genus_sum(const SpectralData& d) {
  int s = 0;
  for (const auto& g : d.gluings) s += static_cast<int>(g.points.size()) - 1;
  return s;
}

int arithmetic_genus(const SpectralData& d) {
  const auto label = connected_component_labels(d);
  std::vector<int> roots(label);
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return nodal_genus_sum(d) - d.components + static_cast<int>(roots.size());
}

CountingReport validate_counting(const SpectralData& d) {
  CountingReport r;
  for (const auto& a : d.ansatz) {
    r.unknowns += 1 + static_cast<int>(a.poles.size());
    r.degree_D += static_cast<int>(a.poles.size());
  }
  r.nodal_sum = nodal_genus_sum(d);
  r.l = static_cast<int>(d.normalizations.size());
  r.equations = r.nodal_sum + r.l;
  r.arithmetic_genus = arithmetic_genus(d);

  for (std::size_t i = 0; i < d.normalizations.size(); ++i) {
    for (std::size_t j = i + 1; j < d.normalizations.size(); ++j) {
      if (same_curve_point(d.normalizations[i].point, d.normalizations[j].point)) {
        r.duplicate_normalizations.emplace_back(static_cast<int>(i), static_cast<int>(j));
        r.warnings.push_back("normalizations " + std::to_string(i) + " and " + std::to_string(j) +
                             " share the point " + describe(d.normalizations[i].point));
      }
    }
  }

  const auto label = connected_component_labels(d);
  std::vector<int> roots(label);
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  r.connected_components = static_cast<int>(roots.size());
  for (int root : roots) {
    int s = 0, deg = 0, nodes = 0, l = 0;
    for (int c = 0; c < d.components; ++c) {
      if (label[c] != root) continue;
      ++s;
      deg += static_cast<int>(d.ansatz[c].poles.size());
    }
    for (const auto& g : d.gluings) {
      if (label[g.points[0].component] == root) nodes += static_cast<int>(g.points.size()) - 1;
    }
    for (const auto& nm : d.normalizations) {
      if (label[nm.point.component] == root) ++l;
    }
    const int pa = nodes - s + 1;
    if (deg != pa + l - 1) {
      r.warnings.push_back("connected part containing component " + std::to_string(root) + ": deg D = " +
                           std::to_string(deg) + " but p_a + l - 1 = " + std::to_string(pa + l - 1));
    }
  }

  if (r.unknowns != r.equations) {
    throw Error(ErrorKind::CountMismatch, std::to_string(r.unknowns) + " unknowns against " +
                                              std::to_string(r.equations) + " equations");
  }
  return r;
}

RegularityReport check_regular(const SpectralData& d, double tol) {
  if (d.omega.empty()) throw Error(ErrorKind::InvalidData, "no differential given");
  RegularityReport r;
  for (std::size_t g = 0; g < d.gluings.size(); ++g) {
    Complex sum{0.0, 0.0};
    for (const auto& p : d.gluings[g].points) sum += residue(d.omega[p.component], p.point);
    r.residue_sums.push_back(sum);
    if (std::abs(sum) > r.max_abs) {
      r.max_abs = std::abs(sum);
      r.worst = static_cast<int>(g);
    }
  }
  r.pass = r.max_abs <= tol;
  return r;
}

double check_Q_residues(const SpectralData& d, double tol) {
  if (d.omega.empty()) throw Error(ErrorKind::InvalidData, "no differential given");
  std::vector<Complex> res;
  for (const auto& q : d.Q) res.push_back(residue(d.omega[q.component], q.point));
  for (std::size_t i = 1; i < res.size(); ++i) {
    if (std::abs(res[i] - res[0]) > tol * (1.0 + std::abs(res[0]))) {
      std::ostringstream os;
      os << "residue at Q_" << i + 1 << " is (" << res[i].real() << ", " << res[i].imag()
         << "), at Q_1 it is (" << res[0].real() << ", " << res[0].imag() << ")";
      throw Error(ErrorKind::Mismatch, os.str());
    }
  }
  Complex mean{0.0, 0.0};
  for (auto v : res) mean += v;
  mean /= static_cast<double>(res.size());
  if (std::abs(mean.imag()) > tol || !(mean.real() > 0.0)) {
    std::ostringstream os;
    os << "common Q residue (" << mean.real() << ", " << mean.imag() << ") is not positive";
    throw Error(ErrorKind::NonPositive, os.str());
  }
  return mean.real();
}

InvolutionReport check_involution(const SpectralData& d, double tol) {
  if (!d.sigma) throw Error(ErrorKind::InvalidData, "no involution given");
  if (d.omega.empty()) throw Error(ErrorKind::InvalidData, "no differential given");
  const auto& s = *d.sigma;
  InvolutionReport rep;

  for (int c = 0; c < d.components; ++c) {
    if (s.component_perm[s.component_perm[c]] != c) {
      throw Error(ErrorKind::NotInvolution, "component permutation is not an involution");
    }
  }

  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> unif(-2.0, 2.0);
  for (int c = 0; c < d.components; ++c) {
    for (int k = 0; k < 20; ++k) {
      const CurvePoint p{c, Complex(unif(rng), unif(rng))};
      const CurvePoint back = s(s(p));
      ++rep.points_checked;
      if (back.component != c || back.point.is_infinite()) {
        throw Error(ErrorKind::NotInvolution, "sigma^2 moves " + describe(p));
      }
      const double err = std::abs(back.point.value() - p.point.value()) / (1.0 + std::abs(p.point.value()));
      rep.max_square_error = std::max(rep.max_square_error, err);
      if (err > tol) throw Error(ErrorKind::NotInvolution, "sigma^2 moves " + describe(p));
    }
  }

  for (int i = 0; i < d.n; ++i) {
    const auto& p = d.P[i];
    if (!same_curve_point(s(p), p, tol)) {
      throw Error(ErrorKind::PNotFixed, "P_" + std::to_string(i + 1) + " is not fixed: " + describe(p));
    }
    for (const auto& t : d.ansatz[p.component].essential) {
      if (t.var != i + 1 || order_at(t.phase, p.point) >= 0) continue;
      const Complex c0 = laurent_constant(t.phase, p.point);
      for (int k = 0; k < 5; ++k) {
        const PointOnP1 z = Complex(unif(rng), unif(rng));
        const PointOnP1 sz = s.moebius[p.component](z);
        try {
          const Complex a = eval(t.phase, z), b = eval(t.phase, sz);
          if (std::abs(a + b - 2.0 * c0) > 1e-8 * (1.0 + std::abs(a) + std::abs(b))) {
            throw Error(ErrorKind::NotInvolution,
                        "phase of u^" + std::to_string(i + 1) + " is not odd under sigma near " + describe(p));
          }
        } catch (const Error& e) {
          if (e.kind() != ErrorKind::PoleEvaluation) throw;
        }
      }
    }
  }

  auto in_list = [&](const std::vector<CurvePoint>& list, const CurvePoint& p) {
    return std::any_of(list.begin(), list.end(), [&](const CurvePoint& q) { return same_curve_point(p, q, tol); });
  };
  for (const auto& q : d.Q) {
    if (!in_list(d.Q, s(q))) throw Error(ErrorKind::NotInvolution, "Q is not sigma-invariant: " + describe(q));
  }
  for (const auto& g : d.gluings) {
    const bool mapped = std::any_of(d.gluings.begin(), d.gluings.end(), [&](const Gluing& h) {
      if (h.points.size() != g.points.size()) return false;
      return std::all_of(g.points.begin(), g.points.end(), [&](const CurvePoint& p) { return in_list(h.points, s(p)); });
    });
    if (!mapped) throw Error(ErrorKind::NotInvolution, "a gluing is not mapped onto a gluing");
  }

  std::vector<PointMultiset> want_zero(d.components, PointMultiset{tol, {}});
  std::vector<PointMultiset> want_pole(d.components, PointMultiset{tol, {}});
  for (int c = 0; c < d.components; ++c) {
    for (Complex a : d.ansatz[c].poles) {
      want_zero[c].add(a, 1);
      const CurvePoint img = s(CurvePoint{c, a});
      want_zero[img.component].add(img.point, 1);
    }
  }
  for (const auto& p : d.P) want_zero[p.component].add(p.point, 1);
  for (const auto& nm : d.normalizations) {
    want_pole[nm.point.component].add(nm.point.point, 1);
    const CurvePoint img = s(nm.point);
    want_pole[img.component].add(img.point, 1);
  }
  for (const auto& q : d.Q) want_pole[q.component].add(q.point, 1);

  for (int c = 0; c < d.components; ++c) {
    PointMultiset zeros{tol, {}}, poles{tol, {}};
    for (const auto& e : divisor(d.omega[c])) {
      bool at_gluing = false;
      for (const auto& g : d.gluings) at_gluing = at_gluing || in_list(g.points, CurvePoint{c, e.point});
      if (at_gluing) {
        if (e.order < -1) {
          throw Error(ErrorKind::DivisorMismatch,
                      "differential has a multiple pole at a gluing point on component " + std::to_string(c));
        }
        if (e.order < 0) continue;
      }
      if (e.order > 0) zeros.add(e.point, e.order);
      if (e.order < 0) poles.add(e.point, -e.order);
    }
    if (!zeros.equals(want_zero[c])) {
      throw Error(ErrorKind::DivisorMismatch, "zeros on component " + std::to_string(c) + " " + describe(zeros) +
                                                  " differ from D + sigma D + P " + describe(want_zero[c]));
    }
    if (!poles.equals(want_pole[c])) {
      throw Error(ErrorKind::DivisorMismatch, "poles on component " + std::to_string(c) + " " + describe(poles) +
                                                  " differ from R + sigma R + Q " + describe(want_pole[c]));
    }
  }
  return rep;
}

}  // namespace spectral
