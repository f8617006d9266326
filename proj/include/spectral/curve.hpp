#ifndef SPECTRAL_CURVE_HPP
#define SPECTRAL_CURVE_HPP

#include <optional>
#include <string>
#include <vector>

#include "spectral/numerics.hpp"

namespace spectral {

struct CurvePoint {
  int component = 0;
  PointOnP1 point;
};

/// exp(u^var * phase) factor; var is 1-based.
struct EssentialTerm {
  int var = 1;
  FactoredRational phase;
};

struct ComponentAnsatz {
  std::vector<EssentialTerm> essential;
  std::vector<Complex> poles;
};

struct Gluing {
  std::vector<CurvePoint> points;
};

struct Normalization {
  CurvePoint point;
  Complex value{1.0, 0.0};
};

/// z -> (a z + b) / (c z + d).
class Moebius {
 public:
  Moebius() = default;
  Moebius(Complex a, Complex b, Complex c, Complex d);

  static Moebius negation() { return Moebius(-1.0, 0.0, 0.0, 1.0); }

  PointOnP1 operator()(const PointOnP1& z) const noexcept;

  Complex a() const noexcept { return a_; }
  Complex b() const noexcept { return b_; }
  Complex c() const noexcept { return c_; }
  Complex d() const noexcept { return d_; }

 private:
  Complex a_{1.0, 0.0}, b_{0.0, 0.0}, c_{0.0, 0.0}, d_{1.0, 0.0};
};

struct InvolutionSpec {
  std::vector<int> component_perm;
  std::vector<Moebius> moebius;

  CurvePoint operator()(const CurvePoint& p) const;
};

struct SpectralData {
  int n = 0;
  int components = 0;
  std::vector<ComponentAnsatz> ansatz;
  std::vector<Gluing> gluings;
  std::vector<Normalization> normalizations;
  std::vector<CurvePoint> Q;
  std::vector<CurvePoint> P;
  std::vector<RationalDifferential> omega;
  std::optional<InvolutionSpec> sigma;
};

bool same_curve_point(const CurvePoint& a, const CurvePoint& b, double tol = kRootTolerance) noexcept;

/// True when some phase of the component blows up at p.
bool is_phase_pole(const ComponentAnsatz& ansatz, const PointOnP1& p) noexcept;
bool is_ansatz_pole(const ComponentAnsatz& ansatz, const PointOnP1& p) noexcept;

/// Index ranges, regularity of gluing/normalization/Q points, P markers. Throws InvalidData.
void validate_structure(const SpectralData& data);

struct CountingReport {
  int unknowns = 0;
  int equations = 0;
  int degree_D = 0;
  int l = 0;
  int nodal_sum = 0;
  int arithmetic_genus = 0;
  int connected_components = 0;
  std::vector<std::pair<int, int>> duplicate_normalizations;
  std::vector<std::string> warnings;
};

/// Throws CountMismatch when the linear system would not be square.
CountingReport validate_counting(const SpectralData& data);

struct RegularityReport {
  std::vector<Complex> residue_sums;  // one per gluing
  double max_abs = 0.0;
  int worst = -1;
  bool pass = true;
};

RegularityReport check_regular(const SpectralData& data, double tol);

/// Common residue of Omega at the Q points. Throws Mismatch or NonPositive.
double check_Q_residues(const SpectralData& data, double tol);

struct InvolutionReport {
  int points_checked = 0;
  double max_square_error = 0.0;
};

/// Throws NotInvolution, PNotFixed or DivisorMismatch.
InvolutionReport check_involution(const SpectralData& data, double tol);

/// Union-find labels of components joined by gluings.
std::vector<int> connected_component_labels(const SpectralData& data);

/// Sum over connected components of (nodes - components + 1).
int arithmetic_genus(const SpectralData& data);
/// Plain sum of (r - 1) over gluings.
int nodal_genus_sum(const SpectralData& data);

}  // namespace spectral

#endif  // SPECTRAL_CURVE_HPP
