#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "spectral/curve.hpp"
#include "spectral/gallery.hpp"

using namespace spectral;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::InvalidData;
}

// Replaces root `from` of the differential on component c by `to`.
void move_root(SpectralData& d, int c, Complex from, Complex to) {
  const auto& f = d.omega[c].coefficient();
  std::vector<FactoredRational::Factor> factors(f.factors().begin(), f.factors().end());
  for (auto& fac : factors) {
    if (same_point(fac.root, from)) fac.root = to;
  }
  d.omega[c] = RationalDifferential(FactoredRational(f.scale(), factors));
}

}  // namespace

TEST_CASE("counting on the single-line configuration") {
  const auto r = validate_counting(euclidean(1).data);
  CHECK(r.unknowns == 1);
  CHECK(r.equations == 1);
  CHECK(r.arithmetic_genus == 0);
  CHECK(r.warnings.empty());
}

TEST_CASE("counting on two lines with two double points") {
  // Oracle: psi1 constant, psi2 constant plus one pole; 2 double points, 1 normalization.
  const auto r = validate_counting(example1(1.0, 2.0).data);
  CHECK(r.unknowns == 3);
  CHECK(r.equations == 3);
  CHECK(r.arithmetic_genus == 1);
  CHECK(r.degree_D == 1);
  CHECK(r.l == 1);
  CHECK(r.warnings.empty());
}

TEST_CASE("counting flags duplicate normalization points and rejects non-square systems") {
  auto d = polar(1.0).data;
  d.normalizations.push_back(d.normalizations.front());
  CHECK(kind_of([&] { validate_counting(d); }) == ErrorKind::CountMismatch);
  d.ansatz[0].poles.push_back(0.37);
  const auto r = validate_counting(d);
  REQUIRE(r.duplicate_normalizations.size() == 1);
  CHECK(r.duplicate_normalizations[0].first == 0);
}

TEST_CASE("regularity of the node residues") {
  const auto e = example1(1.0, 2.0);
  const auto ok = check_regular(e.data, 1e-12);
  CHECK(ok.pass);
  CHECK(ok.max_abs <= 1e-12);

  SUBCASE("a perturbed by 1%") {
    auto d = e.data;
    const Complex a = d.gluings[0].points[0].point.value();
    const Complex ap = 1.01 * a;
    move_root(d, 0, a, ap);
    move_root(d, 0, -a, -ap);
    d.gluings[0].points[0].point = ap;
    d.gluings[1].points[0].point = -ap;
    const auto bad = check_regular(d, 1e-10);
    CHECK_FALSE(bad.pass);
    // Oracle: exact partial-fraction residues, 0.068963827075776884619 at both nodes.
    for (const auto& s : bad.residue_sums) CHECK(std::abs(s - 0.068963827075776884619) < 1e-12);
  }
  SUBCASE("radius 2/3 is not regular") {
    CHECK_FALSE(gallery_entry("example1-decoy").data.gluings.empty());
    CHECK_FALSE(check_regular(gallery_entry("example1-decoy").data, 1e-10).pass);
  }
  SUBCASE("no gluings passes vacuously") {
    const auto r = check_regular(euclidean(1).data, 1e-12);
    CHECK(r.pass);
    CHECK(r.residue_sums.empty());
  }
}

TEST_CASE("Q residues") {
  SUBCASE("two lines: 1/a^2 = c^2/(r^2 b^2)") {
    const auto e = example1(1.0, 2.0);
    const Complex a = e.data.gluings[0].points[0].point.value();
    const double eta = check_Q_residues(e.data, 1e-10);
    CHECK(eta == doctest::Approx(std::real(1.0 / (a * a))).epsilon(1e-12));
    const double r = 1.0 / std::sqrt(2.0 - 0.25);
    CHECK(eta == doctest::Approx(4.0 / (r * r)).epsilon(1e-12));
  }
  SUBCASE("particular solution b = i, c = -1: both residues equal 1") {
    CHECK(check_Q_residues(example2().data, 1e-10) == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("lines: 1") { CHECK(check_Q_residues(euclidean(3).data, 1e-10) == doctest::Approx(1.0)); }
  SUBCASE("mismatch and sign") {
    auto d = euclidean(2).data;
    d.omega[1] = RationalDifferential(d.omega[1].coefficient() * Complex(2.0));
    CHECK(kind_of([&] { check_Q_residues(d, 1e-10); }) == ErrorKind::Mismatch);
    auto n = euclidean(2).data;
    for (auto& w : n.omega) w = RationalDifferential(w.coefficient() * Complex(-1.0));
    CHECK(kind_of([&] { check_Q_residues(n, 1e-10); }) == ErrorKind::NonPositive);
  }
}

TEST_CASE("involution checks") {
  SUBCASE("polar passes") { CHECK_NOTHROW(check_involution(polar(1.0).data, 1e-8)); }
  SUBCASE("perturbing any root of the third differential fails") {
    const auto base = polar(1.0).data;
    for (const auto& f : base.omega[2].coefficient().factors()) {
      auto d = base;
      move_root(d, 2, f.root, f.root + 1e-3);
      CHECK_THROWS_AS(check_involution(d, 1e-8), Error);
    }
  }
  SUBCASE("identity on the lines configuration fails the divisor check") {
    // Oracle: zeros {inf} = P, but poles {0, 1, -1} differ from R + R + Q = {-1, -1, 0}.
    auto d = euclidean(1).data;
    d.sigma = InvolutionSpec{{0}, {Moebius()}};
    CHECK_THROWS_AS(check_involution(d, 1e-8), Error);
  }
  SUBCASE("degenerate Moebius map") {
    CHECK(kind_of([] { Moebius(1.0, 2.0, 2.0, 4.0); }) == ErrorKind::InvalidData);
  }
  SUBCASE("non-involutive map") {
    auto d = euclidean(1).data;
    d.sigma = InvolutionSpec{{0}, {Moebius(2.0, 0.0, 0.0, 1.0)}};
    CHECK(kind_of([&] { check_involution(d, 1e-8); }) == ErrorKind::NotInvolution);
  }
}

TEST_CASE("arithmetic genus") {
  CHECK(arithmetic_genus(example1(1.0, 2.0).data) == 1);
  const auto s = spherical3(1.0).data;
  CHECK(s.components == 9);
  CHECK(s.gluings.size() == 10);
  CHECK(arithmetic_genus(s) == 2);
  CHECK(nodal_genus_sum(s) == 10);
  CHECK(arithmetic_genus(euclidean(3).data) == 0);
}

TEST_CASE("property: genus is invariant under relabeling components and reordering gluings") {
  std::mt19937_64 rng(5);
  for (const char* name : {"example3", "polar", "spherical3", "spherical4"}) {
    const auto base = gallery_entry(name).data;
    const int pa = arithmetic_genus(base), nodal = nodal_genus_sum(base);
    for (int trial = 0; trial < 5; ++trial) {
      auto d = base;
      std::vector<int> perm(d.components);
      std::iota(perm.begin(), perm.end(), 0);
      std::shuffle(perm.begin(), perm.end(), rng);
      for (auto& g : d.gluings) {
        for (auto& p : g.points) p.component = perm[p.component];
      }
      std::shuffle(d.gluings.begin(), d.gluings.end(), rng);
      CHECK(arithmetic_genus(d) == pa);
      CHECK(nodal_genus_sum(d) == nodal);
    }
  }
}

TEST_CASE("property: every gallery entry passes the static validators") {
  for (const auto& name : gallery_names()) {
    CAPTURE(name);
    const auto d = gallery_entry(name).data;
    CHECK_NOTHROW(validate_structure(d));
    CHECK_NOTHROW(validate_counting(d));
    CHECK(check_regular(d, 1e-10).pass);
    CHECK_NOTHROW(check_Q_residues(d, 1e-10));
    if (d.sigma) CHECK_NOTHROW(check_involution(d, 1e-8));
  }
}
