#include "spectral/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace spectral::io {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw Error(ErrorKind::InvalidData, path + ": " + what);
}

const json& field(const json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(path, "missing key '" + key + "'");
  return *it;
}

const json& array_field(const json& j, const std::string& key, const std::string& path) {
  const json& a = field(j, key, path);
  if (!a.is_array()) fail(path + "." + key, "expected an array");
  return a;
}

double real_of(const json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) fail(path, "expected a finite number");
  return v;
}

int int_of(const json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  return j.get<int>();
}

Complex complex_of(const json& j, const std::string& path) {
  if (j.is_number()) return real_of(j, path);
  if (!j.is_array() || j.size() != 2) fail(path, "expected [re, im]");
  return {real_of(j[0], path + "[0]"), real_of(j[1], path + "[1]")};
}

PointOnP1 point_of(const json& j, const std::string& path) {
  if (j.is_string()) {
    if (j.get<std::string>() == "inf") return PointOnP1::infinity();
    fail(path, "the only named point is \"inf\"");
  }
  return complex_of(j, path);
}

FactoredRational rational_of(const json& j, const std::string& path) {
  const Complex scale = complex_of(field(j, "scale", path), path + ".scale");
  std::vector<FactoredRational::Factor> factors;
  if (j.contains("factors")) {
    const json& fs = array_field(j, "factors", path);
    for (std::size_t k = 0; k < fs.size(); ++k) {
      const std::string fp = path + ".factors[" + std::to_string(k) + "]";
      if (!fs[k].is_array() || fs[k].size() != 2) fail(fp, "expected [[re, im], mult]");
      factors.push_back({complex_of(fs[k][0], fp + "[0]"), int_of(fs[k][1], fp + "[1]")});
    }
  }
  return FactoredRational(scale, std::move(factors));
}

CurvePoint curve_point_of(const json& j, const std::string& path) {
  return {int_of(field(j, "component", path), path + ".component"),
          point_of(field(j, "point", path), path + ".point")};
}

json curve_point_json(const CurvePoint& p) { return {{"component", p.component}, {"point", to_json(p.point)}}; }

Profile profile_of(const json& j, const std::string& path) {
  return {real_of(field(j, "center", path), path + ".center"), real_of(field(j, "width", path), path + ".width")};
}

json profile_json(const Profile& p) { return {{"center", p.center}, {"width", p.width}}; }

}  // namespace

json to_json(Complex z) { return json::array({z.real(), z.imag()}); }

json to_json(const PointOnP1& p) { return p.is_infinite() ? json("inf") : to_json(p.value()); }

json to_json(const FactoredRational& f) {
  json factors = json::array();
  for (const auto& fac : f.factors()) factors.push_back(json::array({to_json(fac.root), fac.mult}));
  return {{"scale", to_json(f.scale())}, {"factors", factors}};
}

json to_json(const SpectralData& data) {
  json j;
  j["n"] = data.n;
  j["components"] = data.components;
  json ansatz = json::array();
  for (const auto& a : data.ansatz) {
    json ess = json::array();
    for (const auto& t : a.essential) ess.push_back({{"var", t.var}, {"phase", to_json(t.phase)}});
    json poles = json::array();
    for (const auto& p : a.poles) poles.push_back(to_json(p));
    ansatz.push_back({{"essential", ess}, {"poles", poles}});
  }
  j["ansatz"] = ansatz;
  json gluings = json::array();
  for (const auto& g : data.gluings) {
    json pts = json::array();
    for (const auto& p : g.points) pts.push_back(curve_point_json(p));
    gluings.push_back(pts);
  }
  j["gluings"] = gluings;
  json norms = json::array();
  for (const auto& nm : data.normalizations) {
    norms.push_back({{"component", nm.point.component}, {"point", to_json(nm.point.point)}, {"value", to_json(nm.value)}});
  }
  j["normalizations"] = norms;
  j["Q"] = json::array();
  for (const auto& q : data.Q) j["Q"].push_back(curve_point_json(q));
  j["P"] = json::array();
  for (const auto& p : data.P) j["P"].push_back(curve_point_json(p));
  j["omega"] = json::array();
  for (const auto& w : data.omega) j["omega"].push_back(to_json(w.coefficient()));
  if (data.sigma) {
    json m = json::array();
    for (const auto& mb : data.sigma->moebius) m.push_back({to_json(mb.a()), to_json(mb.b()), to_json(mb.c()), to_json(mb.d())});
    j["sigma"] = {{"component_perm", data.sigma->component_perm}, {"moebius", m}};
  }
  return j;
}

SpectralData spectral_data_from_json(const json& j) {
  if (!j.is_object()) fail("$", "expected an object");
  SpectralData d;
  d.n = int_of(field(j, "n", "$"), "$.n");
  d.components = int_of(field(j, "components", "$"), "$.components");
  if (d.n < 1) fail("$.n", "must be positive");
  if (d.components < 1) fail("$.components", "must be positive");

  const json& ansatz = array_field(j, "ansatz", "$");
  for (std::size_t c = 0; c < ansatz.size(); ++c) {
    const std::string path = "$.ansatz[" + std::to_string(c) + "]";
    ComponentAnsatz a;
    if (ansatz[c].contains("essential")) {
      const json& ess = array_field(ansatz[c], "essential", path);
      for (std::size_t k = 0; k < ess.size(); ++k) {
        const std::string ep = path + ".essential[" + std::to_string(k) + "]";
        a.essential.push_back({int_of(field(ess[k], "var", ep), ep + ".var"), rational_of(field(ess[k], "phase", ep), ep + ".phase")});
      }
    }
    if (ansatz[c].contains("poles")) {
      const json& poles = array_field(ansatz[c], "poles", path);
      for (std::size_t k = 0; k < poles.size(); ++k) {
        a.poles.push_back(complex_of(poles[k], path + ".poles[" + std::to_string(k) + "]"));
      }
    }
    d.ansatz.push_back(std::move(a));
  }

  const json& gluings = array_field(j, "gluings", "$");
  for (std::size_t g = 0; g < gluings.size(); ++g) {
    const std::string path = "$.gluings[" + std::to_string(g) + "]";
    if (!gluings[g].is_array()) fail(path, "expected an array of points");
    Gluing gl;
    for (std::size_t k = 0; k < gluings[g].size(); ++k) {
      gl.points.push_back(curve_point_of(gluings[g][k], path + "[" + std::to_string(k) + "]"));
    }
    d.gluings.push_back(std::move(gl));
  }

  const json& norms = array_field(j, "normalizations", "$");
  for (std::size_t k = 0; k < norms.size(); ++k) {
    const std::string path = "$.normalizations[" + std::to_string(k) + "]";
    Normalization nm;
    nm.point = curve_point_of(norms[k], path);
    if (norms[k].contains("value")) nm.value = complex_of(norms[k]["value"], path + ".value");
    d.normalizations.push_back(nm);
  }

  for (const char* key : {"Q", "P"}) {
    const json& pts = array_field(j, key, "$");
    auto& dst = std::string(key) == "Q" ? d.Q : d.P;
    for (std::size_t k = 0; k < pts.size(); ++k) {
      dst.push_back(curve_point_of(pts[k], std::string("$.") + key + "[" + std::to_string(k) + "]"));
    }
  }

  if (j.contains("omega")) {
    const json& omega = array_field(j, "omega", "$");
    for (std::size_t k = 0; k < omega.size(); ++k) {
      d.omega.emplace_back(rational_of(omega[k], "$.omega[" + std::to_string(k) + "]"));
    }
  }

  if (j.contains("sigma") && !j["sigma"].is_null()) {
    const json& s = j["sigma"];
    InvolutionSpec inv;
    const json& perm = array_field(s, "component_perm", "$.sigma");
    for (std::size_t k = 0; k < perm.size(); ++k) {
      inv.component_perm.push_back(int_of(perm[k], "$.sigma.component_perm[" + std::to_string(k) + "]"));
    }
    const json& mob = array_field(s, "moebius", "$.sigma");
    for (std::size_t k = 0; k < mob.size(); ++k) {
      const std::string path = "$.sigma.moebius[" + std::to_string(k) + "]";
      if (!mob[k].is_array() || mob[k].size() != 4) fail(path, "expected [a, b, c, d]");
      inv.moebius.emplace_back(complex_of(mob[k][0], path + "[0]"), complex_of(mob[k][1], path + "[1]"),
                               complex_of(mob[k][2], path + "[2]"), complex_of(mob[k][3], path + "[3]"));
    }
    d.sigma = std::move(inv);
  }
  return d;
}

json to_json(const KernelSpec& spec) {
  json phi = json::array();
  for (const auto& t : spec.terms) {
    phi.push_back({{"i", t.i + 1},
                   {"j", t.j + 1},
                   {"family", t.family == ProfileFamily::Gaussian ? "gaussian-product" : "bump-product"},
                   {"params", {{"amplitude", t.amplitude}, {"g", profile_json(t.g)}, {"h", profile_json(t.h)}}}});
  }
  return {{"n", spec.n}, {"phi", phi}};
}

KernelSpec kernel_spec_from_json(const json& j) {
  if (!j.is_object()) fail("$", "expected an object");
  KernelSpec spec;
  spec.n = int_of(field(j, "n", "$"), "$.n");
  const json& phi = array_field(j, "phi", "$");
  for (std::size_t k = 0; k < phi.size(); ++k) {
    const std::string path = "$.phi[" + std::to_string(k) + "]";
    KernelTerm t;
    t.i = int_of(field(phi[k], "i", path), path + ".i") - 1;
    t.j = int_of(field(phi[k], "j", path), path + ".j") - 1;
    const json& fam = field(phi[k], "family", path);
    if (fam == "gaussian-product") {
      t.family = ProfileFamily::Gaussian;
    } else if (fam == "bump-product") {
      t.family = ProfileFamily::Bump;
    } else {
      fail(path + ".family", "expected \"gaussian-product\" or \"bump-product\"");
    }
    const json& params = field(phi[k], "params", path);
    t.amplitude = params.contains("amplitude") ? real_of(params["amplitude"], path + ".params.amplitude") : 1.0;
    t.g = profile_of(field(params, "g", path + ".params"), path + ".params.g");
    t.h = profile_of(field(params, "h", path + ".params"), path + ".params.h");
    spec.terms.push_back(t);
  }
  validate(spec);
  return spec;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::InvalidData, "cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::InvalidData, "'" + path + "' is not valid JSON: " + e.what());
  }
}

}  // namespace spectral::io
