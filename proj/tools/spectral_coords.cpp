#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "spectral/baker.hpp"
#include "spectral/dressing.hpp"
#include "spectral/gallery.hpp"
#include "spectral/geometry.hpp"
#include "spectral/io.hpp"

using namespace spectral;
using io::json;

namespace {

enum Exit { kPass = 0, kCheckFailure = 1, kInputError = 2, kSingularSolve = 3, kDressingFailure = 4 };

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidData:
    case ErrorKind::DegenerateParameters:
    case ErrorKind::StencilFailure:
    case ErrorKind::EssentialSingularity:
    case ErrorKind::PoleEvaluation:
      return kInputError;
    case ErrorKind::SingularSystem:
      return kSingularSolve;
    case ErrorKind::SingularFredholm:
    case ErrorKind::TailTooFat:
    case ErrorKind::IncompatibleField:
      return kDressingFailure;
    default:
      return kCheckFailure;
  }
}

struct Options {
  std::string input;
  std::string u;
  std::string grid;
  std::string out;
  std::string format = "json";
  double fd_h = kCurvatureFD.h;
  int fd_order = kCurvatureFD.order;
  double tol = 1e-4;
  double ortho_tol = 1e-6;
  double validator_tol = 1e-10;
  double s = 0.0;
  double s_max = 0.0;
  int nodes = 200;
  std::string rule = "gauss-legendre";
  bool list = false;
};

struct Axis {
  int var = 0;  // 0-based
  double lo = 0.0, hi = 0.0;
  int count = 1;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) {
    if (!item.empty()) parts.push_back(item);
  }
  return parts;
}

double parse_double(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size() || !std::isfinite(v)) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw Error(ErrorKind::InvalidData, "bad number '" + s + "' in " + what);
  }
}

Eigen::VectorXd parse_u(const std::string& text, int n) {
  const auto parts = split(text, ',');
  if (static_cast<int>(parts.size()) != n) {
    throw Error(ErrorKind::InvalidData, "--u needs " + std::to_string(n) + " comma-separated values");
  }
  Eigen::VectorXd u(n);
  for (int i = 0; i < n; ++i) u(i) = parse_double(parts[i], "--u");
  return u;
}

/// "axis:lo:hi:count;..." with 1-based axes; unlisted axes stay at 0.
std::vector<Axis> parse_grid(const std::string& text, int n, double lo, double hi, int count) {
  std::vector<Axis> axes(n);
  for (int i = 0; i < n; ++i) axes[i] = {i, 0.0, 0.0, 1};
  if (text.empty()) {
    for (int i = 0; i < n; ++i) axes[i] = {i, lo, hi, count};
    return axes;
  }
  for (const auto& item : split(text, ';')) {
    const auto f = split(item, ':');
    if (f.size() != 4) throw Error(ErrorKind::InvalidData, "grid item '" + item + "' is not axis:lo:hi:count");
    const int var = static_cast<int>(parse_double(f[0], "--grid")) - 1;
    const double count_d = parse_double(f[3], "--grid");
    if (var < 0 || var >= n) throw Error(ErrorKind::InvalidData, "grid axis out of range in '" + item + "'");
    if (count_d < 2 || count_d != std::floor(count_d)) {
      throw Error(ErrorKind::InvalidData, "grid axis needs an integer count >= 2 in '" + item + "'");
    }
    axes[var] = {var, parse_double(f[1], "--grid"), parse_double(f[2], "--grid"), static_cast<int>(count_d)};
  }
  return axes;
}

std::vector<Eigen::VectorXd> grid_points(const std::vector<Axis>& axes) {
  int total = 1;
  for (const auto& a : axes) total *= a.count;
  std::vector<Eigen::VectorXd> pts(total, Eigen::VectorXd(axes.size()));
  for (int p = 0; p < total; ++p) {
    int rest = p;
    for (std::size_t i = 0; i < axes.size(); ++i) {
      const auto& a = axes[i];
      const int k = rest % a.count;
      rest /= a.count;
      pts[p](i) = a.count == 1 ? a.lo : a.lo + (a.hi - a.lo) * k / (a.count - 1);
    }
  }
  return pts;
}

int thread_count(std::size_t jobs) {
  unsigned cap = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("SPECTRAL_COORDS_THREADS")) {
    const int v = std::atoi(env);
    if (v >= 1) cap = static_cast<unsigned>(v);
  }
  return static_cast<int>(std::min<std::size_t>(cap, std::max<std::size_t>(jobs, 1)));
}

/// Runs job(k) for k in [0, count) on a small pool; results are written by index.
template <class Job>
void parallel_for(std::size_t count, Job job) {
  const int workers = thread_count(count);
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(count);
  auto run = [&] {
    for (std::size_t k = next++; k < count; k = next++) {
      try {
        job(k);
      } catch (...) {
        errors[k] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(run);
  run();
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

void emit(const Options& opt, const std::string& text) {
  if (opt.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(opt.out);
  if (!f) throw Error(ErrorKind::InvalidData, "cannot write '" + opt.out + "'");
  f << text;
}

SpectralData load_data(const std::string& input) {
  if (input.rfind("gallery:", 0) == 0) return gallery_entry(input.substr(8)).data;
  SpectralData data = io::spectral_data_from_json(io::read_json_file(input));
  validate_structure(data);
  return data;
}

json vec_json(const Eigen::VectorXd& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

json cvec_json(const Eigen::VectorXcd& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(io::to_json(v(i)));
  return a;
}

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

struct Check {
  std::string name;
  double value = 0.0;
  double tol = 0.0;
  bool pass = true;
  std::string note;
};

json checks_json(const std::vector<Check>& checks) {
  json a = json::array();
  for (const auto& c : checks) {
    json j = {{"name", c.name}, {"value", c.value}, {"tol", c.tol}, {"pass", c.pass}};
    if (!c.note.empty()) j["note"] = c.note;
    a.push_back(j);
  }
  return a;
}

std::vector<Check> run_validators(const SpectralData& data, double tol, json& details) {
  std::vector<Check> checks;
  try {
    const auto c = validate_counting(data);
    details["counting"] = {{"unknowns", c.unknowns},
                           {"equations", c.equations},
                           {"degree_D", c.degree_D},
                           {"normalizations", c.l},
                           {"arithmetic_genus", c.arithmetic_genus},
                           {"nodal_sum", c.nodal_sum},
                           {"connected_components", c.connected_components},
                           {"warnings", c.warnings}};
    json dup = json::array();
    for (auto [a, b] : c.duplicate_normalizations) dup.push_back({a, b});
    details["counting"]["duplicate_normalizations"] = dup;
    checks.push_back({"counting", 0.0, 0.0, true, ""});
  } catch (const Error& e) {
    checks.push_back({"counting", 1.0, 0.0, false, e.what()});
  }

  const auto reg = check_regular(data, tol);
  checks.push_back({"regularity", reg.max_abs, tol, reg.pass, reg.pass ? "" : "gluing " + std::to_string(reg.worst)});

  try {
    const double eta = check_Q_residues(data, tol);
    details["eta0_sq"] = eta;
    checks.push_back({"q_residues", 0.0, tol, true, ""});
  } catch (const Error& e) {
    checks.push_back({"q_residues", 1.0, tol, false, e.what()});
  }

  if (data.sigma) {
    try {
      const auto inv = check_involution(data, 1e-8);
      checks.push_back({"involution", inv.max_square_error, 1e-8, true, ""});
    } catch (const Error& e) {
      checks.push_back({"involution", 1.0, 1e-8, false, e.what()});
    }
  }
  return checks;
}

int finish(const Options& opt, json report, const std::vector<Check>& checks) {
  bool pass = true;
  for (const auto& c : checks) pass = pass && c.pass;
  report["checks"] = checks_json(checks);
  report["pass"] = pass;
  emit(opt, report.dump(2) + "\n");
  if (!pass) {
    for (const auto& c : checks) {
      if (!c.pass) std::cerr << "check failed: " << c.name << (c.note.empty() ? "" : " (" + c.note + ")") << "\n";
    }
  }
  return pass ? kPass : kCheckFailure;
}

int cmd_validate(const Options& opt) {
  const SpectralData data = load_data(opt.input);
  json report;
  const auto checks = run_validators(data, opt.validator_tol, report);
  return finish(opt, report, checks);
}

int cmd_solve(const Options& opt) {
  const SpectralData data = load_data(opt.input);
  validate_counting(data);
  const Eigen::VectorXd u = parse_u(opt.u, data.n);
  SolveDiagnostics diag;
  const auto coeffs = solve_coefficients(data, u, &diag);
  Eigen::VectorXcd x(data.Q.size());
  for (std::size_t j = 0; j < data.Q.size(); ++j) x(j) = eval_psi(data, coeffs, data.Q[j]);
  const Eigen::VectorXd H = lame(metric(make_coordinate_function(data), u, kFirstDerivativeFD, {}));
  json report = {{"u", vec_json(u)},
                 {"x", vec_json(x.real())},
                 {"max_imag", x.imag().cwiseAbs().maxCoeff()},
                 {"H", vec_json(H)},
                 {"h", cvec_json(h_values(data, coeffs))},
                 {"diagnostics", {{"condition_estimate", diag.condition_estimate}, {"residual_norm", diag.residual_norm}}}};
  emit(opt, report.dump(2) + "\n");
  return kPass;
}

int cmd_verify(const Options& opt) {
  const SpectralData data = load_data(opt.input);
  const FDConfig second{opt.fd_h, opt.fd_order};
  validate(second);
  const auto axes = parse_grid(opt.grid, data.n, -0.5, 0.5, 3);
  const auto pts = grid_points(axes);

  json details;
  auto checks = run_validators(data, opt.validator_tol, details);
  if (!checks.front().pass) return finish(opt, details, checks);

  const CoordinateFunction map = make_coordinate_function(data);
  AnalyzeOptions aopt;
  aopt.second = second;
  aopt.orthogonality_tol = opt.ortho_tol;
  std::vector<GeometryReport> reps(pts.size());
  parallel_for(pts.size(), [&](std::size_t k) { reps[k] = analyze(map, pts[k], aopt); });

  Check ortho{"orthogonality", 0.0, opt.ortho_tol, true, ""};
  Check real{"reality", 0.0, 1e-8, true, ""};
  struct Fam {
    std::string name;
    std::function<const ResidualFamily&(const GeometryReport&)> get;
    Check check;
  };
  std::vector<Fam> fams = {
      {"lame_mixed", [](const GeometryReport& r) -> const ResidualFamily& { return r.systems.lame_mixed; }, {}},
      {"lame_pair", [](const GeometryReport& r) -> const ResidualFamily& { return r.systems.lame_pair; }, {}},
      {"rotation_triple", [](const GeometryReport& r) -> const ResidualFamily& { return r.systems.rotation_triple; }, {}},
      {"rotation_pair", [](const GeometryReport& r) -> const ResidualFamily& { return r.systems.rotation_pair; }, {}},
      {"riemann", [](const GeometryReport& r) -> const ResidualFamily& { return r.curvature.riemann; }, {}},
      {"immersion", [](const GeometryReport& r) -> const ResidualFamily& { return r.immersion; }, {}},
  };
  for (auto& f : fams) f.check = {f.name, 0.0, opt.tol, true, ""};

  std::ostringstream csv;
  csv << "index";
  for (int i = 0; i < data.n; ++i) csv << ",u" << i + 1;
  csv << ",orthogonality";
  for (const auto& f : fams) csv << "," << f.name;
  csv << ",max_imag\n";

  for (std::size_t k = 0; k < reps.size(); ++k) {
    const auto& r = reps[k];
    const double o = r.g_offdiag_max / (1.0 + r.g_norm);
    ortho.value = std::max(ortho.value, o);
    real.value = std::max(real.value, r.max_imag);
    csv << k;
    for (int i = 0; i < data.n; ++i) csv << "," << fmt(pts[k](i));
    csv << "," << fmt(o);
    for (auto& f : fams) {
      const double v = max_relative_residual(f.get(r));
      f.check.value = std::max(f.check.value, v);
      csv << "," << fmt(v);
    }
    csv << "," << fmt(r.max_imag) << "\n";
  }
  ortho.pass = ortho.value <= ortho.tol;
  real.pass = real.value <= real.tol;
  checks.push_back(ortho);
  checks.push_back(real);
  for (auto& f : fams) {
    f.check.pass = f.check.value <= f.check.tol;
    checks.push_back(f.check);
  }

  Check eps{"epsilon_invariant", 0.0, 1e-6, true, ""};
  try {
    const auto rep = epsilon_invariant(data, pts);
    eps.value = rep.spread.maxCoeff();
    eps.pass = eps.value <= eps.tol;
  } catch (const Error& e) {
    eps.pass = false;
    eps.value = 1.0;
    eps.note = e.what();
  }
  checks.push_back(eps);

  if (opt.format == "csv") {
    emit(opt, csv.str());
    bool pass = true;
    for (const auto& c : checks) {
      pass = pass && c.pass;
      if (!c.pass) std::cerr << "check failed: " << c.name << "\n";
    }
    return pass ? kPass : kCheckFailure;
  }
  details["points"] = pts.size();
  return finish(opt, details, checks);
}

int cmd_grid(const Options& opt) {
  const SpectralData data = load_data(opt.input);
  validate_counting(data);
  const auto axes = parse_grid(opt.grid, data.n, -1.0, 1.0, 5);
  const auto pts = grid_points(axes);
  std::vector<Eigen::VectorXcd> xs(pts.size());
  parallel_for(pts.size(), [&](std::size_t k) { xs[k] = coordinate_map(data, pts[k]); });

  if (opt.format == "json") {
    json rows = json::array();
    for (std::size_t k = 0; k < pts.size(); ++k) {
      rows.push_back({{"u", vec_json(pts[k])}, {"x", vec_json(xs[k].real())}, {"max_imag", xs[k].imag().cwiseAbs().maxCoeff()}});
    }
    emit(opt, json{{"points", rows}}.dump(2) + "\n");
    return kPass;
  }
  std::ostringstream csv;
  csv << "index";
  for (int i = 0; i < data.n; ++i) csv << ",u" << i + 1;
  for (Eigen::Index j = 0; j < xs.front().size(); ++j) csv << ",x" << j + 1;
  csv << ",max_imag\n";
  for (std::size_t k = 0; k < pts.size(); ++k) {
    csv << k;
    for (int i = 0; i < data.n; ++i) csv << "," << fmt(pts[k](i));
    for (Eigen::Index j = 0; j < xs[k].size(); ++j) csv << "," << fmt(xs[k](j).real());
    csv << "," << fmt(xs[k].imag().cwiseAbs().maxCoeff()) << "\n";
  }
  emit(opt, csv.str());
  return kPass;
}

int cmd_gallery(const Options& opt) {
  if (opt.list || opt.input.empty()) {
    emit(opt, json(gallery_names()).dump(2) + "\n");
    return kPass;
  }
  const auto entry = gallery_entry(opt.input);
  emit(opt, io::to_json(entry.data).dump(2) + "\n");
  return kPass;
}

int cmd_dress(const Options& opt) {
  const KernelSpec spec = io::kernel_spec_from_json(io::read_json_file(opt.input));
  const FDConfig fd{opt.fd_h, opt.fd_order};
  validate(fd);
  if (opt.rule != "gauss-legendre" && opt.rule != "trapezoid") {
    throw Error(ErrorKind::InvalidData, "--rule must be gauss-legendre or trapezoid");
  }
  const std::vector<Eigen::VectorXd> pts =
      opt.u.empty() ? grid_points(parse_grid(opt.grid, spec.n, 0.0, 0.0, 1)) : std::vector{parse_u(opt.u, spec.n)};

  DressingGrid grid;
  grid.s = opt.s;
  grid.nodes = opt.nodes;
  grid.rule = opt.rule == "trapezoid" ? QuadratureRule::Trapezoid : QuadratureRule::GaussLegendre;
  if (opt.s_max > 0.0) {
    grid.s_max = opt.s_max;
  } else {
    // The tail bound has to hold over the whole u range, so probe the extreme points.
    double s_max = grid.s + 2.0;
    for (const auto& u : pts) {
      s_max = std::max(s_max, auto_s_max([&](double a, double b) { return build_F(spec, u, a, b); }, grid.s));
    }
    grid.s_max = s_max;
  }
  validate(grid);

  const BetaField beta = [&](const Eigen::VectorXd& v) { return rotation_from_dressing(spec, v, grid); };
  std::vector<Eigen::MatrixXd> betas(pts.size());
  std::vector<BetaResiduals> res(pts.size());
  parallel_for(pts.size(), [&](std::size_t k) {
    betas[k] = beta(pts[k]);
    res[k] = check_beta_systems(beta, pts[k], fd);
  });

  Check triple{"rotation_triple", 0.0, opt.tol, true, ""};
  Check pair{"rotation_pair", 0.0, opt.tol, true, ""};
  std::ostringstream csv;
  csv << "index";
  for (int i = 0; i < spec.n; ++i) csv << ",u" << i + 1;
  for (int i = 0; i < spec.n; ++i) {
    for (int j = 0; j < spec.n; ++j) {
      if (i != j) csv << ",beta" << i + 1 << j + 1;
    }
  }
  csv << ",rotation_triple,rotation_pair\n";
  json rows = json::array();
  for (std::size_t k = 0; k < pts.size(); ++k) {
    const double t = max_residual(res[k].triple), p = max_residual(res[k].pair);
    triple.value = std::max(triple.value, t);
    pair.value = std::max(pair.value, p);
    csv << k;
    for (int i = 0; i < spec.n; ++i) csv << "," << fmt(pts[k](i));
    json b = json::array();
    for (int i = 0; i < spec.n; ++i) {
      json row = json::array();
      for (int j = 0; j < spec.n; ++j) {
        row.push_back(betas[k](i, j));
        if (i != j) csv << "," << fmt(betas[k](i, j));
      }
      b.push_back(row);
    }
    csv << "," << fmt(t) << "," << fmt(p) << "\n";
    rows.push_back({{"u", vec_json(pts[k])}, {"beta", b}, {"rotation_triple", t}, {"rotation_pair", p}});
  }
  triple.pass = triple.value <= triple.tol;
  pair.pass = pair.value <= pair.tol;
  const std::vector<Check> checks{triple, pair};

  if (opt.format == "csv") {
    emit(opt, csv.str());
    for (const auto& c : checks) {
      if (!c.pass) std::cerr << "check failed: " << c.name << "\n";
    }
    return triple.pass && pair.pass ? kPass : kCheckFailure;
  }
  json report = {{"s", grid.s}, {"s_max", grid.s_max}, {"nodes", grid.nodes}, {"points", rows}};
  return finish(opt, report, checks);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Orthogonal coordinate systems from reducible spectral curves"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out", opt.out, "Write output to this file instead of stdout");
    return sub->add_option("--format", opt.format, "Output format (json, or csv for grid and dress)")
        ->check(CLI::IsMember({"json", "csv"}));
  };
  auto add_fd = [&](CLI::App* sub) {
    sub->add_option("--fd-h", opt.fd_h, "Finite-difference step for second derivatives")->check(CLI::PositiveNumber);
    sub->add_option("--fd-order", opt.fd_order, "Finite-difference order (2 or 4)")->check(CLI::IsMember({2, 4}));
  };

  auto* validate_cmd = app.add_subcommand("validate", "Run the static validators on spectral data");
  validate_cmd->add_option("input", opt.input, "Spectral data JSON, or gallery:NAME")->required();
  validate_cmd->add_option("--tol", opt.validator_tol, "Validator tolerance")->check(CLI::PositiveNumber);
  add_common(validate_cmd);

  auto* solve_cmd = app.add_subcommand("solve", "Solve for psi and print x(u), H(u), h(u)");
  solve_cmd->add_option("input", opt.input, "Spectral data JSON, or gallery:NAME")->required();
  solve_cmd->add_option("--u", opt.u, "Point u as v1,v2,...")->required();
  add_common(solve_cmd);

  auto* verify_cmd = app.add_subcommand("verify", "Sweep the geometric checks over a grid");
  verify_cmd->add_option("input", opt.input, "Spectral data JSON, or gallery:NAME")->required();
  verify_cmd->add_option("--grid", opt.grid, "axis:lo:hi:count;... (default 3 points on [-0.5, 0.5] per axis)");
  verify_cmd->add_option("--tol", opt.tol, "Tolerance for the second-derivative checks")->check(CLI::PositiveNumber);
  verify_cmd->add_option("--ortho-tol", opt.ortho_tol, "Tolerance for orthogonality")->check(CLI::PositiveNumber);
  add_fd(verify_cmd);
  add_common(verify_cmd);

  auto* grid_cmd = app.add_subcommand("grid", "Emit coordinate lines as CSV");
  grid_cmd->add_option("input", opt.input, "Spectral data JSON, or gallery:NAME")->required();
  grid_cmd->add_option("--grid", opt.grid, "axis:lo:hi:count;... (default 5 points on [-1, 1] per axis)");
  auto* grid_format = add_common(grid_cmd);

  auto* gallery_cmd = app.add_subcommand("gallery", "Print a gallery entry as spectral data JSON");
  gallery_cmd->add_option("name", opt.input, "Entry name; omit to list");
  gallery_cmd->add_flag("--list", opt.list, "List entry names");
  add_common(gallery_cmd);

  auto* dress_cmd = app.add_subcommand("dress", "Rotation coefficients by the dressing method");
  dress_cmd->add_option("input", opt.input, "Kernel spec JSON")->required();
  dress_cmd->add_option("--u", opt.u, "Single point u as v1,v2,...");
  dress_cmd->add_option("--grid", opt.grid, "axis:lo:hi:count;... (unlisted axes stay at 0)");
  dress_cmd->add_option("--s", opt.s, "Lower limit s");
  dress_cmd->add_option("--s-max", opt.s_max, "Cut-off; chosen from the tail bound when omitted");
  dress_cmd->add_option("--nodes", opt.nodes, "Quadrature nodes")->check(CLI::Range(8, 100000));
  dress_cmd->add_option("--rule", opt.rule, "Quadrature rule")->check(CLI::IsMember({"gauss-legendre", "trapezoid"}));
  dress_cmd->add_option("--tol", opt.tol, "Tolerance for the rotation systems")->check(CLI::PositiveNumber);
  add_fd(dress_cmd);
  auto* dress_format = add_common(dress_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }
  if ((*grid_cmd && grid_format->count() == 0) || (*dress_cmd && dress_format->count() == 0)) opt.format = "csv";

  try {
    if (*validate_cmd) return cmd_validate(opt);
    if (*solve_cmd) return cmd_solve(opt);
    if (*verify_cmd) return cmd_verify(opt);
    if (*grid_cmd) return cmd_grid(opt);
    if (*gallery_cmd) return cmd_gallery(opt);
    if (*dress_cmd) return cmd_dress(opt);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
