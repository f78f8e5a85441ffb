#include "crg/cli/app.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <memory>
#include <numbers>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "crg/analytic.hpp"
#include "crg/cli/emit.hpp"
#include "crg/cli/spec_parser.hpp"
#include "crg/covering.hpp"
#include "crg/criteria.hpp"
#include "crg/dynamics.hpp"
#include "crg/error.hpp"
#include "crg/growth.hpp"
#include "crg/parallel.hpp"

namespace crg::cli {
namespace {

[[noreturn]] void usage(const std::string& what) { fail(ErrorCode::InvalidArgument, what); }

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  for (;;) {
    const std::size_t next = s.find(sep, start);
    parts.push_back(trim(s.substr(start, next == std::string_view::npos ? std::string_view::npos : next - start)));
    if (next == std::string_view::npos) break;
    start = next + 1;
  }
  return parts;
}

double to_double(const std::string& text, const std::string& flag) {
  double v = 0.0;
  const char* first = text.data();
  if (!text.empty() && text[0] == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, text.data() + text.size(), v);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(v))
    usage(flag + ": '" + text + "' is not a finite number");
  return v;
}

std::vector<double> to_doubles(const std::string& text, const std::string& flag) {
  std::vector<double> out;
  for (const std::string& part : split(text, ',')) out.push_back(to_double(part, flag));
  return out;
}

std::vector<double> to_doubles_n(const std::string& text, const std::string& flag, std::size_t n) {
  std::vector<double> v = to_doubles(text, flag);
  if (v.size() != n) usage(flag + ": expected " + std::to_string(n) + " comma-separated numbers");
  return v;
}

std::vector<Complex> to_points(const std::string& text, const std::string& flag) {
  std::vector<Complex> out;
  for (const std::string& part : split(text, ',')) {
    const auto xy = split(part, ':');
    if (xy.size() != 2) usage(flag + ": points are written re:im");
    out.emplace_back(to_double(xy[0], flag), to_double(xy[1], flag));
  }
  return out;
}

std::pair<int, int> to_size(const std::string& text, const std::string& flag) {
  const auto parts = split(text, 'x');
  if (parts.size() != 2) usage(flag + ": expected WxH");
  const double w = to_double(parts[0], flag), h = to_double(parts[1], flag);
  if (w < 1 || h < 1 || w != std::floor(w) || h != std::floor(h) || w > 1e5 || h > 1e5)
    usage(flag + ": dimensions must be positive integers");
  return {static_cast<int>(w), static_cast<int>(h)};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) usage("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::vector<Complex> read_points(const std::string& path) {
  std::istringstream in(read_file(path));
  std::vector<Complex> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream fields(line);
    double re, im;
    std::string extra;
    if (!(fields >> re >> im) || (fields >> extra))
      usage(path + ":" + std::to_string(line_no) + ": expected 're im'");
    out.emplace_back(re, im);
  }
  return out;
}

std::vector<double> read_reals(const std::string& path) {
  std::istringstream in(read_file(path));
  std::vector<double> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream fields(line);
    double v;
    std::string extra;
    if (!(fields >> v) || (fields >> extra)) usage(path + ":" + std::to_string(line_no) + ": expected one number");
    out.push_back(v);
  }
  return out;
}

void emit(const std::string& path, const std::string& content, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << content;
    out.flush();
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) usage("cannot write '" + path + "'");
  file << content;
  if (!file) fail(ErrorCode::InvalidArgument, "write to '" + path + "' failed");
}

// ---------------------------------------------------------------------------
// shared option groups

struct FunctionOpt {
  std::string spec;
  FunctionSpecAST ast;

  void parse() { ast = parse_function_spec(spec); }
  std::unique_ptr<FunctionModel> model(double certified_radius) const {
    return build_model(ast, std::max(certified_radius, 1.0));
  }
  bool is_product() const { return std::holds_alternative<ProductNode>(ast.node); }
};

struct GrowthOpts {
  std::string beta = "exp:0.5,1";
  std::optional<double> x0;
  std::optional<double> rho;
};

double order_for(const GrowthOpts& g, const FunctionModel& model) {
  const double rho = g.rho.value_or(model.order());
  if (!(rho > 0.0)) usage("--rho: the function has order 0; pass a positive --rho");
  return rho;
}

GrowthMinorant make_beta(const GrowthOpts& g, const FunctionModel& model) {
  const auto colon = g.beta.find(':');
  const std::string kind = trim(g.beta.substr(0, colon));
  const std::string args = colon == std::string::npos ? "" : g.beta.substr(colon + 1);
  if (kind == "exp") {
    const auto v = to_doubles_n(args, "--beta exp:c,mu", 2);
    return GrowthMinorant::exp_power(v[0], v[1], g.x0);
  }
  if (kind == "eps1") {
    const int depth = args.empty() ? 1 : static_cast<int>(to_double(args, "--beta eps1:N"));
    return GrowthMinorant::paper_default(ProximateOrder::constant(order_for(g, model)), depth, g.x0);
  }
  if (kind == "linear") return GrowthMinorant::linear(to_double(args, "--beta linear:a"), g.x0);
  if (kind == "table") {
    std::vector<std::pair<double, double>> pts;
    for (const auto& p : split(args, ',')) {
      const auto xy = split(p, ':');
      if (xy.size() != 2) usage("--beta table: entries are r:log_beta");
      pts.emplace_back(to_double(xy[0], "--beta"), to_double(xy[1], "--beta"));
    }
    return GrowthMinorant::table(std::move(pts), g.x0);
  }
  usage("--beta: expected exp:c,mu | eps1[:N] | linear:a | table:r:logb,...");
}

DensityBudget make_alpha(const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string kind = trim(spec.substr(0, colon));
  const std::string args = colon == std::string::npos ? "" : spec.substr(colon + 1);
  if (kind == "sectors") {
    const auto v = to_doubles_n(args, "--alpha sectors:m,N", 2);
    return DensityBudget::paper(static_cast<int>(v[0]), static_cast<int>(v[1]));
  }
  if (kind == "eps3") {
    const auto v = to_doubles_n(args, "--alpha eps3:factor,N", 2);
    return DensityBudget::scaled_eps3(v[0], static_cast<int>(v[1]));
  }
  if (kind == "invlog") return DensityBudget::inverse_log_power(to_double(args, "--alpha invlog:k"));
  if (kind == "const") return DensityBudget::constant(to_double(args, "--alpha const:a"));
  if (kind == "zero") return DensityBudget::zero();
  usage("--alpha: expected sectors:m,N | eps3:factor,N | invlog:k | const:a | zero");
}

struct PlanOpts {
  std::string grid;
  std::optional<std::uint64_t> mc;
  std::uint64_t seed = 0;

  SamplePlan plan() const {
    if (!grid.empty() && mc) usage("--grid and --mc are mutually exclusive");
    if (!grid.empty()) {
      const auto [c, r] = to_size(grid, "--grid");
      return GridPlan{c, r};
    }
    if (!mc) usage("one of --grid CxR or --mc N is required");
    if (*mc == 0) usage("--mc must be positive");
    return MonteCarloPlan{*mc, seed};
  }
};

void add_plan_options(CLI::App* cmd, PlanOpts& p) {
  cmd->add_option("--grid", p.grid, "cell-centre grid CxR (angles x rings, or x by y)");
  cmd->add_option("--mc", p.mc, "Monte Carlo sample count");
  cmd->add_option("--seed", p.seed, "Monte Carlo seed");
}

void add_growth_options(CLI::App* cmd, GrowthOpts& g) {
  cmd->add_option("--beta", g.beta, "growth minorant: exp:c,mu | eps1[:N] | linear:a | table:r:logb,...");
  cmd->add_option("--x0", g.x0, "threshold of beta (default: scanned)");
  cmd->add_option("--rho", g.rho, "order for the proximate order (default: order of the function)");
}

std::vector<std::pair<double, double>> sample_grid(const std::string& radii, const std::string& thetas) {
  std::vector<std::pair<double, double>> out;
  for (double r : to_doubles(radii, "--radii"))
    for (double t : to_doubles(thetas, "--thetas")) out.emplace_back(r, t);
  return out;
}

ExactIndicator exact_indicator_of(const FunctionModel& model, double c) {
  if (const auto* sum = dynamic_cast<const ExponentialSum*>(&model)) return indicator_exact_expsum(*sum);
  return indicator_exact_product(dynamic_cast<const CanonicalProduct&>(model), c);
}

// ---------------------------------------------------------------------------
// subcommands

struct Options {
  FunctionOpt fn;
  GrowthOpts growth;
  PlanOpts plan;
  std::string out_path;

  // indicator
  int theta_count = 360;
  std::string radii;
  // density / check-14
  std::optional<double> annulus;
  std::string set = "A";
  int disk_samples = 16;
  std::string alpha = "sectors:2,1";
  double r0 = 0.0;
  double tail_tol = 1e-10;
  // dynamics
  std::string window;
  std::string size = "256x256";
  std::optional<double> orbit_r0;
  int max_iter = 50;
  double bailout = 500.0;
  // verify-crg / check-8l
  std::string thetas;
  double counting_c = 1.0;
  int depth = 1;
  double hypothesis_constant = 1.0;
  // schwarz-check
  std::string centers;
  double t = 1.0;
  int nodes = 512;
  // covering
  std::string points_path, radii_path, zeros_path, disks_path, cert_path;
  double H = 0.1, R = 1.0, eta = 0.1;
  std::size_t probes = 10000;
};

std::string cmd_indicator(Options& o) {
  if (o.theta_count < 1) usage("--thetas must be positive");
  const auto radii = to_doubles(o.radii, "--radii");
  const double rmax = *std::max_element(radii.begin(), radii.end());
  auto model = o.fn.model(rmax);
  const ProximateOrder po = ProximateOrder::constant(order_for(o.growth, *model));
  std::vector<double> thetas(static_cast<std::size_t>(o.theta_count));
  for (int i = 0; i < o.theta_count; ++i) thetas[i] = 2.0 * std::numbers::pi * i / o.theta_count;

  std::optional<ExactIndicator> exact;
  try {
    exact = exact_indicator_of(*model, o.counting_c);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::InvalidArgument) throw;  // integer-order product: no closed form
  }
  const EmpiricalIndicator emp = indicator_empirical(*model, po, thetas, radii);
  std::ostringstream csv;
  write_csv_header(csv, {"theta", "h_exact", "h_empirical"});
  for (std::size_t i = 0; i < thetas.size(); ++i)
    write_csv_row(csv, {thetas[i], exact ? (*exact)(thetas[i]) : std::nan(""), emp.values[i]});
  return csv.str();
}

std::string cmd_density(Options& o) {
  if (!o.annulus || !(*o.annulus > 0.0)) usage("--annulus r > 0 is required");
  if (o.set != "A" && o.set != "B") usage("--set must be A or B");
  const SamplePlan plan = o.plan.plan();
  auto model = o.fn.model(2.0 * *o.annulus + 64.0);
  const GrowthMinorant beta = make_beta(o.growth, *model);
  const bool want_b = o.set == "B";
  auto predicate = [&](Complex z) {
    try {
      return want_b ? membership_B(*model, beta, z, o.disk_samples).in_B : membership_A(*model, beta, z).in_A;
    } catch (const Error& e) {
      if (e.code() == ErrorCode::NearZero || e.code() == ErrorCode::OverflowUnrepresentable) return false;
      throw;
    }
  };
  const DensityReport report = annulus_density(predicate, AnnulusSpec{*o.annulus}, plan);
  Json j{{"format_version", kFormatVersion},
         {"command", "density"},
         {"function", render(o.fn.ast)},
         {"set", o.set},
         {"beta", beta.description()}};
  j.update(to_json(report));
  return dump(j);
}

std::string cmd_check14(Options& o) {
  const SamplePlan plan = o.plan.plan();
  const auto radii = to_doubles(o.radii, "--radii");
  const double rmax = *std::max_element(radii.begin(), radii.end());
  auto model = o.fn.model(2.0 * rmax + 64.0);
  const GrowthMinorant beta = make_beta(o.growth, *model);
  const DensityBudget alpha = make_alpha(o.alpha);
  if (!(o.tail_tol > 0.0)) usage("--tail-tol must be positive");
  const SeriesCheck series = series_condition_check(alpha, beta, o.r0, o.tail_tol);
  const auto rows = hypothesis_check_14b(*model, beta, alpha, radii, plan, o.disk_samples);

  Json margins = Json::array();
  for (const MarginRow& row : rows) {
    Json m{{"r", row.r}, {"alpha", row.alpha}, {"margin", row.margin}, {"negative", row.negative}};
    m.update(to_json(row.density));
    margins.push_back(std::move(m));
  }
  Json j{{"format_version", kFormatVersion},
         {"command", "check-14"},
         {"function", render(o.fn.ast)},
         {"beta", beta.description()},
         {"alpha", alpha.description()},
         {"fast_escaping", beta.dominates_exp_power()},
         {"series",
          {{"r0", o.r0},
           {"tail_tol", o.tail_tol},
           {"converges", series.converges},
           {"partial_sum", series.partial_sum},
           {"terms_used", series.terms_used}}},
         {"margins", margins}};
  return dump(j);
}

OrbitParams orbit_params(const Options& o, double default_r0) {
  return {o.orbit_r0.value_or(default_r0), o.max_iter, o.bailout};
}

Window parse_window(const std::string& text) {
  const auto v = to_doubles_n(text, "--window", 4);
  return {v[0], v[1], v[2], v[3]};
}

std::string cmd_escape_map(Options& o) {
  if (o.window.empty()) usage("--window x0,x1,y0,y1 is required");
  const Window w = parse_window(o.window);
  const auto [width, height] = to_size(o.size, "--size");
  auto model = o.fn.model(std::max({std::abs(w.x0), std::abs(w.x1), std::abs(w.y0), std::abs(w.y1)}) * 2.0);
  const GrowthMinorant beta = make_beta(o.growth, *model);
  const EscapeMap map = escape_map(*model, w, width, height, beta, orbit_params(o, 1.0));
  std::ostringstream pgm;
  write_pgm(pgm, map);
  return pgm.str();
}

std::string cmd_measure(Options& o) {
  if (o.window.empty() == !o.annulus) usage("exactly one of --window or --annulus is required");
  const SamplePlan plan = o.plan.plan();
  Region region;
  double default_r0 = 1.0, extent = 0.0;
  if (o.annulus) {
    if (!(*o.annulus > 0.0)) usage("--annulus must be positive");
    region = AnnulusSpec{*o.annulus};
    default_r0 = 0.5 * *o.annulus;
    extent = 2.0 * *o.annulus;
  } else {
    const Window w = parse_window(o.window);
    region = w;
    extent = std::max({std::abs(w.x0), std::abs(w.x1), std::abs(w.y0), std::abs(w.y1)}) * 2.0;
  }
  auto model = o.fn.model(extent);
  const GrowthMinorant beta = make_beta(o.growth, *model);
  const OrbitParams params = orbit_params(o, default_r0);
  const MeasureReport m = measure_estimate(*model, region, plan, beta, params);
  Json j{{"format_version", kFormatVersion},
         {"command", "measure"},
         {"function", render(o.fn.ast)},
         {"beta", beta.description()},
         {"r0", params.r0},
         {"max_iter", params.max_iter},
         {"bailout_log", params.bailout_log}};
  j.update(to_json(m.density));
  j["escaped"] = m.escaped;
  j["survived"] = m.survived;
  j["zero_hits"] = m.zero_hits;
  j["indeterminate"] = m.indeterminate;
  j["fast_escaping"] = m.fast_escaping;
  return dump(j);
}

std::string cmd_verify_crg(Options& o) {
  if (!o.fn.is_product()) usage("verify-crg needs a product: spec");
  const auto samples = sample_grid(o.radii, o.thetas);
  double rmax = 1.0;
  for (const auto& s : samples) rmax = std::max(rmax, s.first);
  auto model = o.fn.model(rmax);
  const auto& product = dynamic_cast<const CanonicalProduct&>(*model);
  const ProximateOrder po = ProximateOrder::constant(o.growth.rho.value_or(product.convergence_exponent()));
  const auto rows = verify_crg_theorem15(product, o.counting_c, po, o.depth, samples, o.hypothesis_constant);
  std::ostringstream csv;
  write_csv_header(csv, {"r", "theta", "measured", "predicted", "residual", "residual_over_V"});
  for (const CRGComparison& c : rows)
    write_csv_row(csv, {c.r, c.theta, c.measured, c.predicted, c.residual, c.residual_over_V});
  return csv.str();
}

std::string cmd_check_8l(Options& o) {
  const auto samples = sample_grid(o.radii, o.thetas);
  double rmax = 1.0;
  for (const auto& s : samples) rmax = std::max(rmax, s.first);
  auto model = o.fn.model(rmax);
  const ProximateOrder po = ProximateOrder::constant(order_for(o.growth, *model));
  const ExactIndicator ind = exact_indicator_of(*model, o.counting_c);
  const auto rows = check_8l(*model, ind, po, o.depth, samples);
  std::ostringstream csv;
  write_csv_header(csv, {"r", "theta", "re_zL", "predicted", "residual"});
  for (const SectorResidual& s : rows) write_csv_row(csv, {s.r, s.theta, s.re_zL, s.predicted, s.residual});
  return csv.str();
}

std::string cmd_schwarz(Options& o) {
  const auto centers = to_points(o.centers, "--centers");
  double rmax = 1.0;
  for (const Complex& c : centers) rmax = std::max(rmax, std::abs(c) + 2.0 * o.t);
  auto model = o.fn.model(rmax);
  Json checks = Json::array();
  double worst = 0.0;
  for (const Complex& c : centers) {
    const Complex schwarz = schwarz_log_derivative(*model, c, o.t, o.nodes);
    const Complex analytic = model->log_derivative(c);
    const double scale = std::max(std::abs(analytic), 1e-300);
    const double rel = std::abs(schwarz - analytic) / scale;
    worst = std::max(worst, rel);
    checks.push_back(Json{{"center_re", c.real()},
                          {"center_im", c.imag()},
                          {"schwarz_re", schwarz.real()},
                          {"schwarz_im", schwarz.imag()},
                          {"analytic_re", analytic.real()},
                          {"analytic_im", analytic.imag()},
                          {"relative_difference", rel}});
  }
  Json j{{"format_version", kFormatVersion}, {"command", "schwarz-check"}, {"function", render(o.fn.ast)},
         {"radius", o.t},  {"nodes", o.nodes},  {"checks", checks},
         {"max_relative_difference", worst}};
  return dump(j);
}

struct CoveringOutput {
  DiskSet disks;
  Json certificate;
  bool passed = true;
};

void write_covering(const Options& o, const CoveringOutput& result, std::ostream& out) {
  std::ostringstream disks;
  write_disk_set(disks, result.disks);
  emit(o.disks_path, disks.str(), out);
  emit(o.cert_path, dump(result.certificate), out);
}

CoveringOutput cmd_besicovitch(const Options& o) {
  const auto points = read_points(o.points_path);
  const auto radii = read_reals(o.radii_path);
  if (points.empty()) usage("--points: no points");
  const BesicovitchCover cover = besicovitch_cover(points, radii);
  double x0 = points[0].real(), x1 = x0, y0 = points[0].imag(), y1 = y0;
  for (const Disk& d : cover.disks.disks()) {
    x0 = std::min(x0, d.center.real() - d.radius);
    x1 = std::max(x1, d.center.real() + d.radius);
    y0 = std::min(y0, d.center.imag() - d.radius);
    y1 = std::max(y1, d.center.imag() + d.radius);
  }
  const BesicovitchAudit audit = audit_besicovitch(cover, points, halton_box(o.probes, x0, x1, y0, y1));
  CoveringOutput out{cover.disks, {}, audit.passed()};
  out.certificate = Json{{"format_version", kFormatVersion},
                         {"command", "covering besicovitch"},
                         {"points", points.size()},
                         {"disks", to_json(cover.disks)},
                         {"covers_all_points", audit.covers_all},
                         {"probes", audit.probes},
                         {"max_multiplicity", audit.max_multiplicity},
                         {"multiplicity_bound", BesicovitchAudit::kMultiplicityBound},
                         {"passed", audit.passed()}};
  return out;
}

CoveringOutput cmd_fuchs(const Options& o) {
  const auto points = read_points(o.points_path);
  const FuchsMacintyreResult r = fuchs_macintyre_disks(points, o.H, o.probes);
  CoveringOutput out{r.disks, {}, true};
  out.certificate = Json{{"format_version", kFormatVersion},
                         {"command", "covering fuchs"},
                         {"points", points.size()},
                         {"H", r.H},
                         {"disks", to_json(r.disks)},
                         {"area_bound", r.area_bound},
                         {"probes_outside", r.probes_used},
                         {"max_harmonic_ratio", r.max_harmonic_ratio},
                         {"passed", true}};
  return out;
}

CoveringOutput cmd_cartan(const Options& o) {
  const auto zeros = read_points(o.zeros_path);
  const CartanLevinResult r = cartan_levin_disks(zeros, o.R, o.eta, o.probes);
  CoveringOutput out{r.disks, {}, true};
  out.certificate = Json{{"format_version", kFormatVersion},
                         {"command", "covering cartan"},
                         {"zeros", zeros.size()},
                         {"R", o.R},
                         {"eta", o.eta},
                         {"disks", to_json(r.disks)},
                         {"radius_bound", r.radius_bound},
                         {"log_M", r.log_M},
                         {"lower_bound", r.lower_bound},
                         {"probes_outside", r.probes_used},
                         {"min_log_abs", r.probes_used > 0 ? Json(r.min_log_abs) : Json(nullptr)},
                         {"passed", true}};
  return out;
}

}  // namespace

int exit_code_for(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return kExitUsage;
    case ErrorCode::CertificateFailure: return kExitCertificate;
    default: return kExitNumeric;
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"crglab: growth, escape criteria and covering lemmas for entire functions", "crglab"};
  app.require_subcommand(1);
  Options o;
  std::optional<unsigned> threads;
  app.add_option("--threads", threads, "worker threads (overrides CRG_THREADS)")->check(CLI::PositiveNumber);

  auto fn_option = [&](CLI::App* cmd) { cmd->add_option("--fn", o.fn.spec, "function spec")->required(); };
  auto out_option = [&](CLI::App* cmd) { cmd->add_option("--out", o.out_path, "output file (default stdout)"); };

  auto* indicator = app.add_subcommand("indicator", "CSV of theta, exact and empirical indicator");
  fn_option(indicator);
  out_option(indicator);
  indicator->add_option("--thetas", o.theta_count, "number of equally spaced angles");
  indicator->add_option("--radii", o.radii, "radius ladder, comma separated")->required();
  indicator->add_option("--rho", o.growth.rho, "order (default: order of the function)");
  indicator->add_option("--c", o.counting_c, "counting constant for product indicators");

  auto* density = app.add_subcommand("density", "JSON density of A or B in ann(r)");
  fn_option(density);
  out_option(density);
  add_growth_options(density, o.growth);
  add_plan_options(density, o.plan);
  density->add_option("--annulus", o.annulus, "annulus parameter r")->required();
  density->add_option("--set", o.set, "A or B");
  density->add_option("--disk-samples", o.disk_samples, "samples per circle for B");

  auto* check14 = app.add_subcommand("check-14", "JSON: series condition and density margins");
  fn_option(check14);
  out_option(check14);
  add_growth_options(check14, o.growth);
  add_plan_options(check14, o.plan);
  check14->add_option("--alpha", o.alpha, "density budget: sectors:m,N | eps3:f,N | invlog:k | const:a | zero");
  check14->add_option("--r0", o.r0, "series start")->required();
  check14->add_option("--tail-tol", o.tail_tol, "series tail tolerance");
  check14->add_option("--radii", o.radii, "annulus radii, comma separated")->required();
  check14->add_option("--disk-samples", o.disk_samples, "samples per circle for B");

  auto* emap = app.add_subcommand("escape-map", "PGM raster of escape verdicts");
  fn_option(emap);
  out_option(emap);
  add_growth_options(emap, o.growth);
  emap->add_option("--window", o.window, "x0,x1,y0,y1")->required();
  emap->add_option("--size", o.size, "WxH");
  emap->add_option("--r0", o.orbit_r0, "orbit gate r0");
  emap->add_option("--max-iter", o.max_iter, "iteration cap");
  emap->add_option("--bailout", o.bailout, "bailout log-modulus");

  auto* measure = app.add_subcommand("measure", "JSON share of escaping samples");
  fn_option(measure);
  out_option(measure);
  add_growth_options(measure, o.growth);
  add_plan_options(measure, o.plan);
  measure->add_option("--window", o.window, "x0,x1,y0,y1");
  measure->add_option("--annulus", o.annulus, "annulus parameter r");
  measure->add_option("--r0", o.orbit_r0, "orbit gate r0 (default r/2 for annuli, 1 for windows)");
  measure->add_option("--max-iter", o.max_iter, "iteration cap");
  measure->add_option("--bailout", o.bailout, "bailout log-modulus");

  auto* verify = app.add_subcommand("verify-crg", "CSV comparison of a product with its asymptotic");
  fn_option(verify);
  out_option(verify);
  verify->add_option("--radii", o.radii, "radii, comma separated")->required();
  verify->add_option("--thetas", o.thetas, "angles, comma separated")->required();
  verify->add_option("--c", o.counting_c, "counting constant c");
  verify->add_option("--rho", o.growth.rho, "order (default 1/power)");
  verify->add_option("--depth", o.depth, "cascade depth N");
  verify->add_option("--hypothesis-constant", o.hypothesis_constant, "allowed |n(r) - c V| / (eps V)");

  auto* schwarz = app.add_subcommand("schwarz-check", "JSON Schwarz reconstruction of f'/f");
  fn_option(schwarz);
  out_option(schwarz);
  schwarz->add_option("--centers", o.centers, "disk centres re:im,re:im,...")->required();
  schwarz->add_option("--t", o.t, "disk radius");
  schwarz->add_option("--nodes", o.nodes, "trapezoid nodes (power of two)");

  auto* c8l = app.add_subcommand("check-8l", "CSV residuals of Re(zL) against rho h V");
  fn_option(c8l);
  out_option(c8l);
  c8l->add_option("--radii", o.radii, "radii, comma separated")->required();
  c8l->add_option("--thetas", o.thetas, "angles, comma separated")->required();
  c8l->add_option("--rho", o.growth.rho, "order (default: order of the function)");
  c8l->add_option("--depth", o.depth, "cascade depth N");
  c8l->add_option("--c", o.counting_c, "counting constant for products");

  auto* covering = app.add_subcommand("covering", "exceptional disk constructions");
  covering->require_subcommand(1);
  auto disk_outputs = [&](CLI::App* cmd) {
    cmd->add_option("--disks", o.disks_path, "DiskSet output (default stdout)");
    cmd->add_option("--cert", o.cert_path, "certificate JSON output (default stdout)");
    cmd->add_option("--probes", o.probes, "audit probe count");
  };
  auto* besi = covering->add_subcommand("besicovitch", "greedy Besicovitch cover");
  besi->add_option("--points", o.points_path, "file of 're im' lines")->required();
  besi->add_option("--radii", o.radii_path, "file of radii, one per line")->required();
  disk_outputs(besi);
  auto* fuchs = covering->add_subcommand("fuchs", "Fuchs-Macintyre disks");
  fuchs->add_option("--points", o.points_path, "file of 're im' lines")->required();
  fuchs->add_option("--H", o.H, "scale H")->required();
  disk_outputs(fuchs);
  auto* cartan = covering->add_subcommand("cartan", "Cartan/Levin minimum-modulus disks");
  cartan->add_option("--zeros", o.zeros_path, "file of 're im' lines")->required();
  cartan->add_option("--R", o.R, "radius R")->required();
  cartan->add_option("--eta", o.eta, "eta in (0, 3e/2)")->required();
  disk_outputs(cartan);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    std::optional<ScopedThreadLimit> limit;
    if (threads) limit.emplace(*threads);
    if (!o.fn.spec.empty()) o.fn.parse();

    if (covering->parsed()) {
      CoveringOutput result;
      if (besi->parsed()) result = cmd_besicovitch(o);
      else if (fuchs->parsed()) result = cmd_fuchs(o);
      else result = cmd_cartan(o);
      write_covering(o, result, out);
      if (!result.passed) {
        err << "error: covering audit failed\n";
        return kExitCertificate;
      }
      return kExitOk;
    }

    std::string content;
    if (indicator->parsed()) content = cmd_indicator(o);
    else if (density->parsed()) content = cmd_density(o);
    else if (check14->parsed()) content = cmd_check14(o);
    else if (emap->parsed()) content = cmd_escape_map(o);
    else if (measure->parsed()) content = cmd_measure(o);
    else if (verify->parsed()) content = cmd_verify_crg(o);
    else if (schwarz->parsed()) content = cmd_schwarz(o);
    else content = cmd_check_8l(o);
    emit(o.out_path, content, out);
    return kExitOk;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitNumeric;
  }
}

}  // namespace crg::cli
