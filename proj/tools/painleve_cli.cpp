// Command-line front end for the tau-series library.
//
//   painleve <classify|solve|gil|compare|radius|eval|residual> [options]
//
// Results go to stdout, or to <out>/<command>.{json,csv} with --out. Errors
// are written to stderr as {"error": {"code": ..., "message": ...}} and the
// process exits with 2 (validation/unsupported), 3 (resonance) or 4 (fit).

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "painleve/painleve.hpp"

namespace {

using namespace painleve;
using io::json;

struct Ray {
  double arg = 0.0;
  std::optional<double> r_min, r_max;
  int points = 32;
};

struct Job {
  std::string command;
  std::optional<std::string> equation;
  std::optional<json> form;
  EquationParams params;
  std::optional<ThetaVI> theta;
  Complex sigma{0.31, 0.12};
  Complex eta{};
  SeedCoeffs seeds{1.0, 1.0, 1.0};
  int weight = 8;
  double sector = 0.0;
  std::optional<int> nrange;
  std::optional<std::string> convention;
  std::optional<std::string> out;
  std::string format = "json";
  bool plot = false;
  std::optional<std::string> series_path;
  Ray ray;
};

Complex parse_complex(const std::string& text, const std::string& what) {
  std::stringstream ss(text);
  std::string re, im;
  std::getline(ss, re, ',');
  std::getline(ss, im, ',');
  std::string rest;
  if (std::getline(ss, rest)) fail(ErrorCode::validation, what + ": expected 're' or 're,im'");
  try {
    std::size_t used = 0;
    const double r = std::stod(re, &used);
    require(used == re.size(), what + ": trailing characters in '" + re + "'");
    double i = 0.0;
    if (!im.empty()) {
      i = std::stod(im, &used);
      require(used == im.size(), what + ": trailing characters in '" + im + "'");
    }
    const Complex c(r, i);
    io::require_finite(c, what);
    return c;
  } catch (const std::logic_error&) {
    fail(ErrorCode::validation, what + ": cannot parse '" + text + "'");
  }
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  require(static_cast<bool>(in), "cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    fail(ErrorCode::validation, "invalid JSON in '" + path + "': " + e.what());
  }
}

double finite_number(const json& v, const std::string& what) {
  require(v.is_number(), what + " must be a number");
  const double d = v.get<double>();
  require(std::isfinite(d), what + " must be finite");
  return d;
}

/// Strict config: a version field and only known keys.
void apply_config(const json& cfg, Job& job) {
  require(cfg.is_object(), "config must be a JSON object");
  require(cfg.contains("version"), "config needs a version field");
  require(cfg["version"] == 1, "unsupported config version (expected 1)");
  auto cplx = [](const json& v, const std::string& k) {
    const Complex c = io::complex_from_json(v, k);
    io::require_finite(c, k);
    return c;
  };
  for (const auto& [key, v] : cfg.items()) {
    if (key == "version") continue;
    if (key == "command") job.command = v.get<std::string>();
    else if (key == "equation") job.equation = v.get<std::string>();
    else if (key == "form") job.form = v;
    else if (key == "theta0") job.params.theta0 = cplx(v, key);
    else if (key == "thetat") job.params.thetat = cplx(v, key);
    else if (key == "theta1") job.params.theta1 = cplx(v, key);
    else if (key == "thetainf") job.params.thetainf = cplx(v, key);
    else if (key == "theta_ast") job.params.theta_ast = cplx(v, key);
    else if (key == "theta_star") job.params.theta_star = cplx(v, key);
    else if (key == "e1") job.params.e1 = cplx(v, key);
    else if (key == "e2") job.params.e2 = cplx(v, key);
    else if (key == "sigma4") job.params.sigma4 = cplx(v, key);
    else if (key == "sigma") job.sigma = cplx(v, key);
    else if (key == "eta") job.eta = cplx(v, key);
    else if (key == "seeds") {
      require(v.is_object(), "seeds must be an object");
      for (const auto& [sk, sv] : v.items()) {
        if (sk == "a00") job.seeds.a00 = cplx(sv, sk);
        else if (sk == "a10") job.seeds.a10 = cplx(sv, sk);
        else if (sk == "a01") job.seeds.a01 = cplx(sv, sk);
        else fail(ErrorCode::validation, "unknown seeds field '" + sk + "'");
      }
    } else if (key == "weight") job.weight = v.get<int>();
    else if (key == "sector") job.sector = finite_number(v, key);
    else if (key == "nrange") job.nrange = v.get<int>();
    else if (key == "convention") job.convention = v.get<std::string>();
    else if (key == "out") job.out = v.get<std::string>();
    else if (key == "format") job.format = v.get<std::string>();
    else if (key == "plot") job.plot = v.get<bool>();
    else if (key == "series") job.series_path = v.get<std::string>();
    else if (key == "ray") {
      require(v.is_object(), "ray must be an object");
      for (const auto& [rk, rv] : v.items()) {
        if (rk == "arg") job.ray.arg = finite_number(rv, "ray.arg");
        else if (rk == "r_min") job.ray.r_min = finite_number(rv, "ray.r_min");
        else if (rk == "r_max") job.ray.r_max = finite_number(rv, "ray.r_max");
        else if (rk == "points") job.ray.points = rv.get<int>();
        else fail(ErrorCode::validation, "unknown ray field '" + rk + "'");
      }
    } else {
      fail(ErrorCode::validation, "unknown config field '" + key + "'");
    }
  }
}

void fill_theta(Job& job) {
  const auto& p = job.params;
  if (p.theta0 || p.thetat || p.theta1 || p.thetainf)
    job.theta = ThetaVI{p.theta0.value_or(0.0), p.thetat.value_or(0.0), p.theta1.value_or(0.0), p.thetainf.value_or(0.0)};
}

ThetaVI need_theta(const Job& job) {
  const auto& p = job.params;
  require(p.theta0 && p.thetat && p.theta1 && p.thetainf, "theta0, thetat, theta1, thetainf are required");
  return *job.theta;
}

BilinearForm job_equation(const Job& job) {
  if (job.form) {
    require(!job.equation, "give either an equation name or an explicit form, not both");
    return io::form_from_json(*job.form);
  }
  require(job.equation.has_value(), "an equation name (--equation) or form (--form) is required");
  return build_named_equation(parse_equation_name(*job.equation), job.params);
}

/// The equation ready for the recurrence: gauge-absorbed when its lowest part
/// carries an extra D^2 multiple.
std::pair<BilinearForm, Complex> normal_form(const BilinearForm& eq) {
  if (classify_normal_form(eq).accepted) return {eq, Complex{}};
  const GaugeResult g = gauge_absorb(eq);
  return {g.equation, g.alpha};
}

class Output {
 public:
  explicit Output(const Job& job) : job_(job) {
    require(job.format == "json" || job.format == "csv", "--format must be csv or json");
    if (job.out) std::filesystem::create_directories(*job.out);
    require(!job.plot || job.out.has_value(), "--plot needs --out");
  }

  void emit(const json& j, const std::string& csv) const {
    const std::string text = job_.format == "json" ? j.dump(2) + "\n" : csv;
    if (job_.out)
      write(job_.command + "." + job_.format, text);
    else
      std::cout << text;
  }

  void write(const std::string& name, const std::string& text) const {
    const auto path = std::filesystem::path(*job_.out) / name;
    std::ofstream f(path);
    require(static_cast<bool>(f), "cannot write '" + path.string() + "'");
    f << text;
  }

  /// Data CSV plus a gnuplot script drawing column `ycol` against `xcol`.
  void plot(const std::string& stem, const std::string& csv, int xcol, int ycol, const std::string& xlabel,
            const std::string& ylabel, bool logy) const {
    if (!job_.plot) return;
    write(stem + "_plot.csv", csv);
    std::ostringstream gp;
    gp << "set datafile separator ','\n"
       << "set key off\n"
       << "set xlabel '" << xlabel << "'\n"
       << "set ylabel '" << ylabel << "'\n";
    if (logy) gp << "set logscale y\n";
    gp << "set terminal pngcairo size 800,600\n"
       << "set output '" << stem << ".png'\n"
       << "plot '" << stem << "_plot.csv' every ::1 using " << xcol << ":" << ycol << " with linespoints\n";
    write(stem + ".gp", gp.str());
  }

 private:
  const Job& job_;
};

std::string magnitude_by_weight_csv(const FormalSeries& f) {
  std::map<int, double> mags;
  for (const auto& [p, c] : f.terms()) mags[p.weight()] = std::max(mags[p.weight()], std::abs(c));
  std::string csv = "weight,max_abs\n";
  for (const auto& [w, m] : mags) csv += std::to_string(w) + "," + io::format_double(m) + "\n";
  return csv;
}

int run_classify(const Job& job) {
  const BilinearForm eq = job_equation(job);
  const Classification raw = classify_normal_form(eq);
  json j;
  j["equation"] = eq.name() ? json(*eq.name()) : json(nullptr);
  j["classification"] = io::classification_to_json(raw);
  std::string csv = "stage,verdict,scalar_re,scalar_im,alpha_re,alpha_im\n";
  csv += std::string("raw,") + (raw.accepted ? "accept" : "reject") + "," + io::format_double(raw.scalar.real()) + "," +
         io::format_double(raw.scalar.imag()) + ",0,0\n";
  if (!raw.accepted) {
    try {
      const GaugeResult g = gauge_absorb(eq);
      const Classification after = classify_normal_form(g.equation);
      j["gauge"] = {{"alpha", io::complex_to_json(g.alpha)}, {"classification", io::classification_to_json(after)}};
      csv += std::string("gauged,") + (after.accepted ? "accept" : "reject") + "," +
             io::format_double(after.scalar.real()) + "," + io::format_double(after.scalar.imag()) + "," +
             io::format_double(g.alpha.real()) + "," + io::format_double(g.alpha.imag()) + "\n";
    } catch (const Error& e) {
      j["gauge"] = {{"applicable", false}, {"reason", e.what()}};
    }
  }
  Output(job).emit(j, csv);
  return 0;
}

int run_solve(const Job& job) {
  const auto [eq, alpha] = normal_form(job_equation(job));
  const FormalSeries a = solve_recurrence(eq, job.seeds, job.sigma, job.weight);
  json j;
  j["equation"] = eq.name() ? json(*eq.name()) : json(nullptr);
  j["gauge_alpha"] = io::complex_to_json(alpha);
  j["series"] = io::series_to_json(a);
  Output out(job);
  out.emit(j, io::series_to_csv(a));
  out.plot("solve", magnitude_by_weight_csv(a), 1, 2, "weight", "max |a|", true);
  return 0;
}

int run_gil(const Job& job) {
  const ThetaVI th = need_theta(job);
  const std::string conv = job.convention.value_or("printed");
  require(conv != "auto", "gil needs an explicit convention (printed, flipped, signed)");
  const BlockSpec spec{th, job.sigma, job.eta, parse_convention(conv)};
  const int nr = job.nrange.value_or(default_n_range(job.weight));
  const FormalSeries tau = tau_vi_series(spec, nr, job.weight);
  const FormalSeries f = gauge_to_f(tau, th, job.weight);
  const auto [sigma_r, m0] = normalize_sigma(job.sigma);
  json j;
  j["convention"] = to_string(spec.convention);
  j["sigma_reduced"] = io::complex_to_json(sigma_r);
  j["m0"] = m0;
  j["n_range"] = nr;
  json table = json::array();
  std::string csv = "fourier_m,level,m_x2,n_x2,re,im\n";
  for (const auto& [p, c] : tau.terms()) {
    const GilIndex g = gil_from_grid(p);
    table.push_back({{"fourier_m", g.fourier_m}, {"level", g.level_n}, {"re", c.real()}, {"im", c.imag()}});
    csv += std::to_string(g.fourier_m) + "," + std::to_string(g.level_n) + "," + std::to_string(p.two_m()) + "," +
           std::to_string(p.two_n()) + "," + io::format_double(c.real()) + "," + io::format_double(c.imag()) + "\n";
  }
  j["blocks"] = std::move(table);
  j["tau"] = io::series_to_json(tau);
  j["f"] = io::series_to_json(f);
  Output out(job);
  out.emit(j, csv);
  out.plot("gil", magnitude_by_weight_csv(tau), 1, 2, "weight", "max |c|", true);
  return 0;
}

int run_compare(const Job& job) {
  if (job.equation && *job.equation != "VI")
    fail(ErrorCode::unsupported, "unsupported: combinatorial series implemented for VI only");
  require(!job.form, "compare works on the P_VI equation only; explicit forms are not accepted");
  const ThetaVI th = need_theta(job);
  const std::string conv = job.convention.value_or("auto");
  std::vector<ConventionFlag> flags = conv == "auto" ? all_conventions() : std::vector{parse_convention(conv)};
  const int nr = job.nrange.value_or(default_n_range(job.weight));
  const VIFitReport rep = fit_vi_scalars(th, job.sigma, job.eta, job.weight, nr, flags);
  const VIFit& win = rep.winner();
  const FormalSeries f = vi_f_series(th, job.sigma, job.eta, win.convention, job.weight, nr);

  json j;
  j["n_range"] = nr;
  json fits = json::array();
  for (const auto& fit : rep.fits)
    fits.push_back({{"convention", to_string(fit.convention)},
                    {"e1", io::complex_to_json(fit.e1)},
                    {"e2", io::complex_to_json(fit.e2)},
                    {"sigma4", io::complex_to_json(fit.sigma4)},
                    {"max_rel_residual", fit.max_rel_residual}});
  j["fits"] = std::move(fits);
  j["winner"] = to_string(win.convention);
  json table = json::array();
  std::string csv = "m_x2,n_x2,re,im,used_in_fit\n";
  for (const auto& row : win.table) {
    table.push_back({{"m_x2", row.index.two_m()}, {"n_x2", row.index.two_n()}, {"re", row.value.real()},
                     {"im", row.value.imag()}, {"used_in_fit", row.used_in_fit}});
    csv += std::to_string(row.index.two_m()) + "," + std::to_string(row.index.two_n()) + "," +
           io::format_double(row.value.real()) + "," + io::format_double(row.value.imag()) + "," +
           (row.used_in_fit ? "1" : "0") + "\n";
  }
  j["residual_table"] = std::move(table);
  j["residual_scale"] = win.scale;
  bool ok = win.max_rel_residual <= 1e-8;
  if (ok) {
    const VICrossCheck cc = cross_check_vi(f, win, job.weight);
    j["recurrence_check"] = {{"gauge_alpha", io::complex_to_json(cc.alpha)},
                             {"offset_mismatch", std::abs(cc.offset_mismatch)},
                             {"max_rel_difference", cc.max_rel_difference}};
    ok = cc.max_rel_difference <= 1e-8 && std::abs(cc.offset_mismatch) <= 1e-8;
  }
  j["verified"] = ok;
  Output(job).emit(j, csv);
  if (!ok)
    fail(ErrorCode::fit_failure, "no convention makes the combinatorial series solve the equation (best relative residual " +
                                     io::format_double(win.max_rel_residual) + ")");
  return 0;
}

std::vector<GridIndex> resonant_indices(Complex sigma, int M) {
  std::vector<GridIndex> out;
  const RecurrenceOptions opt;
  for (int w = 1; w <= M; ++w)
    for (const auto& p : indices_of_weight(w))
      if (!is_free_index(p) && std::abs(divisor(p, sigma)) < opt.resonance_floor * std::pow(w, 4)) out.push_back(p);
  return out;
}

int run_radius(const Job& job) {
  const auto [eq, alpha] = normal_form(job_equation(job));
  const MajorantConstants mc = majorant_constants(eq, job.sigma, job.seeds);
  const RadiusEstimate est = radius_estimate(mc, job.sector);
  json j = io::radius_report(mc, est, resonant_indices(job.sigma, job.weight));
  j["gauge_alpha"] = io::complex_to_json(alpha);
  std::string csv = "L,R,radius,sector\n" + io::format_double(mc.L) + "," + io::format_double(mc.R) + "," +
                    io::format_double(est.radius) + "," + io::format_double(est.sector_halfwidth) + "\n";
  Output(job).emit(j, csv);
  return 0;
}

int run_eval(const Job& job) {
  const auto [eq, alpha] = normal_form(job_equation(job));
  const FormalSeries a = solve_recurrence(eq, job.seeds, job.sigma, job.weight);
  const double sector = std::max(job.sector, std::abs(job.ray.arg));
  const MajorantConstants mc = majorant_constants(eq, job.sigma, job.seeds);
  const Majorant b = majorant_coeffs(mc, job.weight);
  const RadiusEstimate est = radius_estimate(mc, sector);
  const double r_max = job.ray.r_max.value_or(std::isfinite(est.radius) ? 0.5 * est.radius : 1.0);
  const double r_min = job.ray.r_min.value_or(r_max / job.ray.points);
  require(r_min > 0.0 && r_max >= r_min, "ray needs 0 < r_min <= r_max");
  require(job.ray.points >= 1, "ray needs at least one point");

  json rows = json::array();
  std::string csv = "r,arg,re,im,abs,tail_bound\n";
  for (int k = 0; k < job.ray.points; ++k) {
    const double r = job.ray.points == 1 ? r_min : r_min + (r_max - r_min) * k / (job.ray.points - 1);
    const Complex v = eval_polar(a, r, job.ray.arg);
    std::optional<double> tail;
    if (r < est.radius) {
      const Complex log_t(std::log(r), job.ray.arg);
      const double base = std::abs(std::exp(job.sigma * job.sigma * log_t));
      tail = base * tail_bound(mc, b, r, job.weight, sector);
    }
    rows.push_back({{"r", r}, {"arg", job.ray.arg}, {"re", v.real()}, {"im", v.imag()}, {"abs", std::abs(v)},
                    {"tail_bound", tail ? json(*tail) : json(nullptr)}});
    csv += io::format_double(r) + "," + io::format_double(job.ray.arg) + "," + io::format_double(v.real()) + "," +
           io::format_double(v.imag()) + "," + io::format_double(std::abs(v)) + "," +
           (tail ? io::format_double(*tail) : std::string("nan")) + "\n";
  }
  json j;
  j["gauge_alpha"] = io::complex_to_json(alpha);
  j["radius"] = std::isfinite(est.radius) ? json(est.radius) : json("inf");
  j["points"] = std::move(rows);
  Output out(job);
  out.emit(j, csv);
  out.plot("eval", csv, 1, 5, "r", "|tau(t)|", false);
  return 0;
}

int run_residual(const Job& job) {
  const BilinearForm raw = job_equation(job);
  FormalSeries f;
  BilinearForm eq = raw;
  Complex alpha{};
  if (job.series_path) {
    f = io::series_from_json(read_json_file(*job.series_path));
  } else {
    std::tie(eq, alpha) = normal_form(raw);
    f = solve_recurrence(eq, job.seeds, job.sigma, job.weight);
  }
  const int M = std::min(job.weight, f.max_weight());
  const FormalSeries r = residual(eq, f, M);
  json j;
  j["gauge_alpha"] = io::complex_to_json(alpha);
  j["max_abs"] = r.max_abs();
  j["series_max_abs"] = f.max_abs();
  j["residual"] = io::series_to_json(r);
  Output(job).emit(j, io::series_to_csv(r));
  return 0;
}

int dispatch(const Job& job) {
  require(job.weight >= 0, "--weight must be nonnegative");
  if (job.command == "classify") return run_classify(job);
  if (job.command == "solve") return run_solve(job);
  if (job.command == "gil") return run_gil(job);
  if (job.command == "compare") return run_compare(job);
  if (job.command == "radius") return run_radius(job);
  if (job.command == "eval") return run_eval(job);
  if (job.command == "residual") return run_residual(job);
  fail(ErrorCode::validation, "unknown command '" + job.command + "'");
}

int report_error(ErrorCode code, const std::string& message) {
  json j;
  j["error"] = {{"code", std::string(to_string(code))}, {"message", message}};
  std::cerr << j.dump() << "\n";
  return exit_code(code);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Painleve tau-function series: recurrence, combinatorial blocks, majorants"};
  app.require_subcommand(1);

  std::optional<std::string> config, out, format, seed00, seed10, seed01, sigma, eta, convention, equation, form_path,
      series_path;
  std::optional<std::string> th0, tht, th1, thinf, thast, thstar, e1, e2, s4;
  std::optional<int> weight, nrange, points;
  std::optional<double> sector, arg, r_min, r_max;
  bool plot = false;

  const std::vector<std::pair<std::string, std::string>> commands{
      {"classify", "lowest-degree test and gauge"},
      {"solve", "recurrence coefficients"},
      {"gil", "combinatorial P_VI tau series"},
      {"compare", "fit e1, e2, sigma4 and cross-validate the P_VI series"},
      {"radius", "majorant constants and convergence radius"},
      {"eval", "partial sums along a ray with tail bounds"},
      {"residual", "residual of a series in the equation"}};
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--config", config, "JSON job config (version 1)");
    sub->add_option("--out", out, "output directory");
    sub->add_option("--format", format, "csv or json");
    sub->add_option("--equation", equation, "V, III1, III2, III3, VI");
    sub->add_option("--form", form_path, "bilinear form JSON file");
    sub->add_option("--seed-a00", seed00, "re[,im]");
    sub->add_option("--seed-a10", seed10, "re[,im]");
    sub->add_option("--seed-a01", seed01, "re[,im]");
    sub->add_option("--sigma", sigma, "re[,im]");
    sub->add_option("--eta", eta, "re[,im]");
    sub->add_option("--theta0", th0, "re[,im]");
    sub->add_option("--thetat", tht, "re[,im]");
    sub->add_option("--theta1", th1, "re[,im]");
    sub->add_option("--thetainf", thinf, "re[,im]");
    sub->add_option("--theta-ast", thast, "theta_* (re[,im])");
    sub->add_option("--theta-star", thstar, "theta_star (re[,im])");
    sub->add_option("--e1", e1, "re[,im]");
    sub->add_option("--e2", e2, "re[,im]");
    sub->add_option("--sigma4", s4, "re[,im]");
    sub->add_option("--weight", weight, "truncation weight M");
    sub->add_option("--sector", sector, "sector half-width in radians");
    sub->add_option("--nrange", nrange, "Fourier window |n| <= k");
    sub->add_option("--convention", convention, "printed, flipped, signed or auto");
    sub->add_option("--series", series_path, "series JSON file (residual)");
    sub->add_option("--arg", arg, "ray argument (eval)");
    sub->add_option("--r-min", r_min, "ray start (eval)");
    sub->add_option("--r-max", r_max, "ray end (eval)");
    sub->add_option("--points", points, "ray samples (eval)");
    sub->add_flag("--plot", plot, "write gnuplot script and data");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return report_error(ErrorCode::validation, e.what());
  }

  try {
    Job job;
    if (config) apply_config(read_json_file(*config), job);
    const std::string cmd = app.get_subcommands().front()->get_name();
    require(job.command.empty() || job.command == cmd, "config command '" + job.command + "' does not match '" + cmd + "'");
    job.command = cmd;
    auto c = [](const std::optional<std::string>& s, const char* what) { return parse_complex(*s, what); };
    if (out) job.out = *out;
    if (format) job.format = *format;
    if (equation) job.equation = *equation;
    if (form_path) job.form = read_json_file(*form_path);
    if (seed00) job.seeds.a00 = c(seed00, "--seed-a00");
    if (seed10) job.seeds.a10 = c(seed10, "--seed-a10");
    if (seed01) job.seeds.a01 = c(seed01, "--seed-a01");
    if (sigma) job.sigma = c(sigma, "--sigma");
    if (eta) job.eta = c(eta, "--eta");
    if (th0) job.params.theta0 = c(th0, "--theta0");
    if (tht) job.params.thetat = c(tht, "--thetat");
    if (th1) job.params.theta1 = c(th1, "--theta1");
    if (thinf) job.params.thetainf = c(thinf, "--thetainf");
    if (thast) job.params.theta_ast = c(thast, "--theta-ast");
    if (thstar) job.params.theta_star = c(thstar, "--theta-star");
    if (e1) job.params.e1 = c(e1, "--e1");
    if (e2) job.params.e2 = c(e2, "--e2");
    if (s4) job.params.sigma4 = c(s4, "--sigma4");
    if (weight) job.weight = *weight;
    if (sector) job.sector = *sector;
    if (nrange) job.nrange = *nrange;
    if (convention) job.convention = *convention;
    if (series_path) job.series_path = *series_path;
    if (arg) job.ray.arg = *arg;
    if (r_min) job.ray.r_min = *r_min;
    if (r_max) job.ray.r_max = *r_max;
    if (points) job.ray.points = *points;
    job.plot = job.plot || plot;
    require(std::isfinite(job.sector) && std::isfinite(job.ray.arg), "numeric options must be finite");
    fill_theta(job);
    return dispatch(job);
  } catch (const Error& e) {
    return report_error(e.code(), e.what());
  } catch (const json::exception& e) {
    return report_error(ErrorCode::validation, std::string("JSON: ") + e.what());
  } catch (const std::filesystem::filesystem_error& e) {
    return report_error(ErrorCode::validation, e.what());
  }
}
