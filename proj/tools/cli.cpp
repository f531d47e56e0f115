#include "cli.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "lorhelix/curve_io.hpp"
#include "lorhelix/error.hpp"
#include "lorhelix/helix.hpp"

namespace lorhelix::cli {

namespace {

double parse_real(const std::string& text, const char* what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size() || !std::isfinite(v)) {
    throw Error(ErrorCode::InvalidArgument, std::string(what) + " '" + text + "' is not a finite number");
  }
  return v;
}

struct Options {
  std::string kappa;
  std::string tau;
  std::string epsilon;
  std::string axis = "any";
  bool mirror = false;
  bool frames = false;
  std::string grid;
  std::string out;
  std::string format;
  std::string name;
  std::string params;
  std::string input;
  std::string projection = "x1x2";
  double tol = 1e-3;
  std::optional<double> causal_tol;
};

CurveFormat output_format(const Options& o) {
  if (o.format == "json") return CurveFormat::Json;
  if (o.format == "csv") return CurveFormat::Csv;
  if (!o.format.empty()) throw Error(ErrorCode::InvalidArgument, "format must be csv or json");
  return format_for(o.out);
}

void write_text(const std::string& path, const std::string& text, std::ostream& out) {
  if (path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::IoError, "cannot write " + path);
  f << text;
  if (!f) throw Error(ErrorCode::IoError, "write failed for " + path);
}

void emit_curve(const Options& o, const CurveSamples& samples, const std::optional<CurveMeta>& meta,
                std::ostream& out) {
  std::ostringstream os;
  if (output_format(o) == CurveFormat::Json) {
    write_json(os, samples, meta, o.frames);
  } else {
    write_csv(os, samples, o.frames);
  }
  write_text(o.out, os.str(), out);
}

// A grid inside the pair's domain when the user gives none.
std::vector<double> default_grid(const IntrinsicPair& pair) {
  const auto d = pair.domain();
  double lo = std::max(d.lo, -2.0);
  double hi = std::min(d.hi, 2.0);
  if (d.lo == 0.0 && !std::isfinite(d.hi)) {
    lo = 0.5;
    hi = 3.0;
  }
  if (!d.closed) {
    const double inset = 0.05 * (hi - lo);
    if (lo == d.lo) lo += inset;
    if (hi == d.hi) hi -= inset;
  }
  return uniform_grid(lo, hi, 1e-3);
}

std::vector<double> grid_from(const Options& o, const IntrinsicPair& pair) {
  if (o.grid.empty()) return default_grid(pair);
  const auto g = parse_grid(o.grid);
  return uniform_grid(g.lo, g.hi, g.step);
}

ScalarFunction function_from(const std::string& text) {
  if (text.rfind("file:", 0) == 0) return ScalarFunction::load_csv(std::filesystem::path(text.substr(5)));
  return ScalarFunction::parse(text);
}

IntrinsicPair pair_from(const Options& o, int epsilon) {
  if (o.kappa.empty() || o.tau.empty()) {
    throw Error(ErrorCode::InvalidArgument, "--kappa and --tau are required");
  }
  IntrinsicPair pair{function_from(o.kappa), function_from(o.tau), epsilon, {}};
  pair.validate();
  return pair;
}

CurveMeta meta_of(const HelixSpec& spec) {
  return {short_name(spec.kind), spec.epsilon(), spec.m, spec.n, spec.phi};
}

std::string vec_text(const LorentzVector& v) {
  return "(" + format_number(v.x1()) + ", " + format_number(v.x2()) + ", " + format_number(v.x3()) + ")";
}

int reject(const Rejection& r, std::ostream& err) {
  err << "rejected: " << r.message << '\n';
  return kRejected;
}

int cmd_synth(const Options& o, double causal_tol, std::ostream& out, std::ostream& err) {
  const int eps = o.epsilon.empty() ? -1 : parse_epsilon(o.epsilon);
  const auto pair = pair_from(o, eps);
  std::variant<HelixSpec, Rejection> planned = Rejection{};
  try {
    planned = plan_helix(pair, parse_axis(o.axis), o.mirror);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::CaseConstraintViolated) throw;
    err << "rejected: " << e.what() << '\n';
    return kRejected;
  }
  if (const auto* r = std::get_if<Rejection>(&planned)) return reject(*r, err);
  const auto& spec = std::get<HelixSpec>(planned);

  const auto grid = grid_from(o, pair);
  const auto samples = synthesize(spec, grid);
  const auto axis_char = causal_character(spec.axis, causal_tol);
  const auto t0 = frame_closed_form(spec, 0.0).T;
  const auto angle = lorentz_angle(t0, spec.axis, causal_tol);

  std::ostream& info = o.out == "-" ? err : out;
  info << "case: " << short_name(spec.kind) << " (" << to_string(spec.kind) << ")\n"
       << "epsilon: " << spec.epsilon() << '\n'
       << "m: " << format_number(spec.m) << '\n'
       << "n: " << format_number(spec.n) << '\n'
       << "phi: " << format_number(spec.phi) << '\n'
       << "angle check: " << format_number(angle.phi) << " (" << to_string(angle.kind) << ")\n"
       << "axis: " << vec_text(spec.axis) << ' ' << to_string(axis_char.tag) << '\n'
       << "mirror: " << (spec.mirror ? "yes" : "no") << '\n'
       << "samples: " << samples.size() << '\n';
  if (!o.out.empty()) {
    emit_curve(o, samples, meta_of(spec), out);
    if (o.out != "-") info << "wrote: " << o.out << '\n';
  }
  return kOk;
}

int cmd_catalog(const Options& o, std::ostream& out, std::ostream& err) {
  if (o.name.empty()) throw Error(ErrorCode::InvalidArgument, "--name is required");
  const auto params = parse_params(o.params);
  const auto spec = catalog_spec(o.name, params);
  std::vector<double> grid;
  if (o.grid.empty()) {
    grid = catalog_grid(o.name, params);
  } else {
    const auto g = parse_grid(o.grid);
    grid = uniform_grid(g.lo, g.hi, g.step);
  }
  CurveSamples samples;
  samples.s = grid;
  samples.epsilon = spec.epsilon();
  samples.orientation = helix_orientation(spec);
  for (double s : grid) samples.psi.push_back(catalog_eval(o.name, params, s));

  std::ostream& info = o.out == "-" ? err : out;
  info << "entry: " << o.name << '\n' << "case: " << short_name(spec.kind) << '\n'
       << "samples: " << samples.size() << '\n';
  if (!o.out.empty()) {
    Options plain = o;
    plain.frames = false;
    emit_curve(plain, samples, meta_of(spec), out);
    if (o.out != "-") info << "wrote: " << o.out << '\n';
  }
  return kOk;
}

bool is_uniform(const std::vector<double>& s) {
  if (s.size() < 3) return false;
  const double h = s[1] - s[0];
  for (std::size_t i = 1; i + 1 < s.size(); ++i) {
    if (std::abs((s[i + 1] - s[i]) - h) > 1e-9 * std::abs(h)) return false;
  }
  return true;
}

int infer_epsilon(const CurveSamples& c) {
  const std::size_t i = c.size() / 2;
  if (i == 0 || i + 1 >= c.size()) throw Error(ErrorCode::InvalidArgument, "curve too short");
  const double h1 = c.s[i] - c.s[i - 1];
  const double h2 = c.s[i + 1] - c.s[i];
  const LorentzVector acc = 2.0 * (h2 * c.psi[i - 1] - (h1 + h2) * c.psi[i] + h1 * c.psi[i + 1]) /
                            (h1 * h2 * (h1 + h2));
  return metric(acc, acc) < 0.0 ? -1 : 1;
}

int verify_input(const Options& o, std::ostream& out, std::ostream& err) {
  CurveSamples curve;
  try {
    curve = load_curve(o.input);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kIoError;
  }

  int eps = 0;
  if (!o.epsilon.empty()) {
    eps = parse_epsilon(o.epsilon);
  } else if (curve.epsilon) {
    eps = *curve.epsilon;
  } else {
    eps = infer_epsilon(curve);
  }

  std::optional<HelixSpec> spec;
  if (!o.name.empty()) spec = catalog_spec(o.name, parse_params(o.params));
  const IntrinsicPair pair = spec ? spec->pair : pair_from(o, eps);
  if (!spec) {
    try {
      auto planned = plan_helix(pair, parse_axis(o.axis), o.mirror);
      if (auto* s = std::get_if<HelixSpec>(&planned)) spec = *s;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::CaseConstraintViolated) throw;
    }
  }

  std::optional<int> orientation;
  if (!curve.frames) orientation = spec ? helix_orientation(*spec) : kDefaultOrientation;
  const auto stencil = is_uniform(curve.s) ? Stencil::Central4 : Stencil::Central2;
  const double spacing = (curve.s.back() - curve.s.front()) / static_cast<double>(std::max<std::size_t>(1, curve.size() - 1));
  const std::size_t stride = std::min(estimation_stride(spacing), std::max<std::size_t>(1, curve.size() / 20));
  const std::size_t r = (stencil == Stencil::Central4 ? 4 : 2) * stride;
  if (curve.size() < 2 * r + 1) throw Error(ErrorCode::InvalidArgument, "curve has too few samples");

  double kerr = 0.0, terr = 0.0, serr = 0.0;
  double kmean = 0.0, tmean = 0.0;
  std::size_t count = 0;
  bool degenerate = false;
  const auto domain = pair.domain();
  for (std::size_t i = r; i + r < curve.size(); ++i) {
    if (!domain.contains(curve.s[i])) {
      throw Error(ErrorCode::OutOfDomain, "sample s = " + format_number(curve.s[i]) +
                                              " lies outside the intrinsic domain");
    }
    try {
      const auto est = estimate_frame(curve, i, stencil, orientation, stride);
      kerr = std::max(kerr, std::abs(est.kappa - pair.kappa(curve.s[i])));
      terr = std::max(terr, std::abs(est.tau - pair.tau(curve.s[i])));
      if (spec) serr = std::max(serr, std::abs(est.tau / est.kappa - spec->m));
      kmean += est.kappa;
      tmean += est.tau;
      ++count;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::DegenerateCurvature) throw;
      degenerate = true;
    }
  }
  const double speed = unit_speed_residual(curve);

  nlohmann::json j;
  j["input"] = o.input;
  j["samples"] = curve.size();
  j["epsilon"] = eps;
  j["kappa"] = pair.kappa.descriptor();
  j["tau"] = pair.tau.descriptor();
  j["stencil"] = stencil == Stencil::Central4 ? "central4" : "central2";
  j["stride"] = stride;
  j["recovered"] = {{"kappa_error", kerr},
                    {"tau_error", terr},
                    {"kappa_mean", count ? kmean / static_cast<double>(count) : 0.0},
                    {"tau_mean", count ? tmean / static_cast<double>(count) : 0.0}};
  j["unit_speed_residual"] = speed;
  j["tolerance"] = o.tol;
  if (spec) {
    j["case"] = short_name(spec->kind);
    j["m"] = spec->m;
    j["recovered"]["slope_error"] = serr;
    try {
      const auto synth = synthesize(*spec, curve.s);
      j["deviation_from_synthesis"] = max_deviation_modulo_translation(curve.psi, synth.psi);
    } catch (const Error&) {
      j["deviation_from_synthesis"] = nullptr;
    }
  } else {
    j["case"] = nullptr;
  }
  const bool ok = !degenerate && count > 0 && kerr <= o.tol && terr <= o.tol && (!spec || serr <= o.tol) &&
                  speed <= o.tol;
  j["verdict"] = ok ? "CONSISTENT" : "DISCREPANT";
  write_text(o.out.empty() ? "-" : o.out, j.dump(2) + "\n", out);
  return ok ? kOk : kDiscrepant;
}

int cmd_verify(const Options& o, std::ostream& out, std::ostream& err) {
  if (!o.input.empty()) return verify_input(o, out, err);
  if (o.name.empty()) throw Error(ErrorCode::InvalidArgument, "verify needs --input or --name");
  const auto rep = catalog_validate(o.name, parse_params(o.params));
  write_text(o.out.empty() ? "-" : o.out, rep.to_json(), out);
  return rep.consistent ? kOk : kDiscrepant;
}

int cmd_plot(const Options& o, std::ostream& out, std::ostream& err) {
  CurveSamples samples;
  std::string title;
  if (!o.input.empty()) {
    try {
      samples = load_curve(o.input);
    } catch (const Error& e) {
      err << "error: " << e.what() << '\n';
      return kIoError;
    }
    title = o.input;
  } else if (!o.name.empty()) {
    const auto params = parse_params(o.params);
    catalog_check(o.name, params);
    for (double s : catalog_grid(o.name, params)) {
      samples.s.push_back(s);
      samples.psi.push_back(catalog_eval(o.name, params, s));
    }
    title = o.name;
  } else {
    throw Error(ErrorCode::InvalidArgument, "plot needs --input or --name");
  }
  const auto res = render_svg(samples, parse_projection(o.projection), title + " " + o.projection);
  for (const auto& w : res.warnings) err << "warning: " << w << '\n';
  write_text(o.out.empty() ? "-" : o.out, res.svg, out);
  return kOk;
}

int cmd_list(std::ostream& out) {
  for (const auto& e : catalog_list()) {
    out << e.name << " [";
    bool first = true;
    for (const auto& k : e.param_keys) {
      out << (first ? "" : ", ") << k << '=' << format_number(e.figure_params.at(k));
      first = false;
    }
    out << "] " << e.formula << '\n';
  }
  return kOk;
}

// CLI11 reads "--s -2:2:1" as two options; glue such values to their flag.
std::vector<std::string> join_values(const std::vector<std::string>& args) {
  static const char* kValued[] = {"--s", "--epsilon", "--params"};
  std::vector<std::string> out;
  for (std::size_t i = 0; i < args.size(); ++i) {
    bool glued = false;
    for (const char* flag : kValued) {
      if (args[i] == flag && i + 1 < args.size() && !args[i + 1].empty() && args[i + 1][0] == '-' &&
          args[i + 1].rfind("--", 0) != 0) {
        out.push_back(args[i] + "=" + args[i + 1]);
        ++i;
        glued = true;
        break;
      }
    }
    if (!glued) out.push_back(args[i]);
  }
  return out;
}

}  // namespace

Grid parse_grid(const std::string& text) {
  const auto a = text.find(':');
  const auto b = a == std::string::npos ? a : text.find(':', a + 1);
  if (a == std::string::npos || b == std::string::npos || text.find(':', b + 1) != std::string::npos) {
    throw Error(ErrorCode::InvalidArgument, "grid must be min:max:step");
  }
  Grid g{parse_real(text.substr(0, a), "grid min"), parse_real(text.substr(a + 1, b - a - 1), "grid max"),
         parse_real(text.substr(b + 1), "grid step")};
  if (!(g.step > 0.0)) throw Error(ErrorCode::InvalidArgument, "grid step must be positive");
  if (!(g.lo < g.hi)) throw Error(ErrorCode::InvalidArgument, "grid min must be below max");
  return g;
}

int parse_epsilon(const std::string& text) {
  if (text == "+1" || text == "1") return 1;
  if (text == "-1") return -1;
  throw Error(ErrorCode::InvalidArgument, "epsilon must be +1 or -1");
}

AxisRequest parse_axis(const std::string& text) {
  if (text == "any") return AxisRequest::Any;
  if (text == "spacelike") return AxisRequest::Spacelike;
  if (text == "timelike") return AxisRequest::Timelike;
  throw Error(ErrorCode::InvalidArgument, "axis must be any, spacelike or timelike");
}

double causal_tolerance_from_env() {
  const char* env = std::getenv("LORHELIX_TOL");
  if (env == nullptr || *env == '\0') return kDefaultCausalTolerance;
  const double v = parse_real(env, "LORHELIX_TOL");
  if (!(v > 0.0)) throw Error(ErrorCode::InvalidArgument, "LORHELIX_TOL must be positive");
  return v;
}

int run_cli(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Spacelike general helices in Minkowski 3-space", "lorhelix"};
  app.require_subcommand(1);

  auto* synth = app.add_subcommand("synth", "Synthesize a helix from its intrinsic equations");
  auto* catalog = app.add_subcommand("catalog", "Sample a catalog entry's closed form");
  auto* verify = app.add_subcommand("verify", "Check a curve file or a catalog entry against the oracles");
  auto* plot = app.add_subcommand("plot", "Write an SVG projection");
  auto* list = app.add_subcommand("list", "List catalog entries");

  for (auto* sc : {synth, verify}) {
    sc->add_option("--kappa", o.kappa, "Curvature descriptor, e.g. const:3");
    sc->add_option("--tau", o.tau, "Torsion descriptor, e.g. const:2");
    sc->add_option("--epsilon", o.epsilon, "Sign g(N,N): +1 or -1");
    sc->add_option("--axis", o.axis, "any, spacelike or timelike");
    sc->add_flag("--mirror", o.mirror, "Take the reflected branch");
  }
  for (auto* sc : {synth, catalog}) {
    sc->add_option("--s", o.grid, "Arclength grid min:max:step");
    sc->add_option("--format", o.format, "csv or json (default from extension)");
  }
  synth->add_flag("--frames", o.frames, "Include Frenet frames");
  for (auto* sc : {catalog, verify, plot}) {
    sc->add_option("--name", o.name, "Catalog entry");
    sc->add_option("--params", o.params, "Entry parameters k=v,...");
  }
  for (auto* sc : {verify, plot}) sc->add_option("--input", o.input, "Curve file (csv or json)");
  for (auto* sc : {synth, catalog, verify, plot}) sc->add_option("--out", o.out, "Output path, - for stdout");
  verify->add_option("--tol", o.tol, "Tolerance on recovered curvature, torsion and speed");
  plot->add_option("--projection", o.projection, "x1x2, x1x3 or x2x3");
  app.add_option_function<double>(
      "--causal-tol", [&](double v) { o.causal_tol = v; }, "Causal character tolerance (env LORHELIX_TOL)");

  auto args = join_values(raw_args);
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kIoError;
  }

  try {
    const double causal = o.causal_tol.value_or(causal_tolerance_from_env());
    if (!(causal > 0.0)) throw Error(ErrorCode::InvalidArgument, "causal tolerance must be positive");
    if (synth->parsed()) return cmd_synth(o, causal, out, err);
    if (catalog->parsed()) return cmd_catalog(o, out, err);
    if (verify->parsed()) return cmd_verify(o, out, err);
    if (plot->parsed()) return cmd_plot(o, out, err);
    if (list->parsed()) return cmd_list(out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kIoError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kIoError;
  }
  return kIoError;
}

}  // namespace lorhelix::cli
