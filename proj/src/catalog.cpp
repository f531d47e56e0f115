#include "lorhelix/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <json.hpp>

#include "lorhelix/error.hpp"

namespace lorhelix {

namespace {

constexpr double kThetaSpan = 1.2;

const std::vector<CatalogEntry> kEntries = {
    {"plane-case1", {"a"}, {{"a", 2.0}},
     "kappa = a/(a^2 - s^2), tau = 0, eps = -1; psi = a(-sech(theta), 2 atan(tanh(theta/2)), 0), "
     "s = a tanh(theta)",
     0.0, 0.0, 1e-3},
    {"plane-case3", {"a"}, {{"a", 0.5}},
     "kappa = a/(a^2 + s^2), tau = 0, eps = +1; psi = a(0, 2 atanh(tan(theta/2)), sec(theta)), "
     "s = a tan(theta)",
     0.0, 0.0, 1e-3},
    {"wcurve-case1", {"kappa", "tau"}, {{"kappa", 3.0}, {"tau", 2.0}},
     "psi = kappa/(kappa^2 + tau^2)(cosh(xi), sinh(xi), (tau/kappa) xi), xi = sqrt(kappa^2 + tau^2) s",
     -2.0, 2.0, 1e-3},
    {"wcurve-case2", {"kappa", "tau"}, {{"kappa", 1.0}, {"tau", 2.0}},
     "psi = kappa/(tau^2 - kappa^2)(sinh(xi), cosh(xi), (tau/kappa) xi), xi = sqrt(tau^2 - kappa^2) s",
     -2.0, 2.0, 1e-3},
    {"wcurve-case3", {"kappa", "tau"}, {{"kappa", 2.0}, {"tau", 1.0}},
     "psi = kappa/(kappa^2 - tau^2)((tau/kappa) xi, sin(xi), cos(xi)), xi = sqrt(kappa^2 - tau^2) s",
     -2.0, 2.0, 1e-3},
    {"loghelix-case1", {"h", "r"}, {{"h", 2.0}, {"r", 1.0}},
     "kappa = h/s, tau = r/s, eps = -1, w = sqrt(h^2 + r^2), s = exp(theta/h); "
     "psi1 = h e^(theta/h)/(h^2 + r^2 - 1) (cosh(w theta/h) - sinh(w theta/h)/w), "
     "psi2 = h e^(theta/h)/(h^2 + r^2 - 1) (sinh(w theta/h) - cosh(w theta/h)/w), "
     "psi3 = r e^(theta/h)/w",
     0.5, 3.0, 1e-3},
    {"loghelix-case2", {"h", "r"}, {{"h", 1.0}, {"r", 4.0}},
     "kappa = h/s, tau = r/s, eps = +1, w = sqrt(r^2 - h^2), s = exp(theta/h); "
     "psi1 = h e^(theta/h)/(1 + h^2 - r^2) (cosh(w theta/h)/w - sinh(w theta/h)), "
     "psi2 = h e^(theta/h)/(1 + h^2 - r^2) (sinh(w theta/h)/w - cosh(w theta/h)), "
     "psi3 = r e^(theta/h)/w",
     0.5, 3.0, 1e-3},
    {"loghelix-case3", {"h", "r"}, {{"h", 6.0}, {"r", 1.0}},
     "kappa = h/s, tau = r/s, eps = +1, w = sqrt(h^2 - r^2), s = exp(theta/h); "
     "psi1 = r e^(theta/h)/w, "
     "psi2 = h e^(theta/h)/(1 + h^2 - r^2) (cos(w theta/h)/w + sin(w theta/h)), "
     "psi3 = h e^(theta/h)/(1 + h^2 - r^2) (sin(w theta/h)/w - cos(w theta/h))",
     0.5, 3.0, 1e-3},
};

Error invalid(const std::string& name, const std::string& why) {
  return Error(ErrorCode::OutOfValidity, name + ": " + why);
}

double get(const Params& p, const char* key) { return p.at(key); }

}  // namespace

const std::vector<CatalogEntry>& catalog_list() { return kEntries; }

const CatalogEntry& catalog_find(const std::string& name) {
  for (const auto& e : kEntries) {
    if (e.name == name) return e;
  }
  std::string known;
  for (const auto& e : kEntries) known += (known.empty() ? "" : ", ") + e.name;
  throw Error(ErrorCode::InvalidArgument, "unknown catalog entry '" + name + "' (known: " + known + ")");
}

Params catalog_params(const CatalogEntry& entry, const Params& params) {
  Params out = entry.figure_params;
  for (const auto& [k, v] : params) {
    if (std::find(entry.param_keys.begin(), entry.param_keys.end(), k) == entry.param_keys.end()) {
      throw Error(ErrorCode::InvalidArgument, entry.name + ": unknown parameter '" + k + "'");
    }
    if (!std::isfinite(v)) throw Error(ErrorCode::InvalidArgument, entry.name + ": parameter '" + k + "' is not finite");
    out[k] = v;
  }
  return out;
}

void catalog_check(const std::string& name, const Params& given) {
  const auto p = catalog_params(catalog_find(name), given);
  if (name == "plane-case1" || name == "plane-case3") {
    if (!(get(p, "a") > 0.0)) throw invalid(name, "a must be positive");
  } else if (name.rfind("wcurve-", 0) == 0) {
    const double k = get(p, "kappa");
    const double t = get(p, "tau");
    if (!(k > 0.0)) throw invalid(name, "kappa must be positive");
    if (name == "wcurve-case2" && !(t * t > k * k)) throw invalid(name, "requires tau^2 > kappa^2");
    if (name == "wcurve-case3" && !(k * k > t * t)) throw invalid(name, "requires kappa^2 > tau^2");
  } else {
    const double h = get(p, "h");
    const double r = get(p, "r");
    if (!(h > 0.0)) throw invalid(name, "h must be positive");
    if (name == "loghelix-case1" && h * h + r * r == 1.0) throw invalid(name, "h^2 + r^2 = 1 is singular");
    if (name == "loghelix-case2") {
      if (!(r * r > h * h)) throw invalid(name, "requires r^2 > h^2");
      if (1.0 + h * h - r * r == 0.0) throw invalid(name, "1 + h^2 - r^2 = 0 is singular");
    }
    if (name == "loghelix-case3") {
      if (!(h * h > r * r)) throw invalid(name, "requires h^2 > r^2");
      if (1.0 + h * h - r * r == 0.0) throw invalid(name, "1 + h^2 - r^2 = 0 is singular");
    }
  }
}

HelixSpec catalog_spec(const std::string& name, const Params& given) {
  catalog_check(name, given);
  const auto p = catalog_params(catalog_find(name), given);
  if (name == "plane-case1") {
    const double a = get(p, "a");
    return make_helix_spec({ScalarFunction::rational_minus(a), ScalarFunction::constant(0.0), -1, {}});
  }
  if (name == "plane-case3") {
    const double a = get(p, "a");
    return make_helix_spec({ScalarFunction::rational_plus(a), ScalarFunction::constant(0.0), 1, {}},
                           AxisRequest::Timelike);
  }
  if (name.rfind("wcurve-", 0) == 0) {
    IntrinsicPair pair{ScalarFunction::constant(get(p, "kappa")), ScalarFunction::constant(get(p, "tau")),
                       name == "wcurve-case1" ? -1 : 1, {}};
    return make_helix_spec(pair, AxisRequest::Any, name == "wcurve-case3");
  }
  IntrinsicPair pair{ScalarFunction::reciprocal(get(p, "h")), ScalarFunction::reciprocal(get(p, "r")),
                     name == "loghelix-case1" ? -1 : 1, 1.0};
  return make_helix_spec(pair);
}

LorentzVector catalog_eval(const std::string& name, const Params& given, double s) {
  catalog_check(name, given);
  const auto p = catalog_params(catalog_find(name), given);
  if (!std::isfinite(s)) throw invalid(name, "s must be finite");

  if (name == "plane-case1") {
    const double a = get(p, "a");
    if (!(std::abs(s) < a)) throw invalid(name, "requires |s| < a");
    const double th = std::atanh(s / a);
    return {a * (-1.0 / std::cosh(th)), a * 2.0 * std::atan(std::tanh(th / 2.0)), 0.0};
  }
  if (name == "plane-case3") {
    const double a = get(p, "a");
    const double th = std::atan(s / a);
    return {0.0, a * 2.0 * std::atanh(std::tan(th / 2.0)), a / std::cos(th)};
  }
  if (name.rfind("wcurve-", 0) == 0) {
    const double k = get(p, "kappa");
    const double t = get(p, "tau");
    if (name == "wcurve-case1") {
      const double xi = std::sqrt(k * k + t * t) * s;
      const double c = k / (k * k + t * t);
      return {c * std::cosh(xi), c * std::sinh(xi), c * (t / k) * xi};
    }
    if (name == "wcurve-case2") {
      const double xi = std::sqrt(t * t - k * k) * s;
      const double c = k / (t * t - k * k);
      return {c * std::sinh(xi), c * std::cosh(xi), c * (t / k) * xi};
    }
    const double xi = std::sqrt(k * k - t * t) * s;
    const double c = k / (k * k - t * t);
    return {c * (t / k) * xi, c * std::sin(xi), c * std::cos(xi)};
  }

  if (!(s > 0.0)) throw invalid(name, "requires s > 0");
  const double h = get(p, "h");
  const double r = get(p, "r");
  const double th = h * std::log(s);
  const double e = std::exp(th / h);
  if (name == "loghelix-case1") {
    const double w = std::sqrt(h * h + r * r);
    const double c = h * e / (h * h + r * r - 1.0);
    const double x = w / h * th;
    return {c * (std::cosh(x) - std::sinh(x) / w), c * (std::sinh(x) - std::cosh(x) / w), r * e / w};
  }
  if (name == "loghelix-case2") {
    const double w = std::sqrt(r * r - h * h);
    const double c = h * e / (1.0 + h * h - r * r);
    const double x = w / h * th;
    return {c * (std::cosh(x) / w - std::sinh(x)), c * (std::sinh(x) / w - std::cosh(x)), r * e / w};
  }
  const double w = std::sqrt(h * h - r * r);
  const double c = h * e / (1.0 + h * h - r * r);
  const double x = w / h * th;
  return {r * e / w, c * (std::cos(x) / w + std::sin(x)), c * (std::sin(x) / w - std::cos(x))};
}

std::vector<double> catalog_grid(const std::string& name, const Params& given) {
  const auto& entry = catalog_find(name);
  catalog_check(name, given);
  const auto p = catalog_params(entry, given);
  if (name == "plane-case1" || name == "plane-case3") {
    const double a = get(p, "a");
    const double reach = name == "plane-case1" ? a * std::tanh(kThetaSpan) : a * std::tan(kThetaSpan);
    const double n = std::floor(reach / entry.step);
    return uniform_grid(-n * entry.step, n * entry.step, entry.step);
  }
  return uniform_grid(entry.s_min, entry.s_max, entry.step);
}

ValidationReport catalog_validate(const std::string& name, const Params& given) {
  const auto& entry = catalog_find(name);
  const auto spec = catalog_spec(name, given);
  const auto grid = catalog_grid(name, given);

  ValidationReport rep;
  rep.name = name;
  rep.params = catalog_params(entry, given);
  rep.helix_case = short_name(spec.kind);
  rep.m = spec.m;
  rep.s_min = grid.front();
  rep.s_max = grid.back();
  rep.step = entry.step;
  rep.samples = grid.size();

  CurveSamples printed;
  printed.s = grid;
  printed.epsilon = spec.epsilon();
  printed.orientation = helix_orientation(spec);
  for (double s : grid) printed.psi.push_back(catalog_eval(name, given, s));

  const auto synth = synthesize(spec, grid);
  const double ref = spec.pair.theta_reference();
  FrenetIntegrationOptions opt;
  opt.initial_s = ref;
  opt.max_step = entry.step;
  const auto rk = integrate_frenet(spec.pair, frame_closed_form(spec, 0.0), LorentzVector(), grid, opt);

  rep.eval_vs_synth = max_deviation_modulo_translation(printed.psi, synth.psi);
  rep.eval_vs_frenet = max_deviation_modulo_translation(printed.psi, rk.psi);
  rep.synth_vs_frenet = max_deviation_modulo_translation(synth.psi, rk.psi);
  rep.max_deviation = std::max({rep.eval_vs_synth, rep.eval_vs_frenet, rep.synth_vs_frenet});
  rep.unit_speed = unit_speed_residual(printed);

  const std::size_t stride = estimation_stride(entry.step);
  for (std::size_t i = 4 * stride; i + 4 * stride < grid.size(); ++i) {
    try {
      const auto est = estimate_frame(printed, i, Stencil::Central4, {}, stride);
      const double k = spec.pair.kappa(grid[i]);
      const double t = spec.pair.tau(grid[i]);
      rep.kappa_error = std::max(rep.kappa_error, std::abs(est.kappa - k));
      rep.tau_error = std::max(rep.tau_error, std::abs(est.tau - t));
      rep.slope_error = std::max(rep.slope_error, std::abs(est.tau / est.kappa - spec.m));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::DegenerateCurvature) throw;
      rep.kappa_error = std::numeric_limits<double>::infinity();
    }
  }
  if (!std::isfinite(rep.max_deviation)) rep.max_deviation = std::numeric_limits<double>::infinity();
  rep.consistent = rep.max_deviation <= rep.threshold;
  return rep;
}

std::string ValidationReport::to_json() const {
  auto finite_or_null = [](double v) -> nlohmann::json {
    return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
  };
  nlohmann::json j;
  j["name"] = name;
  j["params"] = nlohmann::json::object();
  for (const auto& [k, v] : params) j["params"][k] = v;
  j["case"] = helix_case;
  j["m"] = m;
  j["grid"] = {{"s_min", s_min}, {"s_max", s_max}, {"step", step}, {"samples", samples}};
  j["deviation"] = {{"eval_vs_synthesize", finite_or_null(eval_vs_synth)},
                    {"eval_vs_frenet", finite_or_null(eval_vs_frenet)},
                    {"synthesize_vs_frenet", finite_or_null(synth_vs_frenet)},
                    {"max", finite_or_null(max_deviation)}};
  j["unit_speed_residual"] = finite_or_null(unit_speed);
  j["recovered"] = {{"kappa_error", finite_or_null(kappa_error)},
                    {"tau_error", finite_or_null(tau_error)},
                    {"slope_error", finite_or_null(slope_error)}};
  j["threshold"] = threshold;
  j["verdict"] = verdict();
  return j.dump(2) + "\n";
}

Params parse_params(const std::string& text) {
  Params out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw Error(ErrorCode::InvalidArgument, "parameter '" + item + "' is not key=value");
    }
    const std::string key = item.substr(0, eq);
    const std::string val = item.substr(eq + 1);
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(val, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != val.size() || !std::isfinite(v)) {
      throw Error(ErrorCode::InvalidArgument, "parameter '" + key + "' has a non-numeric value");
    }
    out[key] = v;
  }
  return out;
}

}  // namespace lorhelix
