#pragma once

#include <map>
#include <string>
#include <vector>

#include "lorhelix/helix.hpp"

namespace lorhelix {

using Params = std::map<std::string, double>;

/// A worked example: intrinsic equations, the printed position vector and
/// the parameters used for its figure.
struct CatalogEntry {
  std::string name;
  std::vector<std::string> param_keys;
  Params figure_params;
  /// The printed parametrization, as text.
  std::string formula;
  /// Default comparison grid in arclength.
  double s_min = 0.0;
  double s_max = 0.0;
  double step = 1e-3;
};

const std::vector<CatalogEntry>& catalog_list();

/// Throws Error(InvalidArgument) listing the known names.
const CatalogEntry& catalog_find(const std::string& name);

/// Figure parameters overridden by `params`; unknown keys throw InvalidArgument.
Params catalog_params(const CatalogEntry& entry, const Params& params = {});

/// Throws Error(OutOfValidity) if the parameters leave the entry's region.
void catalog_check(const std::string& name, const Params& params);

/// The classified helix the entry describes.
HelixSpec catalog_spec(const std::string& name, const Params& params = {});

/// The printed closed form at arclength s, evaluated as written.
/// Throws Error(OutOfValidity) outside the parameter region or domain.
LorentzVector catalog_eval(const std::string& name, const Params& params, double s);

/// Standard arclength grid of the entry (plane curves map theta in [-1.2, 1.2]).
std::vector<double> catalog_grid(const std::string& name, const Params& params = {});

struct ValidationReport {
  std::string name;
  Params params;
  std::string helix_case;
  double m = 0.0;
  double s_min = 0.0;
  double s_max = 0.0;
  double step = 0.0;
  std::size_t samples = 0;
  double eval_vs_synth = 0.0;
  double eval_vs_frenet = 0.0;
  double synth_vs_frenet = 0.0;
  double max_deviation = 0.0;
  double unit_speed = 0.0;  // max |g(psi', psi') - 1| of the printed form
  double kappa_error = 0.0;  // max |kappa_hat - kappa| on the printed form
  double tau_error = 0.0;
  double slope_error = 0.0;
  double threshold = 1e-4;
  bool consistent = true;

  const char* verdict() const noexcept { return consistent ? "CONSISTENT" : "DISCREPANT"; }
  /// Deterministic JSON, keys sorted.
  std::string to_json() const;
};

/// Three-way comparison of the printed form, synthesize and integrate_frenet
/// (RK4 at step 1e-3) on the standard grid. DISCREPANT when any pairwise
/// deviation modulo translation exceeds 1e-4.
ValidationReport catalog_validate(const std::string& name, const Params& params = {});

/// "k=v,k=v" to Params. Throws Error(InvalidArgument) on malformed input.
Params parse_params(const std::string& text);

}  // namespace lorhelix
