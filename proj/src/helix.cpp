#include "lorhelix/helix.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "lorhelix/error.hpp"

namespace lorhelix {

namespace {

constexpr double kSlopeTol = 1e-12;

bool is_unit_slope(double m) { return std::abs(std::abs(m) - 1.0) <= kSlopeTol; }

std::string num(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

}  // namespace

const char* to_string(HelixCase c) noexcept {
  switch (c) {
    case HelixCase::Case1_TimelikeNormal: return "Case1_TimelikeNormal";
    case HelixCase::Case2_SpacelikeNormal_SpacelikeAxis: return "Case2_SpacelikeNormal_SpacelikeAxis";
    case HelixCase::Case3_SpacelikeNormal_TimelikeAxis: return "Case3_SpacelikeNormal_TimelikeAxis";
  }
  return "?";
}

const char* short_name(HelixCase c) noexcept {
  switch (c) {
    case HelixCase::Case1_TimelikeNormal: return "case1";
    case HelixCase::Case2_SpacelikeNormal_SpacelikeAxis: return "case2";
    case HelixCase::Case3_SpacelikeNormal_TimelikeAxis: return "case3";
  }
  return "?";
}

Classification classify_case(int epsilon, double m, AxisRequest request) {
  if (epsilon != 1 && epsilon != -1) throw Error(ErrorCode::InvalidArgument, "epsilon must be +1 or -1");
  if (!std::isfinite(m)) throw Error(ErrorCode::InvalidArgument, "slope ratio must be finite");

  if (epsilon == -1) {
    if (request == AxisRequest::Timelike) {
      return Rejection{RejectionReason::AxisMismatch,
                       "Lemma 1: a spacelike helix with timelike principal normal has a spacelike axis"};
    }
    return HelixCase::Case1_TimelikeNormal;
  }
  if (is_unit_slope(m)) {
    return Rejection{RejectionReason::DegenerateSlope,
                     "degenerate slope |tau/kappa| = 1 with spacelike principal normal: "
                     "both the spacelike-axis and timelike-axis solutions collapse"};
  }
  if (m == 0.0 && request == AxisRequest::Spacelike) {
    return Rejection{RejectionReason::PlaneCurveSpacelikeAxis,
                     "Lemma 4: there is no spacelike plane curve with a spacelike principal normal "
                     "whose tangent makes a constant angle with a fixed spacelike line"};
  }
  if (std::abs(m) > 1.0) {
    if (request == AxisRequest::Timelike) {
      return Rejection{RejectionReason::AxisMismatch,
                       "Lemma 3: a timelike axis needs |tau/kappa| < 1, got " + num(m)};
    }
    return HelixCase::Case2_SpacelikeNormal_SpacelikeAxis;
  }
  if (request == AxisRequest::Spacelike) {
    return Rejection{RejectionReason::AxisMismatch,
                     "Lemma 2: a spacelike axis needs |tau/kappa| > 1, got " + num(m)};
  }
  return HelixCase::Case3_SpacelikeNormal_TimelikeAxis;
}

double n_from_slope(HelixCase c, double m) {
  switch (c) {
    case HelixCase::Case1_TimelikeNormal: return m / std::sqrt(1.0 + m * m);
    case HelixCase::Case2_SpacelikeNormal_SpacelikeAxis:
      if (!(std::abs(m) > 1.0)) throw Error(ErrorCode::CaseConstraintViolated, "case 2 needs |m| > 1");
      return std::abs(m) / std::sqrt(m * m - 1.0);
    case HelixCase::Case3_SpacelikeNormal_TimelikeAxis:
      if (!(std::abs(m) < 1.0)) throw Error(ErrorCode::CaseConstraintViolated, "case 3 needs |m| < 1");
      return m / std::sqrt(1.0 - m * m);
  }
  return 0.0;
}

double slope_from_n(HelixCase c, double n) {
  switch (c) {
    case HelixCase::Case1_TimelikeNormal:
      if (!(std::abs(n) < 1.0)) throw Error(ErrorCode::CaseConstraintViolated, "case 1 needs |n| < 1");
      return n / std::sqrt(1.0 - n * n);
    case HelixCase::Case2_SpacelikeNormal_SpacelikeAxis:
      if (!(n > 1.0)) throw Error(ErrorCode::CaseConstraintViolated, "case 2 needs n > 1");
      return n / std::sqrt(n * n - 1.0);
    case HelixCase::Case3_SpacelikeNormal_TimelikeAxis: return n / std::sqrt(1.0 + n * n);
  }
  return 0.0;
}

double HelixSpec::amplitude() const {
  switch (kind) {
    case HelixCase::Case1_TimelikeNormal: return 1.0 / std::sqrt(1.0 + m * m);
    case HelixCase::Case2_SpacelikeNormal_SpacelikeAxis: return 1.0 / std::sqrt(m * m - 1.0);
    case HelixCase::Case3_SpacelikeNormal_TimelikeAxis: return 1.0 / std::sqrt(1.0 - m * m);
  }
  return 0.0;
}

double HelixSpec::phase_rate() const {
  switch (kind) {
    case HelixCase::Case1_TimelikeNormal: return std::sqrt(1.0 + m * m);
    case HelixCase::Case2_SpacelikeNormal_SpacelikeAxis: return std::sqrt(m * m - 1.0);
    case HelixCase::Case3_SpacelikeNormal_TimelikeAxis: return std::sqrt(1.0 - m * m);
  }
  return 0.0;
}

void HelixSpec::validate() const {
  auto fail = [&](const std::string& why) {
    return Error(ErrorCode::CaseConstraintViolated, std::string(to_string(kind)) + ": " + why);
  };
  if (!std::isfinite(m)) throw fail("m is not finite");
  if (pair.epsilon != epsilon()) throw fail("epsilon of the intrinsic pair does not match the case");
  switch (kind) {
    case HelixCase::Case1_TimelikeNormal:
      if (!(std::abs(n) < 1.0)) throw fail("|n| must be < 1");
      break;
    case HelixCase::Case2_SpacelikeNormal_SpacelikeAxis:
      if (!(std::abs(m) > 1.0) || is_unit_slope(m)) throw fail("|m| must exceed 1");
      break;
    case HelixCase::Case3_SpacelikeNormal_TimelikeAxis:
      if (!(std::abs(m) < 1.0) || is_unit_slope(m)) throw fail("|m| must be below 1");
      break;
  }
  if (std::abs(n_from_slope(kind, m) - n) > 1e-12 * std::max(1.0, std::abs(n))) {
    throw fail("n is inconsistent with m");
  }
}

std::variant<HelixSpec, Rejection> plan_helix(const IntrinsicPair& pair, AxisRequest request,
                                              bool mirror) {
  pair.validate();
  const auto m = ratio(pair);
  if (!m) {
    throw Error(ErrorCode::CaseConstraintViolated,
                "tau/kappa is not constant: the pair is not a general helix");
  }
  const auto cls = classify_case(pair.epsilon, *m, request);
  if (const auto* r = std::get_if<Rejection>(&cls)) return *r;
  const auto kind = std::get<HelixCase>(cls);

  HelixSpec spec{kind, *m, n_from_slope(kind, *m), 0.0, pair, LorentzVector(), mirror};
  switch (kind) {
    case HelixCase::Case1_TimelikeNormal:
      spec.phi = std::acos(std::min(1.0, std::abs(spec.n)));
      spec.axis = LorentzVector::e3();
      break;
    case HelixCase::Case2_SpacelikeNormal_SpacelikeAxis:
      spec.phi = std::acosh(spec.n);
      spec.axis = LorentzVector::e3();
      break;
    case HelixCase::Case3_SpacelikeNormal_TimelikeAxis:
      spec.phi = std::asinh(std::abs(spec.n));
      spec.axis = LorentzVector::e1();
      break;
  }
  return spec;
}

HelixSpec make_helix_spec(const IntrinsicPair& pair, AxisRequest request, bool mirror) {
  auto planned = plan_helix(pair, request, mirror);
  if (auto* r = std::get_if<Rejection>(&planned)) {
    throw Error(ErrorCode::CaseConstraintViolated, r->message);
  }
  return std::get<HelixSpec>(std::move(planned));
}

FrenetFrame frame_closed_form(const HelixSpec& spec, double theta) {
  const double a = spec.amplitude();
  const double m = spec.m;
  const double sigma = spec.mirror ? -1.0 : 1.0;
  const double p = sigma * spec.phase_rate() * theta;
  // amplitude * phase_rate == 1 in every case, so N = sigma * (unit phase vector).
  switch (spec.kind) {
    case HelixCase::Case1_TimelikeNormal: {
      const double sh = std::sinh(p), ch = std::cosh(p);
      return {{a * sh, a * ch, a * m}, {sigma * ch, sigma * sh, 0.0}, {a * m * sh, a * m * ch, -a}, -1};
    }
    case HelixCase::Case2_SpacelikeNormal_SpacelikeAxis: {
      const double sh = std::sinh(p), ch = std::cosh(p);
      return {{a * ch, a * sh, a * m}, {sigma * sh, sigma * ch, 0.0}, {a * m * ch, a * m * sh, a}, 1};
    }
    case HelixCase::Case3_SpacelikeNormal_TimelikeAxis: {
      const double sn = std::sin(p), cs = std::cos(p);
      return {{a * m, a * cs, a * sn}, {0.0, -sigma * sn, sigma * cs}, {a, a * m * cs, a * m * sn}, 1};
    }
  }
  throw Error(ErrorCode::InvalidArgument, "unknown helix case");
}

LorentzVector tangent_closed_form(const HelixSpec& spec, double theta) {
  spec.validate();
  return frame_closed_form(spec, theta).T;
}

int helix_orientation(const HelixSpec& spec) { return frame_orientation(frame_closed_form(spec, 0.0)); }

namespace {

// Exact integral of T(theta(u)) from the reference to s when kappa is constant.
LorentzVector constant_kappa_position(const HelixSpec& spec, double kappa, double delta) {
  const double a = spec.amplitude();
  const double sigma = spec.mirror ? -1.0 : 1.0;
  const double w = sigma * spec.phase_rate() * kappa;
  const double p = w * delta;
  switch (spec.kind) {
    case HelixCase::Case1_TimelikeNormal: {
      const double half = std::sinh(0.5 * p);
      return {a * 2.0 * half * half / w, a * std::sinh(p) / w, a * spec.m * delta};
    }
    case HelixCase::Case2_SpacelikeNormal_SpacelikeAxis: {
      const double half = std::sinh(0.5 * p);
      return {a * std::sinh(p) / w, a * 2.0 * half * half / w, a * spec.m * delta};
    }
    case HelixCase::Case3_SpacelikeNormal_TimelikeAxis: {
      const double half = std::sin(0.5 * p);
      return {a * spec.m * delta, a * std::sin(p) / w, a * 2.0 * half * half / w};
    }
  }
  return {};
}

LorentzVector quadrature_segment(const HelixSpec& spec, double ref, double from, double to) {
  if (from == to) return {};
  using GK = boost::math::quadrature::gauss_kronrod<double, 15>;
  double x[3];
  for (int c = 0; c < 3; ++c) {
    auto f = [&](double u) {
      return frame_closed_form(spec, theta_of_s(spec.pair.kappa, u, ref)).T[static_cast<std::size_t>(c)];
    };
    x[c] = GK::integrate(f, from, to, 6, 1e-12);
  }
  return {x[0], x[1], x[2]};
}

}  // namespace

CurveSamples synthesize(const HelixSpec& spec, std::span<const double> s_grid) {
  spec.validate();
  if (s_grid.empty()) throw Error(ErrorCode::InvalidArgument, "empty arclength grid");
  const auto domain = spec.pair.domain();
  for (std::size_t i = 0; i < s_grid.size(); ++i) {
    if (!domain.contains(s_grid[i])) {
      throw Error(ErrorCode::OutOfDomain, "grid point s = " + num(s_grid[i]) +
                                              " lies outside the intrinsic domain");
    }
    if (i > 0 && !(s_grid[i] > s_grid[i - 1])) {
      throw Error(ErrorCode::InvalidArgument, "arclength grid must be strictly increasing");
    }
  }
  const double ref = spec.pair.theta_reference();
  if (!domain.contains(ref)) throw Error(ErrorCode::OutOfDomain, "theta reference outside the domain");

  const std::size_t n = s_grid.size();
  CurveSamples out;
  out.s.assign(s_grid.begin(), s_grid.end());
  out.psi.resize(n);
  out.frames.emplace(n);
  out.epsilon = spec.epsilon();
  out.orientation = helix_orientation(spec);

  for (std::size_t i = 0; i < n; ++i) {
    (*out.frames)[i] = frame_closed_form(spec, theta_of_s(spec.pair.kappa, s_grid[i], ref));
  }

  if (spec.pair.kappa.family() == Family::Constant) {
    const double k = spec.pair.kappa(ref);
    for (std::size_t i = 0; i < n; ++i) out.psi[i] = constant_kappa_position(spec, k, s_grid[i] - ref);
    return out;
  }

  // Chain quadrature outward from the grid point nearest the reference.
  const auto it = std::lower_bound(s_grid.begin(), s_grid.end(), ref);
  std::size_t k0 = static_cast<std::size_t>(it - s_grid.begin());
  if (k0 == n || (k0 > 0 && ref - s_grid[k0 - 1] < s_grid[k0] - ref)) k0 = (k0 == 0) ? 0 : k0 - 1;
  out.psi[k0] = quadrature_segment(spec, ref, ref, s_grid[k0]);
  for (std::size_t i = k0 + 1; i < n; ++i) {
    out.psi[i] = out.psi[i - 1] + quadrature_segment(spec, ref, s_grid[i - 1], s_grid[i]);
  }
  for (std::size_t i = k0; i-- > 0;) {
    out.psi[i] = out.psi[i + 1] - quadrature_segment(spec, ref, s_grid[i], s_grid[i + 1]);
  }
  return out;
}

TangentOdeResidual tangent_ode_residual(const HelixSpec& spec, std::span<const double> theta_grid) {
  spec.validate();
  const std::size_t n = theta_grid.size();
  if (n < 5) throw Error(ErrorCode::InvalidArgument, "residual check needs at least 5 theta samples");
  const double h = theta_grid[1] - theta_grid[0];
  if (!(h > 0.0)) throw Error(ErrorCode::InvalidArgument, "theta grid must be increasing");
  for (std::size_t i = 1; i < n; ++i) {
    if (std::abs((theta_grid[i] - theta_grid[i - 1]) - h) > 1e-9 * h) {
      throw Error(ErrorCode::InvalidArgument, "theta grid must be uniform");
    }
  }
  std::vector<LorentzVector> T(n);
  for (std::size_t i = 0; i < n; ++i) T[i] = frame_closed_form(spec, theta_grid[i]).T;

  const double eps = spec.epsilon();
  const double m = spec.m;
  double reduced = 0.0;
  for (std::size_t i = 2; i + 2 < n; ++i) {
    const LorentzVector d1 = (T[i + 1] - T[i - 1]) / (2.0 * h);
    const LorentzVector d3 = (T[i + 2] - 2.0 * T[i + 1] + 2.0 * T[i - 1] - T[i - 2]) / (2.0 * h * h * h);
    const LorentzVector r = d3 + (eps - m * m) * d1;
    reduced = std::max({reduced, std::abs(r.x1()), std::abs(r.x2()), std::abs(r.x3())});
  }
  TangentOdeResidual out;
  out.reduced = reduced;
  // With f = m constant the third-order equation is the reduced one divided by m.
  if (m != 0.0) out.third_order = reduced / std::abs(m);
  return out;
}

double third_order_residual(const HelixSpec& spec, std::span<const double> theta_grid) {
  if (spec.m == 0.0) {
    throw Error(ErrorCode::ZeroSlope, "the third-order tangent equation divides by f = tau/kappa = 0");
  }
  return *tangent_ode_residual(spec, theta_grid).third_order;
}

AxisEstimate helix_axis(const CurveSamples& samples, const HelixSpec& spec) {
  std::vector<FrenetFrame> frames;
  if (samples.frames && !samples.frames->empty()) {
    frames = *samples.frames;
  } else {
    const int sigma = samples.orientation.value_or(helix_orientation(spec));
    for (std::size_t i = 2; i + 2 < samples.size(); ++i) {
      try {
        frames.push_back(estimate_frame(samples, i, Stencil::Central2, sigma).frame);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::DegenerateCurvature) throw;
      }
    }
  }
  if (frames.empty()) throw Error(ErrorCode::DegenerateFrames, "no frames available for axis recovery");

  // g(d, T) is the constant of the case; beta follows from g(d, d) = +-1.
  double along_t = 0.0;
  double norm = 1.0;
  switch (spec.kind) {
    case HelixCase::Case1_TimelikeNormal: along_t = spec.n; break;
    case HelixCase::Case2_SpacelikeNormal_SpacelikeAxis: along_t = (spec.m < 0 ? -1.0 : 1.0) * spec.n; break;
    case HelixCase::Case3_SpacelikeNormal_TimelikeAxis:
      along_t = -spec.n;
      norm = -1.0;
      break;
  }
  const double eps = spec.epsilon();
  const double beta = std::sqrt(std::max(0.0, (norm - along_t * along_t) / -eps));

  AxisEstimate best;
  best.variance = std::numeric_limits<double>::infinity();
  for (const double sign : {1.0, -1.0}) {
    std::array<double, 3> mean{0, 0, 0};
    std::array<double, 3> sq{0, 0, 0};
    for (const auto& f : frames) {
      const LorentzVector d = along_t * f.T + (sign * beta) * f.B;
      for (std::size_t c = 0; c < 3; ++c) {
        mean[c] += d[c];
        sq[c] += d[c] * d[c];
      }
    }
    const double count = static_cast<double>(frames.size());
    double var = 0.0;
    for (std::size_t c = 0; c < 3; ++c) {
      mean[c] /= count;
      var += std::max(0.0, sq[c] / count - mean[c] * mean[c]);
    }
    if (var < best.variance) {
      best.variance = var;
      best.axis = LorentzVector(mean[0], mean[1], mean[2]);
      best.samples = frames.size();
    }
  }
  return best;
}

}  // namespace lorhelix
