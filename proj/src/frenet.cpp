#include "lorhelix/frenet.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "lorhelix/error.hpp"

namespace lorhelix {

FrameProducts frame_products(const FrenetFrame& f) noexcept {
  return {metric(f.T, f.T), metric(f.N, f.N), metric(f.B, f.B),
          metric(f.T, f.N), metric(f.T, f.B), metric(f.N, f.B)};
}

double frame_residual(const FrenetFrame& f) noexcept {
  const auto p = frame_products(f);
  const double eps = f.epsilon;
  return std::max({std::abs(p.tt - 1.0), std::abs(p.nn - eps), std::abs(p.bb + eps),
                   std::abs(p.tn), std::abs(p.tb), std::abs(p.nb)});
}

int frame_orientation(const FrenetFrame& f) noexcept {
  // With B = sigma (T x N): g(T x N, B) = sigma g(T x N, T x N) = -sigma eps.
  const double w = metric(lorentz_cross(f.T, f.N), f.B);
  return (-w * f.epsilon) >= 0.0 ? 1 : -1;
}

void CurveSamples::validate() const {
  if (psi.size() != s.size()) throw Error(ErrorCode::InvalidArgument, "psi and s differ in length");
  if (frames && frames->size() != s.size()) {
    throw Error(ErrorCode::InvalidArgument, "frames and s differ in length");
  }
  for (std::size_t i = 1; i < s.size(); ++i) {
    if (!(s[i] > s[i - 1])) throw Error(ErrorCode::InvalidArgument, "s grid must be strictly increasing");
  }
  if (epsilon && *epsilon != 1 && *epsilon != -1) {
    throw Error(ErrorCode::InvalidArgument, "epsilon must be +1 or -1");
  }
}

// --- RK4 -------------------------------------------------------------------

namespace {

struct State {
  LorentzVector psi, T, N, B;
};

State axpy(const State& y, double h, const State& k) {
  return {y.psi + h * k.psi, y.T + h * k.T, y.N + h * k.N, y.B + h * k.B};
}

State frenet_rhs(const IntrinsicPair& pair, double s, const State& y) {
  const double k = pair.kappa(s);
  const double t = pair.tau(s);
  const double eps = pair.epsilon;
  return {y.T, k * y.N, (-eps * k) * y.T + t * y.B, t * y.N};
}

State rk4_step(const IntrinsicPair& pair, double s, const State& y, double h) {
  const State k1 = frenet_rhs(pair, s, y);
  const State k2 = frenet_rhs(pair, s + 0.5 * h, axpy(y, 0.5 * h, k1));
  const State k3 = frenet_rhs(pair, s + 0.5 * h, axpy(y, 0.5 * h, k2));
  const State k4 = frenet_rhs(pair, s + h, axpy(y, h, k3));
  const double w = h / 6.0;
  return {y.psi + w * (k1.psi + 2.0 * k2.psi + 2.0 * k3.psi + k4.psi),
          y.T + w * (k1.T + 2.0 * k2.T + 2.0 * k3.T + k4.T),
          y.N + w * (k1.N + 2.0 * k2.N + 2.0 * k3.N + k4.N),
          y.B + w * (k1.B + 2.0 * k2.B + 2.0 * k3.B + k4.B)};
}

// Signature-aware Gram-Schmidt: T unit spacelike, N with g(N,N) = eps, B with g(B,B) = -eps.
void stabilize(State& y, int eps) {
  y.T = y.T / pseudo_norm(y.T);
  y.N = y.N - metric(y.N, y.T) * y.T;
  y.N = y.N / pseudo_norm(y.N);
  y.B = y.B - metric(y.B, y.T) * y.T - (eps * metric(y.B, y.N)) * y.N;
  y.B = y.B / pseudo_norm(y.B);
}

State advance(const IntrinsicPair& pair, double s0, double s1, State y,
              const FrenetIntegrationOptions& opt) {
  const double span = s1 - s0;
  if (span == 0.0) return y;
  std::size_t steps = 1;
  if (opt.max_step > 0.0) {
    steps = static_cast<std::size_t>(std::ceil(std::abs(span) / opt.max_step - 1e-9));
    steps = std::max<std::size_t>(steps, 1);
  }
  const double h = span / static_cast<double>(steps);
  for (std::size_t k = 0; k < steps; ++k) {
    // Evaluate stage positions from s0 to avoid drift in the running arclength.
    const double s = s0 + static_cast<double>(k) * h;
    y = rk4_step(pair, s, y, (k + 1 == steps) ? (s1 - s) : h);
    if (opt.stabilize) stabilize(y, pair.epsilon);
  }
  return y;
}

double frame_scale(const FrenetFrame& f) {
  const double m = std::max({f.T.coordinate_norm(), f.N.coordinate_norm(), f.B.coordinate_norm()});
  return std::max(1.0, m * m);
}

}  // namespace

CurveSamples integrate_frenet(const IntrinsicPair& pair, const FrenetFrame& initial,
                              const LorentzVector& initial_position, std::span<const double> s_grid,
                              const FrenetIntegrationOptions& options) {
  if (s_grid.empty()) throw Error(ErrorCode::InvalidArgument, "empty arclength grid");
  for (std::size_t i = 1; i < s_grid.size(); ++i) {
    if (!(s_grid[i] > s_grid[i - 1])) {
      throw Error(ErrorCode::InvalidArgument, "arclength grid must be strictly increasing");
    }
  }
  if (initial.epsilon != pair.epsilon) {
    throw Error(ErrorCode::BadInitialFrame, "initial frame epsilon differs from the intrinsic pair");
  }
  const double r0 = frame_residual(initial);
  if (r0 > 1e-12 * frame_scale(initial)) {
    throw Error(ErrorCode::BadInitialFrame, "initial frame residual " + std::to_string(r0));
  }
  const double s0 = options.initial_s.value_or(s_grid.front());
  if (s0 < s_grid.front() || s0 > s_grid.back()) {
    throw Error(ErrorCode::InvalidArgument, "initial arclength lies outside the grid");
  }

  const std::size_t n = s_grid.size();
  CurveSamples out;
  out.s.assign(s_grid.begin(), s_grid.end());
  out.psi.resize(n);
  out.frames.emplace(n);
  out.epsilon = pair.epsilon;
  out.orientation = frame_orientation(initial);

  const State start{initial_position, initial.T, initial.N, initial.B};
  auto store = [&](std::size_t i, const State& y) {
    out.psi[i] = y.psi;
    FrenetFrame f{y.T, y.N, y.B, pair.epsilon};
    const double r = frame_residual(f);
    if (r > options.drift_limit) {
      throw Error(ErrorCode::FrameDrift, "frame residual " + std::to_string(r) + " at s = " +
                                             std::to_string(s_grid[i]) + "; reduce the step");
    }
    (*out.frames)[i] = f;
  };

  const auto first_up = static_cast<std::size_t>(
      std::lower_bound(s_grid.begin(), s_grid.end(), s0) - s_grid.begin());

  State y = start;
  double s = s0;
  for (std::size_t i = first_up; i < n; ++i) {
    y = advance(pair, s, s_grid[i], y, options);
    s = s_grid[i];
    store(i, y);
  }
  y = start;
  s = s0;
  for (std::size_t i = first_up; i-- > 0;) {
    y = advance(pair, s, s_grid[i], y, options);
    s = s_grid[i];
    store(i, y);
  }
  return out;
}

// --- finite differences ----------------------------------------------------

namespace {

struct Weights {
  std::array<double, 5> w{};  // offsets -2..2
};

void require_uniform(std::span<const double> s, std::size_t i, std::size_t radius) {
  const double h = s[i + 1] - s[i];
  for (std::size_t k = i - radius; k < i + radius; ++k) {
    if (std::abs((s[k + 1] - s[k]) - h) > 1e-9 * std::abs(h)) {
      throw Error(ErrorCode::InvalidArgument, "fourth-order stencil needs a uniform grid");
    }
  }
}

// First and second derivative weights at index i.
std::pair<Weights, Weights> stencil_weights(std::span<const double> s, std::size_t i, Stencil st) {
  Weights d1;
  Weights d2;
  if (st == Stencil::Central2) {
    const double h1 = s[i] - s[i - 1];
    const double h2 = s[i + 1] - s[i];
    d1.w[1] = -h2 / (h1 * (h1 + h2));
    d1.w[2] = (h2 - h1) / (h1 * h2);
    d1.w[3] = h1 / (h2 * (h1 + h2));
    d2.w[1] = 2.0 / (h1 * (h1 + h2));
    d2.w[2] = -2.0 / (h1 * h2);
    d2.w[3] = 2.0 / (h2 * (h1 + h2));
  } else {
    require_uniform(s, i, 2);
    const double h = s[i + 1] - s[i];
    d1.w = {1.0 / (12.0 * h), -8.0 / (12.0 * h), 0.0, 8.0 / (12.0 * h), -1.0 / (12.0 * h)};
    const double hh = 12.0 * h * h;
    d2.w = {-1.0 / hh, 16.0 / hh, -30.0 / hh, 16.0 / hh, -1.0 / hh};
  }
  return {d1, d2};
}

template <class Get>
LorentzVector apply(const Weights& w, std::size_t i, Get&& get) {
  double x[3] = {0.0, 0.0, 0.0};
  for (int off = -2; off <= 2; ++off) {
    const double c = w.w[static_cast<std::size_t>(off + 2)];
    if (c == 0.0) continue;
    const LorentzVector& v = get(static_cast<std::size_t>(static_cast<long>(i) + off));
    x[0] += c * v.x1();
    x[1] += c * v.x2();
    x[2] += c * v.x3();
  }
  return {x[0], x[1], x[2]};
}

}  // namespace

FrameEstimate estimate_frame(const CurveSamples& samples, std::size_t i, Stencil stencil,
                             std::optional<int> orientation, std::size_t stride) {
  if (stride == 0) throw Error(ErrorCode::InvalidArgument, "stride must be positive");
  if (stride > 1) {
    const std::size_t reach = (stencil == Stencil::Central2 ? 2 : 4) * stride;
    if (i < reach || i + reach >= samples.size()) {
      throw Error(ErrorCode::OutOfRange, "estimate_frame needs " + std::to_string(reach) +
                                             " samples on each side of index " + std::to_string(i));
    }
    CurveSamples sub;
    sub.orientation = orientation ? orientation : samples.orientation;
    for (std::size_t k = i - reach; k <= i + reach; k += stride) {
      sub.s.push_back(samples.s[k]);
      sub.psi.push_back(samples.psi[k]);
    }
    return estimate_frame(sub, reach / stride, stencil, sub.orientation, 1);
  }
  const std::size_t r = stencil == Stencil::Central2 ? 1 : 2;
  if (samples.psi.size() != samples.s.size()) {
    throw Error(ErrorCode::InvalidArgument, "psi and s differ in length");
  }
  if (i < 2 * r || i + 2 * r >= samples.size()) {
    throw Error(ErrorCode::OutOfRange, "estimate_frame needs " + std::to_string(2 * r) +
                                           " samples on each side of index " + std::to_string(i));
  }
  const int sigma = orientation.value_or(samples.orientation.value_or(kDefaultOrientation));
  const std::span<const double> s(samples.s);
  auto psi_at = [&](std::size_t k) -> const LorentzVector& { return samples.psi[k]; };

  struct Local {
    LorentzVector T, N, B;
    double kappa;
    int eps;
  };
  auto local = [&](std::size_t j) {
    const auto [d1, d2] = stencil_weights(s, j, stencil);
    LorentzVector T = apply(d1, j, psi_at);
    const LorentzVector A = apply(d2, j, psi_at);
    T = T / pseudo_norm(T);
    const double kappa = pseudo_norm(A);
    if (!(kappa >= 1e-8)) {
      throw Error(ErrorCode::DegenerateCurvature,
                  "curvature " + std::to_string(kappa) + " at index " + std::to_string(j));
    }
    const LorentzVector N = A / kappa;
    const int eps = metric(N, N) > 0.0 ? 1 : -1;
    const LorentzVector B = static_cast<double>(sigma) * lorentz_cross(T, N);
    return Local{T, N, B, kappa, eps};
  };

  std::vector<LorentzVector> binormals(2 * r + 1);
  Local centre{};
  for (std::size_t k = 0; k < binormals.size(); ++k) {
    const auto l = local(i - r + k);
    binormals[k] = l.B;
    if (k == r) centre = l;
  }
  const auto [d1, d2] = stencil_weights(s, i, stencil);
  (void)d2;
  const LorentzVector dB = apply(d1, i, [&](std::size_t k) -> const LorentzVector& {
    return binormals[k + r - i];
  });
  const double tau = centre.eps * metric(dB, centre.N);
  return {FrenetFrame{centre.T, centre.N, centre.B, centre.eps}, centre.kappa, tau};
}

std::size_t estimation_stride(double spacing, double target) {
  if (!(spacing > 0.0) || !(target > 0.0)) throw Error(ErrorCode::InvalidArgument, "spacing must be positive");
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(target / spacing)));
}

std::vector<LorentzVector> binormal_from_tangent(std::span<const LorentzVector> tangent,
                                                 double theta_step, double f, int epsilon) {
  if (std::abs(f) < 1e-12) throw Error(ErrorCode::ZeroSlope, "binormal reconstruction needs f != 0");
  if (!(theta_step > 0.0)) throw Error(ErrorCode::InvalidArgument, "theta step must be positive");
  if (tangent.size() < 4) throw Error(ErrorCode::InvalidArgument, "need at least four tangent samples");
  const std::size_t n = tangent.size();
  const double hh = theta_step * theta_step;
  std::vector<LorentzVector> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    LorentzVector second;
    if (k == 0) {
      second = (2.0 * tangent[0] - 5.0 * tangent[1] + 4.0 * tangent[2] - tangent[3]) / hh;
    } else if (k == n - 1) {
      second = (2.0 * tangent[n - 1] - 5.0 * tangent[n - 2] + 4.0 * tangent[n - 3] - tangent[n - 4]) / hh;
    } else {
      second = (tangent[k + 1] - 2.0 * tangent[k] + tangent[k - 1]) / hh;
    }
    out[k] = (second + static_cast<double>(epsilon) * tangent[k]) / f;
  }
  return out;
}

double max_product_drift(std::span<const FrenetFrame> frames, const FrenetFrame& reference) {
  const auto r = frame_products(reference);
  double worst = 0.0;
  for (const auto& f : frames) {
    const auto p = frame_products(f);
    worst = std::max({worst, std::abs(p.tt - r.tt), std::abs(p.nn - r.nn), std::abs(p.bb - r.bb),
                      std::abs(p.tn - r.tn), std::abs(p.tb - r.tb), std::abs(p.nb - r.nb)});
  }
  return worst;
}

double unit_speed_residual(const CurveSamples& samples) {
  double worst = 0.0;
  const std::span<const double> s(samples.s);
  for (std::size_t i = 1; i + 1 < samples.size(); ++i) {
    const auto [d1, d2] = stencil_weights(s, i, Stencil::Central2);
    (void)d2;
    const LorentzVector v =
        apply(d1, i, [&](std::size_t k) -> const LorentzVector& { return samples.psi[k]; });
    worst = std::max(worst, std::abs(metric(v, v) - 1.0));
  }
  return worst;
}

double max_deviation_modulo_translation(std::span<const LorentzVector> a,
                                        std::span<const LorentzVector> b) {
  if (a.size() != b.size()) throw Error(ErrorCode::InvalidArgument, "point sets differ in size");
  if (a.empty()) return 0.0;
  double worst = 0.0;
  for (std::size_t c = 0; c < 3; ++c) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (std::size_t i = 0; i < a.size(); ++i) {
      const double d = a[i][c] - b[i][c];
      lo = std::min(lo, d);
      hi = std::max(hi, d);
    }
    worst = std::max(worst, 0.5 * (hi - lo));
  }
  return worst;
}

std::vector<double> uniform_grid(double lo, double hi, double step) {
  if (!(step > 0.0) || !std::isfinite(step)) throw Error(ErrorCode::InvalidArgument, "grid step must be positive");
  if (!std::isfinite(lo) || !std::isfinite(hi) || lo > hi) {
    throw Error(ErrorCode::InvalidArgument, "grid needs finite min <= max");
  }
  const auto n = static_cast<std::size_t>(std::floor((hi - lo) / step + 0.5)) + 1;
  std::vector<double> g(n);
  for (std::size_t i = 0; i < n; ++i) g[i] = lo + static_cast<double>(i) * step;
  if (n > 1 && std::abs(g.back() - hi) <= 0.5 * step) g.back() = hi;
  return g;
}

}  // namespace lorhelix
