#pragma once

#include <optional>
#include <span>
#include <vector>

#include "lorhelix/intrinsics.hpp"
#include "lorhelix/minkowski.hpp"

namespace lorhelix {

/// Moving frame of a spacelike curve: g(T,T) = 1, g(N,N) = epsilon,
/// g(B,B) = -epsilon, pairwise g-orthogonal.
struct FrenetFrame {
  LorentzVector T;
  LorentzVector N;
  LorentzVector B;
  int epsilon = -1;
};

/// The six metric products of a frame.
struct FrameProducts {
  double tt, nn, bb, tn, tb, nb;
};

FrameProducts frame_products(const FrenetFrame& f) noexcept;

/// Largest absolute deviation of the six products from (1, eps, -eps, 0, 0, 0).
double frame_residual(const FrenetFrame& f) noexcept;

/// Sign sigma with B = sigma (T x N). Frenet transport preserves it.
int frame_orientation(const FrenetFrame& f) noexcept;

/// The orientation estimate_frame assumes when a curve carries none. It is
/// the orientation of the closed-form timelike-normal W-curve frame.
inline constexpr int kDefaultOrientation = -1;

/// Arclength samples of a curve; the exchange object between synthesis,
/// integration and verification.
struct CurveSamples {
  std::vector<double> s;
  std::vector<LorentzVector> psi;
  std::optional<std::vector<FrenetFrame>> frames;
  std::optional<int> epsilon;
  std::optional<int> orientation;

  std::size_t size() const noexcept { return s.size(); }
  /// Throws Error(InvalidArgument) on length mismatch or a non-increasing grid.
  void validate() const;
};

struct FrenetIntegrationOptions {
  /// Arclength at which the initial data applies; defaults to the first grid point.
  std::optional<double> initial_s;
  /// Upper bound on the RK4 step; 0 uses one step per grid interval.
  double max_step = 0.0;
  /// Signature-aware Gram-Schmidt after every step. Off by default.
  bool stabilize = false;
  /// FrameDrift is raised if any frame residual exceeds this.
  double drift_limit = 1e-6;
};

/// Integrates psi' = T, T' = k N, N' = -eps k T + t B, B' = t N with
/// classical fixed-step RK4, outward from the initial arclength in both
/// directions. Frames are checked but not re-orthogonalized.
///
/// Throws Error(BadInitialFrame) if the initial frame residual exceeds 1e-12
/// (scaled by its coordinate magnitude) or its epsilon disagrees with the
/// pair, and Error(FrameDrift) if a residual exceeds options.drift_limit.
CurveSamples integrate_frenet(const IntrinsicPair& pair, const FrenetFrame& initial,
                              const LorentzVector& initial_position, std::span<const double> s_grid,
                              const FrenetIntegrationOptions& options = {});

enum class Stencil { Central2, Central4 };

struct FrameEstimate {
  FrenetFrame frame;
  double kappa;
  double tau;
};

/// Finite-difference Frenet apparatus at sample i.
///
/// T = psi', kappa = |psi''|, N = psi''/kappa, B = sigma (T x N) and
/// tau = eps g(B', N). Central2 works on non-uniform grids and needs two
/// samples on each side of i; Central4 needs a uniform grid and four.
/// sigma is `orientation`, else samples.orientation, else kDefaultOrientation.
/// With stride k the stencil uses every k-th sample around i.
/// Throws Error(DegenerateCurvature) if kappa < 1e-8.
FrameEstimate estimate_frame(const CurveSamples& samples, std::size_t i,
                             Stencil stencil = Stencil::Central2,
                             std::optional<int> orientation = {}, std::size_t stride = 1);

/// Stride that brings a sample spacing close to `target` (at least 1).
/// Third differences of boosted frames lose digits at spacings near 1e-3.
std::size_t estimation_stride(double spacing, double target = 0.01);

/// B = (T'' + eps T) / f on a uniform theta grid, second derivative by
/// central differences (one-sided second order at the ends).
/// Throws Error(ZeroSlope) if |f| < 1e-12.
std::vector<LorentzVector> binormal_from_tangent(std::span<const LorentzVector> tangent,
                                                 double theta_step, double f, int epsilon);

/// Largest change of any of the six frame products relative to `reference`.
double max_product_drift(std::span<const FrenetFrame> frames, const FrenetFrame& reference);

/// max |g(psi', psi') - 1| at interior samples, psi' by central differences.
double unit_speed_residual(const CurveSamples& samples);

/// Largest per-component deviation between two equally sized point sets
/// after the best constant translation (component-wise midrange shift).
double max_deviation_modulo_translation(std::span<const LorentzVector> a,
                                        std::span<const LorentzVector> b);

/// min:max:step, endpoints included within half a step.
std::vector<double> uniform_grid(double lo, double hi, double step);

}  // namespace lorhelix
