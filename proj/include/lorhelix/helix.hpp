#pragma once

#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "lorhelix/frenet.hpp"
#include "lorhelix/intrinsics.hpp"
#include "lorhelix/minkowski.hpp"

namespace lorhelix {

enum class HelixCase {
  Case1_TimelikeNormal,                  // eps = -1, spacelike axis e3
  Case2_SpacelikeNormal_SpacelikeAxis,   // eps = +1, |m| > 1, axis e3
  Case3_SpacelikeNormal_TimelikeAxis,    // eps = +1, |m| < 1, axis e1
};

const char* to_string(HelixCase c) noexcept;
/// Short CLI/JSON label: "case1", "case2", "case3".
const char* short_name(HelixCase c) noexcept;

enum class AxisRequest { Any, Spacelike, Timelike };

enum class RejectionReason {
  PlaneCurveSpacelikeAxis,  // no plane curve with spacelike normal has a spacelike axis
  DegenerateSlope,          // eps = +1 and |m| = 1
  AxisMismatch,             // requested axis character contradicts (eps, m)
};

struct Rejection {
  RejectionReason reason;
  std::string message;
};

using Classification = std::variant<HelixCase, Rejection>;

/// Total on eps in {+1, -1} and finite m; throws Error(InvalidArgument) otherwise.
Classification classify_case(int epsilon, double m, AxisRequest request = AxisRequest::Any);

/// n as a function of the slope ratio m, and back. Case 2 uses |m|.
double n_from_slope(HelixCase c, double m);
double slope_from_n(HelixCase c, double n);

/// A classified spacelike general helix.
///
/// `mirror` selects the negative root for the tangent phase rate (the
/// lower-sign branch), which is the reflection of the canonical curve across
/// a plane containing the axis.
struct HelixSpec {
  HelixCase kind;
  double m = 0.0;    // tau / kappa
  double n = 0.0;    // cos(phi), cosh(phi) or sinh(phi) by case
  double phi = 0.0;  // non-negative Lorentzian angle between tangent and axis
  IntrinsicPair pair;
  LorentzVector axis;
  bool mirror = false;

  int epsilon() const noexcept { return kind == HelixCase::Case1_TimelikeNormal ? -1 : 1; }
  /// Tangent amplitude: sqrt(1-n^2), sqrt(n^2-1) or sqrt(n^2+1).
  double amplitude() const;
  /// Rate c of the tangent phase c*theta: sqrt(1+m^2), sqrt(m^2-1) or sqrt(1-m^2).
  double phase_rate() const;
  /// Throws Error(CaseConstraintViolated) if the invariants of `kind` fail.
  void validate() const;
};

/// Classifies a helix pair. Throws Error(CaseConstraintViolated) if tau/kappa
/// is not constant; classification failures come back as Rejection.
std::variant<HelixSpec, Rejection> plan_helix(const IntrinsicPair& pair,
                                              AxisRequest request = AxisRequest::Any,
                                              bool mirror = false);

/// As plan_helix, but a Rejection is raised as Error(CaseConstraintViolated).
HelixSpec make_helix_spec(const IntrinsicPair& pair, AxisRequest request = AxisRequest::Any,
                          bool mirror = false);

/// Unit tangent of the solved third-order equation at parameter theta.
LorentzVector tangent_closed_form(const HelixSpec& spec, double theta);

/// The full Frenet frame at theta, N = dT/dtheta and B = (T'' + eps T)/m
/// written out so that it stays valid for m = 0.
FrenetFrame frame_closed_form(const HelixSpec& spec, double theta);

/// Orientation sigma (B = sigma T x N) of the closed-form frames.
int helix_orientation(const HelixSpec& spec);

/// psi(s) = integral of T(theta(s)) ds from the theta reference point, so
/// psi vanishes there. Constant curvature uses the exact antiderivative,
/// other curvatures adaptive Gauss-Kronrod quadrature per grid interval.
/// Frames are the closed-form frames.
CurveSamples synthesize(const HelixSpec& spec, std::span<const double> s_grid);

struct TangentOdeResidual {
  /// Max residual of (T''/f)' + ((eps - f^2)/f) T' - eps (f'/f) T; absent when m = 0.
  std::optional<double> third_order;
  /// Max residual of T''' + (eps - m^2) T' (for eps = -1: T''' - (1+m^2) T').
  double reduced = 0.0;
};

/// Finite-difference residuals on a uniform theta grid (at least 5 points).
TangentOdeResidual tangent_ode_residual(const HelixSpec& spec, std::span<const double> theta_grid);

/// As above but returns only the third-order residual; Error(ZeroSlope) for m = 0.
double third_order_residual(const HelixSpec& spec, std::span<const double> theta_grid);

struct AxisEstimate {
  LorentzVector axis;
  double variance = 0.0;  // summed per-component variance of the per-sample axis
  std::size_t samples = 0;
};

/// Reconstructs the fixed axis d = g(d,T) T + beta B from each frame and
/// picks the sign of beta with the smaller spread. Uses samples.frames when
/// present, frames estimated by finite differences otherwise.
/// Throws Error(DegenerateFrames) when no frame is available.
AxisEstimate helix_axis(const CurveSamples& samples, const HelixSpec& spec);

}  // namespace lorhelix
