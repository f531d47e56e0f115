#include <cmath>

#include <gtest/gtest.h>

#include "lorhelix/helix.hpp"
#include "support.hpp"

using namespace lorhelix;

namespace {

IntrinsicPair constants(double k, double t, int eps) {
  return {ScalarFunction::constant(k), ScalarFunction::constant(t), eps, {}};
}

bool is_case(const Classification& c, HelixCase k) {
  return std::holds_alternative<HelixCase>(c) && std::get<HelixCase>(c) == k;
}

bool is_rejection(const Classification& c, RejectionReason r) {
  return std::holds_alternative<Rejection>(c) && std::get<Rejection>(c).reason == r;
}

LorentzVector max_abs(const LorentzVector& v) {
  return {std::abs(v.x1()), std::abs(v.x2()), std::abs(v.x3())};
}

double largest(const LorentzVector& v) {
  const auto a = max_abs(v);
  return std::max({a.x1(), a.x2(), a.x3()});
}

}  // namespace

TEST(ClassifyCase, Table) {
  using HC = HelixCase;
  using RR = RejectionReason;
  EXPECT_TRUE(is_case(classify_case(-1, 0.5), HC::Case1_TimelikeNormal));
  EXPECT_TRUE(is_case(classify_case(-1, 0.0), HC::Case1_TimelikeNormal));
  EXPECT_TRUE(is_case(classify_case(-1, 1.0), HC::Case1_TimelikeNormal));
  EXPECT_TRUE(is_rejection(classify_case(-1, 0.5, AxisRequest::Timelike), RR::AxisMismatch));
  EXPECT_TRUE(is_case(classify_case(1, 2.0), HC::Case2_SpacelikeNormal_SpacelikeAxis));
  EXPECT_TRUE(is_case(classify_case(1, -2.0), HC::Case2_SpacelikeNormal_SpacelikeAxis));
  EXPECT_TRUE(is_rejection(classify_case(1, 2.0, AxisRequest::Timelike), RR::AxisMismatch));
  EXPECT_TRUE(is_case(classify_case(1, 0.5), HC::Case3_SpacelikeNormal_TimelikeAxis));
  EXPECT_TRUE(is_case(classify_case(1, 0.0), HC::Case3_SpacelikeNormal_TimelikeAxis));
  EXPECT_TRUE(is_rejection(classify_case(1, 0.5, AxisRequest::Spacelike), RR::AxisMismatch));
  EXPECT_TRUE(is_rejection(classify_case(1, 0.0, AxisRequest::Spacelike), RR::PlaneCurveSpacelikeAxis));
  EXPECT_TRUE(is_rejection(classify_case(1, 1.0), RR::DegenerateSlope));
  EXPECT_TRUE(is_rejection(classify_case(1, -1.0), RR::DegenerateSlope));
  EXPECT_TRUE(is_rejection(classify_case(1, 1.0 + 1e-14), RR::DegenerateSlope));
  EXPECT_LORHELIX_ERROR(classify_case(0, 1.0), ErrorCode::InvalidArgument);
  EXPECT_LORHELIX_ERROR(classify_case(1, std::nan("")), ErrorCode::InvalidArgument);
}

TEST(ClassifyCase, LemmaMessages) {
  const auto r = std::get<Rejection>(classify_case(1, 0.0, AxisRequest::Spacelike));
  EXPECT_NE(r.message.find("Lemma 4"), std::string::npos);
  const auto d = std::get<Rejection>(classify_case(1, 1.0));
  EXPECT_NE(d.message.find("degenerate"), std::string::npos);
}

TEST(SlopeRelations, ForwardAndInverse) {
  for (double phi = 0.05; phi < 1.5; phi += 0.05) {
    // Case 1: m = cot(phi), n = cos(phi).
    const double m1 = 1.0 / std::tan(phi);
    EXPECT_NEAR(n_from_slope(HelixCase::Case1_TimelikeNormal, m1), std::cos(phi), 1e-12);
    EXPECT_NEAR(slope_from_n(HelixCase::Case1_TimelikeNormal, std::cos(phi)), m1, 1e-9 * std::max(1.0, m1));
    // Case 2: m = coth(phi), n = cosh(phi).
    const double m2 = 1.0 / std::tanh(phi);
    EXPECT_NEAR(n_from_slope(HelixCase::Case2_SpacelikeNormal_SpacelikeAxis, m2), std::cosh(phi), 1e-9);
    EXPECT_NEAR(n_from_slope(HelixCase::Case2_SpacelikeNormal_SpacelikeAxis, -m2), std::cosh(phi), 1e-9);
    EXPECT_NEAR(slope_from_n(HelixCase::Case2_SpacelikeNormal_SpacelikeAxis, std::cosh(phi)), m2, 1e-9 * m2);
    // Case 3: m = tanh(phi), n = sinh(phi).
    const double m3 = std::tanh(phi);
    EXPECT_NEAR(n_from_slope(HelixCase::Case3_SpacelikeNormal_TimelikeAxis, m3), std::sinh(phi), 1e-9);
    EXPECT_NEAR(slope_from_n(HelixCase::Case3_SpacelikeNormal_TimelikeAxis, std::sinh(phi)), m3, 1e-12);
  }
  EXPECT_LORHELIX_ERROR(n_from_slope(HelixCase::Case2_SpacelikeNormal_SpacelikeAxis, 0.5),
                        ErrorCode::CaseConstraintViolated);
  EXPECT_LORHELIX_ERROR(n_from_slope(HelixCase::Case3_SpacelikeNormal_TimelikeAxis, 2.0),
                        ErrorCode::CaseConstraintViolated);
}

TEST(PlanHelix, WCurveCases) {
  const auto s1 = make_helix_spec(constants(3, 2, -1));
  EXPECT_EQ(s1.kind, HelixCase::Case1_TimelikeNormal);
  EXPECT_NEAR(s1.phi, std::atan(3.0 / 2.0), 1e-14);
  EXPECT_EQ(s1.axis, LorentzVector::e3());

  const auto s2 = make_helix_spec(constants(1, 2, 1));
  EXPECT_EQ(s2.kind, HelixCase::Case2_SpacelikeNormal_SpacelikeAxis);
  EXPECT_NEAR(s2.phi, std::atanh(0.5), 1e-14);  // arccoth(2)

  const auto s3 = make_helix_spec(constants(2, 1, 1));
  EXPECT_EQ(s3.kind, HelixCase::Case3_SpacelikeNormal_TimelikeAxis);
  EXPECT_NEAR(s3.phi, std::atanh(0.5), 1e-14);
  EXPECT_EQ(s3.axis, LorentzVector::e1());
}

TEST(PlanHelix, RejectionsAndNonHelix) {
  EXPECT_TRUE(std::holds_alternative<Rejection>(plan_helix(constants(1, 1, 1))));
  EXPECT_TRUE(std::holds_alternative<Rejection>(plan_helix(constants(1, 0, 1), AxisRequest::Spacelike)));
  EXPECT_LORHELIX_ERROR(make_helix_spec(constants(1, 1, 1)), ErrorCode::CaseConstraintViolated);
  IntrinsicPair general{ScalarFunction::constant(1), ScalarFunction::rational_plus(1), 1, {}};
  EXPECT_LORHELIX_ERROR(plan_helix(general), ErrorCode::CaseConstraintViolated);
}

TEST(HelixSpec, ValidateCatchesTampering) {
  auto s = make_helix_spec(constants(2, 1, 1));
  s.n = 5.0;
  EXPECT_LORHELIX_ERROR(s.validate(), ErrorCode::CaseConstraintViolated);
  auto t = make_helix_spec(constants(1, 2, 1));
  t.m = 0.5;
  EXPECT_LORHELIX_ERROR(t.validate(), ErrorCode::CaseConstraintViolated);
}

TEST(FrameClosedForm, OrthonormalAndFrenetInTheta) {
  for (const auto& pair : {constants(3, 2, -1), constants(1, 0, -1), constants(1, 2, 1), constants(1, -3, 1),
                           constants(2, 1, 1), constants(1, 0, 1)}) {
    for (bool mirror : {false, true}) {
      const auto spec = make_helix_spec(pair, AxisRequest::Any, mirror);
      const int eps = spec.epsilon();
      const double h = 1e-4;
      for (double th : {-1.1, 0.0, 0.4, 1.3}) {
        const auto f = frame_closed_form(spec, th);
        EXPECT_LT(frame_residual(f), 1e-12 * std::max(1.0, largest(f.T) * largest(f.T)));
        EXPECT_EQ(f.epsilon, eps);
        const auto p = frame_closed_form(spec, th + h);
        const auto q = frame_closed_form(spec, th - h);
        // dT = N, dN = -eps T + m B, dB = m N with unit curvature in theta.
        const double tol = 1e-6 * std::max(1.0, largest(f.T));
        EXPECT_LT(largest((p.T - q.T) / (2 * h) - f.N), tol);
        EXPECT_LT(largest((p.N - q.N) / (2 * h) - (-eps * f.T + spec.m * f.B)), tol);
        EXPECT_LT(largest((p.B - q.B) / (2 * h) - spec.m * f.N), tol);
      }
      EXPECT_EQ(helix_orientation(spec), frame_orientation(frame_closed_form(spec, 0.7)));
    }
  }
}

TEST(FrameClosedForm, MirrorFlipsOrientation) {
  for (const auto& pair : {constants(3, 2, -1), constants(1, 2, 1), constants(2, 1, 1)}) {
    const auto a = make_helix_spec(pair);
    const auto b = make_helix_spec(pair, AxisRequest::Any, true);
    EXPECT_EQ(helix_orientation(a), -helix_orientation(b));
  }
}

TEST(FrameClosedForm, CaseOneTangentInvariant) {
  const auto spec = make_helix_spec(constants(3, 2, -1));
  for (double th = -3.0; th <= 3.0; th += 0.1) {
    const auto T = tangent_closed_form(spec, th);
    const double lhs = -T.x1() * T.x1() + T.x2() * T.x2();
    EXPECT_NEAR(lhs, 1.0 - spec.n * spec.n, 1e-12 * std::max(1.0, T.x2() * T.x2()));
  }
}

TEST(FrameClosedForm, ConstantAngleWithAxis) {
  for (const auto& pair : {constants(3, 2, -1), constants(1, 2, 1), constants(2, 1, 1)}) {
    const auto spec = make_helix_spec(pair);
    const double g0 = metric(tangent_closed_form(spec, 0.0), spec.axis);
    for (double th = -2.0; th <= 2.0; th += 0.25) {
      EXPECT_NEAR(metric(tangent_closed_form(spec, th), spec.axis), g0, 1e-12);
    }
  }
}

TEST(Synthesize, GaugeUnitSpeedAndFrames) {
  const auto spec = make_helix_spec(constants(3, 2, -1));
  const auto grid = uniform_grid(-2, 2, 1e-3);
  const auto c = synthesize(spec, grid);
  EXPECT_EQ(c.psi[2000], LorentzVector());
  EXPECT_LT(unit_speed_residual(c), 1e-5);
  ASSERT_TRUE(c.frames.has_value());
  EXPECT_EQ(c.epsilon, -1);
  EXPECT_EQ(c.orientation, helix_orientation(spec));
}

TEST(Synthesize, AgreesWithRk4) {
  const auto grid = uniform_grid(-2, 2, 1e-3);
  for (const auto& pair : {constants(3, 2, -1), constants(1, 2, 1), constants(2, 1, 1)}) {
    for (bool mirror : {false, true}) {
      const auto spec = make_helix_spec(pair, AxisRequest::Any, mirror);
      const auto a = synthesize(spec, grid);
      FrenetIntegrationOptions opt;
      opt.initial_s = 0.0;
      const auto b = integrate_frenet(pair, frame_closed_form(spec, 0.0), {}, grid, opt);
      EXPECT_LT(max_deviation_modulo_translation(a.psi, b.psi), 1e-6);
    }
  }
}

TEST(Synthesize, QuadraturePathForTabulatedCurvature) {
  std::vector<double> s, k, t;
  for (int i = 0; i <= 60; ++i) {
    s.push_back(-1.5 + 0.05 * i);
    k.push_back(1.5 + 0.5 * std::cos(s.back()));
    t.push_back(0.5 * k.back());
  }
  IntrinsicPair pair{ScalarFunction::tabulated(s, k), ScalarFunction::tabulated(s, t), 1, {}};
  const auto spec = make_helix_spec(pair);
  EXPECT_EQ(spec.kind, HelixCase::Case3_SpacelikeNormal_TimelikeAxis);
  const auto grid = uniform_grid(-1.5, 1.5, 1e-3);
  const auto a = synthesize(spec, grid);
  FrenetIntegrationOptions opt;
  opt.initial_s = spec.pair.theta_reference();
  const auto b = integrate_frenet(pair, frame_closed_form(spec, 0.0), {}, grid, opt);
  EXPECT_LT(max_deviation_modulo_translation(a.psi, b.psi), 1e-6);
  EXPECT_LT(unit_speed_residual(a), 1e-5);
}

TEST(Synthesize, RejectsGridOutsideDomain) {
  IntrinsicPair pair{ScalarFunction::rational_minus(1), ScalarFunction::constant(0), -1, {}};
  const auto spec = make_helix_spec(pair);
  EXPECT_LORHELIX_ERROR(synthesize(spec, uniform_grid(-1.5, 0.5, 0.1)), ErrorCode::OutOfDomain);
  const std::vector<double> unsorted{0.1, 0.0};
  EXPECT_LORHELIX_ERROR(synthesize(spec, unsorted), ErrorCode::InvalidArgument);
}

TEST(TangentOde, Residuals) {
  const auto theta = uniform_grid(-1.0, 1.0, 1e-3);
  const auto s1 = make_helix_spec(constants(3, 2, -1));
  const auto r1 = tangent_ode_residual(s1, theta);
  EXPECT_LT(r1.reduced, 1e-5);
  ASSERT_TRUE(r1.third_order.has_value());
  EXPECT_LT(*r1.third_order, 1e-5);

  const auto s0 = make_helix_spec(constants(1, 0, -1));
  const auto r0 = tangent_ode_residual(s0, theta);
  EXPECT_FALSE(r0.third_order.has_value());
  EXPECT_LT(r0.reduced, 1e-5);
  EXPECT_LORHELIX_ERROR(third_order_residual(s0, theta), ErrorCode::ZeroSlope);
}

TEST(HelixAxis, RecoversAxis) {
  const auto grid = uniform_grid(-1, 1, 1e-3);
  for (const auto& pair : {constants(3, 2, -1), constants(1, 2, 1), constants(2, 1, 1)}) {
    const auto spec = make_helix_spec(pair);
    const auto c = synthesize(spec, grid);
    const auto ax = helix_axis(c, spec);
    EXPECT_LT(ax.variance, 1e-20);
    EXPECT_LT(largest(max_abs(ax.axis) - max_abs(spec.axis)), 1e-12);

    CurveSamples bare{c.s, c.psi, std::nullopt, std::nullopt, std::nullopt};
    const auto est = helix_axis(bare, spec);
    EXPECT_LT(largest(max_abs(est.axis) - max_abs(spec.axis)), 1e-4);
  }
}
