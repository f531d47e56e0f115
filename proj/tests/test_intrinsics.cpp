#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include <gtest/gtest.h>

#include "lorhelix/intrinsics.hpp"
#include "support.hpp"

using namespace lorhelix;

TEST(ScalarFunction, ConstantFamily) {
  const auto f = ScalarFunction::constant(3.0);
  EXPECT_DOUBLE_EQ(f(-7.0), 3.0);
  EXPECT_DOUBLE_EQ(f.derivative(1.0), 0.0);
  EXPECT_DOUBLE_EQ(f.antiderivative(2.0), 6.0);
  EXPECT_DOUBLE_EQ(f.inverse_antiderivative(6.0), 2.0);
  EXPECT_EQ(f.descriptor(), "const:3");
  EXPECT_FALSE(f.domain().bounded());
}

TEST(ScalarFunction, RationalMinus) {
  const auto f = ScalarFunction::rational_minus(2.0);
  EXPECT_DOUBLE_EQ(f(0.0), 0.5);
  EXPECT_DOUBLE_EQ(f(1.0), 2.0 / 3.0);
  EXPECT_NEAR(f.derivative(1.0), 2.0 * 2.0 * 1.0 / 9.0, 1e-14);
  EXPECT_NEAR(f.antiderivative(1.0), std::atanh(0.5), 1e-15);
  EXPECT_NEAR(f.inverse_antiderivative(std::atanh(0.5)), 1.0, 1e-14);
  EXPECT_LORHELIX_ERROR(f(2.0), ErrorCode::OutOfDomain);
  EXPECT_LORHELIX_ERROR(f(-2.5), ErrorCode::OutOfDomain);
  const auto g = ScalarFunction::rational_minus(2.0, 3.0);
  EXPECT_DOUBLE_EQ(g(1.0), 1.0);
  EXPECT_EQ(g.descriptor(), "ratminus:2,3");
}

TEST(ScalarFunction, RationalPlus) {
  const auto f = ScalarFunction::rational_plus(0.5);
  EXPECT_DOUBLE_EQ(f(0.0), 2.0);
  EXPECT_NEAR(f.antiderivative(0.5), std::numbers::pi / 4, 1e-15);
  EXPECT_NEAR(f.inverse_antiderivative(std::numbers::pi / 4), 0.5, 1e-14);
  EXPECT_LORHELIX_ERROR(f.inverse_antiderivative(2.0), ErrorCode::OutOfRange);
}

TEST(ScalarFunction, Reciprocal) {
  const auto f = ScalarFunction::reciprocal(2.0);
  EXPECT_DOUBLE_EQ(f(4.0), 0.5);
  EXPECT_NEAR(f.antiderivative(std::exp(1.0)), 2.0, 1e-15);
  EXPECT_DOUBLE_EQ(f.antiderivative(1.0), 0.0);
  EXPECT_NEAR(f.inverse_antiderivative(2.0), std::exp(1.0), 1e-14);
  EXPECT_LORHELIX_ERROR(f(0.0), ErrorCode::OutOfDomain);
  EXPECT_LORHELIX_ERROR(f(-1.0), ErrorCode::OutOfDomain);
  EXPECT_DOUBLE_EQ(default_reference(f), 1.0);
}

TEST(ScalarFunction, ParseDescriptors) {
  EXPECT_EQ(ScalarFunction::parse("const:3").family(), Family::Constant);
  EXPECT_EQ(ScalarFunction::parse("ratminus:2").family(), Family::RationalMinus);
  EXPECT_EQ(ScalarFunction::parse("ratplus:0.5,1").family(), Family::RationalPlus);
  EXPECT_EQ(ScalarFunction::parse("recip:6").family(), Family::Reciprocal);
  EXPECT_DOUBLE_EQ(ScalarFunction::parse("const:-1.5")(0.0), -1.5);
  EXPECT_LORHELIX_ERROR(ScalarFunction::parse("const"), ErrorCode::ParseError);
  EXPECT_LORHELIX_ERROR(ScalarFunction::parse("cubic:1"), ErrorCode::ParseError);
  EXPECT_LORHELIX_ERROR(ScalarFunction::parse("const:abc"), ErrorCode::ParseError);
  EXPECT_LORHELIX_ERROR(ScalarFunction::parse("recip:1,2"), ErrorCode::ParseError);
  EXPECT_LORHELIX_ERROR(ScalarFunction::parse("ratminus:0"), ErrorCode::InvalidArgument);
}

TEST(ScalarFunction, DescriptorRoundTrip) {
  for (const char* d : {"const:3", "ratminus:2", "ratplus:0.5", "recip:6", "ratplus:0.25,3"}) {
    EXPECT_EQ(ScalarFunction::parse(d).descriptor(), d);
  }
}

TEST(ScalarFunction, TabulatedMatchesSmoothFunction) {
  std::vector<double> s, v;
  for (int i = 0; i <= 200; ++i) {
    s.push_back(-1.0 + 0.01 * i);
    v.push_back(2.0 + std::sin(s.back()));
  }
  const auto f = ScalarFunction::tabulated(s, v);
  EXPECT_TRUE(f.domain().closed);
  EXPECT_NEAR(f(0.333), 2.0 + std::sin(0.333), 1e-5);
  // integral from the first node
  const double exact = 2.0 * (0.5 + 1.0) - std::cos(0.5) + std::cos(-1.0);
  EXPECT_NEAR(f.antiderivative(0.5), exact, 1e-6);
  EXPECT_NEAR(f.inverse_antiderivative(exact), 0.5, 1e-6);
  EXPECT_LORHELIX_ERROR(f(1.5), ErrorCode::OutOfDomain);
}

TEST(ScalarFunction, TabulatedValidation) {
  EXPECT_LORHELIX_ERROR(ScalarFunction::tabulated({0, 1, 2}, {1, 1, 1}), ErrorCode::InvalidArgument);
  EXPECT_LORHELIX_ERROR(ScalarFunction::tabulated({0, 1, 1, 2}, {1, 1, 1, 1}), ErrorCode::InvalidArgument);
  EXPECT_LORHELIX_ERROR(ScalarFunction::tabulated({0, 1, 2, 3}, {1, -1, 1, 1}), ErrorCode::InvalidArgument);
}

TEST(ScalarFunction, LoadCsv) {
  std::istringstream in("s,kappa\n0,1\n1,2\n2,3\n3,4\n");
  const auto f = ScalarFunction::load_csv(in);
  EXPECT_NEAR(f(1.5), 2.5, 1e-12);
  std::istringstream bad("0,1\n1\n");
  EXPECT_LORHELIX_ERROR(ScalarFunction::load_csv(bad), ErrorCode::ParseError);
  EXPECT_LORHELIX_ERROR(ScalarFunction::load_csv(std::filesystem::path("/nonexistent/k.csv")),
                        ErrorCode::IoError);

  std::filesystem::create_directories(LORHELIX_TEST_TMP);
  const auto path = std::filesystem::path(LORHELIX_TEST_TMP) / "kappa_table.csv";
  std::ofstream(path) << "0,1\n1,1\n2,1\n3,1\n";
  const auto g = ScalarFunction::parse("table:" + path.string());
  EXPECT_EQ(g.family(), Family::Tabulated);
  EXPECT_NEAR(g(2.5), 1.0, 1e-14);
}

TEST(Theta, GaugeAndInverse) {
  const auto k = ScalarFunction::rational_minus(2.0);
  EXPECT_DOUBLE_EQ(theta_of_s(k, 0.0), 0.0);
  EXPECT_NEAR(theta_of_s(k, 2.0 * std::tanh(0.8)), 0.8, 1e-14);
  EXPECT_NEAR(s_of_theta(k, 0.8), 2.0 * std::tanh(0.8), 1e-14);
  const auto r = ScalarFunction::reciprocal(2.0);
  EXPECT_NEAR(theta_of_s(r, std::exp(0.5)), 1.0, 1e-14);
  EXPECT_NEAR(s_of_theta(r, 1.0), std::exp(0.5), 1e-14);
  EXPECT_NEAR(theta_of_s(ScalarFunction::constant(3.0), 2.0, 1.0), 3.0, 1e-15);
  EXPECT_LORHELIX_ERROR(theta_of_s(k, 3.0), ErrorCode::OutOfDomain);
}

TEST(IntrinsicPair, ValidateAndRatio) {
  IntrinsicPair w{ScalarFunction::constant(3), ScalarFunction::constant(2), -1, {}};
  EXPECT_NO_THROW(w.validate());
  EXPECT_DOUBLE_EQ(*ratio(w), 2.0 / 3.0);

  IntrinsicPair log{ScalarFunction::reciprocal(1), ScalarFunction::reciprocal(4), 1, {}};
  EXPECT_DOUBLE_EQ(*ratio(log), 4.0);
  EXPECT_DOUBLE_EQ(log.theta_reference(), 1.0);

  IntrinsicPair general{ScalarFunction::constant(1), ScalarFunction::rational_plus(1), 1, {}};
  EXPECT_FALSE(ratio(general).has_value());

  IntrinsicPair bad_eps{ScalarFunction::constant(1), ScalarFunction::constant(0), 0, {}};
  EXPECT_LORHELIX_ERROR(bad_eps.validate(), ErrorCode::InvalidArgument);
  IntrinsicPair negative{ScalarFunction::constant(-1), ScalarFunction::constant(0), 1, {}};
  EXPECT_LORHELIX_ERROR(negative.validate(), ErrorCode::InvalidArgument);
}

TEST(Interval, ContainsAndIntersect) {
  Interval open{-2, 2, false};
  EXPECT_TRUE(open.contains(1.999));
  EXPECT_FALSE(open.contains(2.0));
  Interval closed{0, 3, true};
  EXPECT_TRUE(closed.contains(3.0));
  const auto both = open.intersect(closed);
  EXPECT_DOUBLE_EQ(both.lo, 0.0);
  EXPECT_DOUBLE_EQ(both.hi, 2.0);
  EXPECT_EQ(domain_scan(Interval{0, 1, true}, 11).size(), 11u);
}
