#include <algorithm>
#include <cmath>

#include <gtest/gtest.h>
#include <json.hpp>

#include "lorhelix/catalog.hpp"
#include "support.hpp"

using namespace lorhelix;

TEST(Catalog, ListsEightEntries) {
  const auto& all = catalog_list();
  const std::vector<std::string> names{"plane-case1",    "plane-case3",    "wcurve-case1",  "wcurve-case2",
                                       "wcurve-case3",   "loghelix-case1", "loghelix-case2", "loghelix-case3"};
  ASSERT_EQ(all.size(), names.size());
  for (std::size_t i = 0; i < names.size(); ++i) EXPECT_EQ(all[i].name, names[i]);
  EXPECT_EQ(catalog_find("wcurve-case1").figure_params.at("kappa"), 3.0);
  EXPECT_EQ(catalog_find("wcurve-case1").figure_params.at("tau"), 2.0);
  EXPECT_EQ(catalog_find("loghelix-case2").figure_params.at("h"), 1.0);
  EXPECT_EQ(catalog_find("loghelix-case2").figure_params.at("r"), 4.0);
  EXPECT_EQ(catalog_find("plane-case3").figure_params.at("a"), 0.5);
  EXPECT_LORHELIX_ERROR(catalog_find("spiral"), ErrorCode::InvalidArgument);
}

TEST(Catalog, EntryCasesMatchNames) {
  for (const auto& e : catalog_list()) {
    const auto spec = catalog_spec(e.name);
    const std::string suffix = e.name.substr(e.name.rfind('-') + 1);
    EXPECT_EQ(short_name(spec.kind), suffix) << e.name;
  }
}

TEST(CatalogEval, PrintedValuesAtOrigin) {
  const auto w1 = catalog_eval("wcurve-case1", {{"kappa", 3}, {"tau", 2}}, 0.0);
  EXPECT_NEAR(w1.x1(), 3.0 / 13.0, 1e-15);
  EXPECT_EQ(w1.x2(), 0.0);
  EXPECT_EQ(w1.x3(), 0.0);
  const auto w3 = catalog_eval("wcurve-case3", {{"kappa", 2}, {"tau", 1}}, 0.0);
  EXPECT_EQ(w3.x1(), 0.0);
  EXPECT_EQ(w3.x2(), 0.0);
  EXPECT_NEAR(w3.x3(), 2.0 / 3.0, 1e-15);
  const auto p1 = catalog_eval("plane-case1", {{"a", 2}}, 0.0);
  EXPECT_EQ(p1, LorentzVector(-2, 0, 0));
  const auto p3 = catalog_eval("plane-case3", {}, 0.0);
  EXPECT_EQ(p3, LorentzVector(0, 0, 0.5));
}

TEST(CatalogEval, LogHelixAtUnitArclength) {
  // s = 1 is theta = 0: psi1 = h/(h^2 + r^2 - 1) (1 - 0), psi2 = -h/((h^2 + r^2 - 1) w), psi3 = r/w.
  const double h = 2, r = 1, w = std::sqrt(5.0);
  const auto p = catalog_eval("loghelix-case1", {}, 1.0);
  EXPECT_NEAR(p.x1(), h / 4.0, 1e-15);
  EXPECT_NEAR(p.x2(), -h / (4.0 * w), 1e-15);
  EXPECT_NEAR(p.x3(), r / w, 1e-15);
}

TEST(CatalogEval, ValidityRegion) {
  EXPECT_LORHELIX_ERROR(catalog_eval("wcurve-case2", {{"kappa", 2}, {"tau", 1}}, 0.0), ErrorCode::OutOfValidity);
  EXPECT_LORHELIX_ERROR(catalog_eval("wcurve-case3", {{"kappa", 1}, {"tau", 2}}, 0.0), ErrorCode::OutOfValidity);
  EXPECT_LORHELIX_ERROR(catalog_eval("loghelix-case1", {}, 0.0), ErrorCode::OutOfValidity);
  EXPECT_LORHELIX_ERROR(catalog_eval("loghelix-case2", {{"h", 2}, {"r", 1}}, 1.0), ErrorCode::OutOfValidity);
  EXPECT_LORHELIX_ERROR(catalog_eval("plane-case1", {}, 2.0), ErrorCode::OutOfValidity);
  EXPECT_LORHELIX_ERROR(catalog_eval("plane-case1", {{"a", -1}}, 0.0), ErrorCode::OutOfValidity);
  EXPECT_LORHELIX_ERROR(catalog_eval("plane-case1", {{"b", 1}}, 0.0), ErrorCode::InvalidArgument);
}

TEST(CatalogGrid, StandardGrids) {
  const auto w = catalog_grid("wcurve-case1");
  EXPECT_EQ(w.size(), 4001u);
  const auto l = catalog_grid("loghelix-case3");
  EXPECT_DOUBLE_EQ(l.front(), 0.5);
  EXPECT_DOUBLE_EQ(l.back(), 3.0);
  const auto p = catalog_grid("plane-case1");
  EXPECT_LE(std::atanh(p.back() / 2.0), 1.2);
  EXPECT_GT(std::atanh(p.back() / 2.0), 1.19);
  EXPECT_DOUBLE_EQ(p.front(), -p.back());
}

TEST(CatalogValidate, WCurveCaseOneIsConsistent) {
  const auto rep = catalog_validate("wcurve-case1", {{"kappa", 3}, {"tau", 2}});
  EXPECT_TRUE(rep.consistent);
  EXPECT_STREQ(rep.verdict(), "CONSISTENT");
  EXPECT_LT(rep.max_deviation, 1e-6);
  EXPECT_LT(rep.kappa_error, 1e-3);
  EXPECT_LT(rep.tau_error, 1e-3);
}

TEST(CatalogValidate, PlaneCurveHasNoTorsion) {
  const auto rep = catalog_validate("plane-case1", {{"a", 2}});
  EXPECT_TRUE(rep.consistent);
  EXPECT_LT(rep.tau_error, 1e-6);
}

TEST(CatalogValidate, EveryEntryInvariants) {
  for (const auto& e : catalog_list()) {
    const auto rep = catalog_validate(e.name);
    if (!rep.consistent) continue;
    EXPECT_LT(rep.unit_speed, 1e-4) << e.name;
    EXPECT_LT(rep.slope_error, 1e-3) << e.name;
  }
}

TEST(CatalogValidate, VerdictFollowsThreshold) {
  const auto rep = catalog_validate("loghelix-case3", {{"h", 6}, {"r", 1}});
  EXPECT_EQ(rep.helix_case, "case3");
  EXPECT_EQ(rep.samples, 2501u);
  EXPECT_EQ(rep.threshold, 1e-4);
  EXPECT_EQ(rep.consistent, rep.max_deviation <= rep.threshold);
  EXPECT_GE(rep.max_deviation, std::max({rep.eval_vs_synth, rep.eval_vs_frenet, rep.synth_vs_frenet}));
}

TEST(ValidationReport, DeterministicJson) {
  const auto a = catalog_validate("loghelix-case2").to_json();
  const auto b = catalog_validate("loghelix-case2").to_json();
  EXPECT_EQ(a, b);
  const auto j = nlohmann::json::parse(a);
  EXPECT_EQ(j.at("name"), "loghelix-case2");
  EXPECT_TRUE(j.at("verdict") == "CONSISTENT" || j.at("verdict") == "DISCREPANT");
  EXPECT_TRUE(j.at("deviation").contains("max"));
}

TEST(ParseParams, KeyValueList) {
  const auto p = parse_params("kappa=3,tau=-2.5");
  EXPECT_EQ(p.at("kappa"), 3.0);
  EXPECT_EQ(p.at("tau"), -2.5);
  EXPECT_TRUE(parse_params("").empty());
  EXPECT_LORHELIX_ERROR(parse_params("kappa"), ErrorCode::InvalidArgument);
  EXPECT_LORHELIX_ERROR(parse_params("kappa=x"), ErrorCode::InvalidArgument);
  EXPECT_LORHELIX_ERROR(parse_params("=1"), ErrorCode::InvalidArgument);
}
