#include <gtest/gtest.h>

#include <sstream>

#include "nc3/verify.hpp"

namespace nc3 {
namespace {

VerifyOptions quick() {
  VerifyOptions o;
  o.random_samples = 5000;
  return o;
}

TEST(Verify, DefaultRunPasses) {
  const VerifyReport r = verify_element(quick());
  for (const CheckResult& c : r.checks) EXPECT_TRUE(c.passed) << c.name << ": " << c.detail;
  EXPECT_TRUE(r.all_passed());
  EXPECT_TRUE(r.warnings.empty());
  for (const char* name : {"gauss-point-set", "relation-identity", "round-trip", "unisolvency-rank",
                           "cubic-1d-relation", "phi1-vanishing", "patch-orthogonality-local",
                           "patch-test-global", "conditioning-ratio"}) {
    EXPECT_NE(r.find(name), nullptr) << name;
  }
  EXPECT_EQ(r.find("unisolvency-rank")->measured, 11.0);
  EXPECT_GE(r.find("conditioning-ratio")->measured, 10.0);
  EXPECT_EQ(r.find("no-such-check"), nullptr);
}

TEST(Verify, SymmetricEnrichmentWarns) {
  VerifyOptions o = quick();
  o.enrichment = Enrichment::XCubedYPlusXYCubed;
  const VerifyReport r = verify_element(o);
  ASSERT_FALSE(r.warnings.empty());
  EXPECT_FALSE(r.all_passed());
  EXPECT_FALSE(r.find("unisolvency-rank")->passed);
  std::ostringstream os;
  write_verify_report(os, r);
  EXPECT_NE(os.str().find("WARNING (conditioning)"), std::string::npos);
}

TEST(Verify, UncorrectedG12IsReported) {
  VerifyOptions o = quick();
  o.uncorrected_g12 = true;
  const VerifyReport r = verify_element(o);
  EXPECT_FALSE(r.all_passed());
  EXPECT_FALSE(r.find("gauss-point-set")->passed);
  EXPECT_FALSE(r.find("unisolvency-relation")->passed);
}

TEST(Verify, ReportListsMeasuredAgainstThreshold) {
  const VerifyReport r = verify_element(quick());
  std::ostringstream os;
  write_verify_report(os, r);
  const std::string out = os.str();
  for (const CheckResult& c : r.checks) EXPECT_NE(out.find(c.name), std::string::npos) << c.name;
  EXPECT_NE(out.find("x^3y-xy^3"), std::string::npos);
}

}  // namespace
}  // namespace nc3
