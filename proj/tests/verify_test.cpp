#include <gtest/gtest.h>

#include "gcoarse/errors.hpp"
#include "gcoarse/verify.hpp"

namespace gcoarse {
namespace {

class VerifyCheck : public ::testing::TestWithParam<std::string> {};

TEST_P(VerifyCheck, PassesOnSmallRun) {
  VerifyOptions opt;
  opt.instances = 6;
  opt.trials = 20000;
  opt.seed = 3;
  const auto reports = run_verify_check(GetParam(), opt);
  ASSERT_FALSE(reports.empty());
  for (const auto& r : reports) {
    EXPECT_TRUE(r.pass) << r.to_json_line();
  }
}

TEST_P(VerifyCheck, ReportsAreReproducible) {
  VerifyOptions opt;
  opt.instances = 3;
  opt.trials = 2000;
  opt.seed = 11;
  const auto a = run_verify_check(GetParam(), opt);
  const auto b = run_verify_check(GetParam(), opt);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].to_json_line(), b[i].to_json_line());
  }
}

INSTANTIATE_TEST_SUITE_P(AllChecks, VerifyCheck, ::testing::ValuesIn(verify_check_names()),
                         [](const auto& info) {
                           std::string name = info.param;
                           for (char& c : name) {
                             if (c == '-') c = '_';
                           }
                           return name;
                         });

TEST(Verify, UnknownCheck) {
  EXPECT_FALSE(is_verify_check("nope"));
  EXPECT_THROW(run_verify_check("nope", {}), DomainError);
}

}  // namespace
}  // namespace gcoarse
