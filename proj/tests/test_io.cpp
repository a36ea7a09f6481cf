#include <gtest/gtest.h>

#include <sstream>

#include "subdyn/subdyn.hpp"

using namespace subdyn;

TEST(Io, FiniteRule) {
  auto j = io::json::parse(R"({"alphabet":{"letters":["a","b"]},"rules":{"a":["a","b","b","b"],"b":"a"}})");
  auto r = io::rule_from_json(j);
  ASSERT_TRUE(r.rho);
  for (std::uint32_t i = 0; i < 2; ++i) EXPECT_EQ(r.rho->image(FiniteLabel{i}), builtin::sqrt13().image(FiniteLabel{i}));
}

TEST(Io, MalformedRules) {
  EXPECT_THROW(io::rule_from_json(io::json::parse(R"({"alphabet":["a","b"],"rules":{"a":"ab"}})")), FormatError);
  EXPECT_THROW(io::rule_from_json(io::json::parse(R"({"alphabet":["a"],"rules":{"a":"a","c":"a"}})")), FormatError);
  EXPECT_THROW(io::rule_from_json(io::json::parse(R"({"family":"glb"})")), FormatError);
  EXPECT_THROW(io::rule_from_json(io::json::parse(R"([1,2])")), FormatError);
  EXPECT_THROW(io::rule_from_file("/nonexistent/rule.json"), FormatError);
}

TEST(Io, ParametricRules) {
  auto m = io::rule_from_json(io::json::parse(R"({"family":"rho_m","m":"constant:1","truncation":8})"));
  ASSERT_TRUE(m.rho && m.m);
  EXPECT_EQ(m.rho->image(CompactNat::at(2)), builtin::rho_infty(8).image(CompactNat::at(2)));
  auto a = io::rule_from_json(io::json::parse(R"({"family":"rho_alpha","basis":["1","sqrt2"],"alpha":["0","1"]})"));
  ASSERT_TRUE(a.alpha);
  EXPECT_NEAR(a.alpha->value(), std::sqrt(2.0) - 1, 1e-15);
  auto b = io::rule_from_json(io::json::parse(R"({"family":"block2d"})"));
  ASSERT_TRUE(b.block);
  EXPECT_EQ(b.block->rows, 3u);
}

TEST(Io, PerronJson) {
  auto pf = perron_data(substitution_matrix(builtin::sqrt13()).counts);
  auto j = io::to_json(pf);
  EXPECT_NEAR(j["lambda"].get<double>(), pf.lambda, 0);
  EXPECT_EQ(j["pv"].get<std::string>(), "non-PV");
}

TEST(Io, CsvQuoting) {
  std::ostringstream os;
  io::CsvWriter w(os);
  w.row({"a", "b,c", "d\"e"});
  EXPECT_EQ(os.str(), "a,\"b,c\",\"d\"\"e\"\r\n");
}
