#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <json.hpp>

#include "lpsym/cli.hpp"

using lpsym::cli::run;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result call(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> v;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) v.push_back(l);
  return v;
}

}  // namespace

TEST(Cli, CoeffsJson) {
  auto r = call({"coeffs", "--d", "3", "--p", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["rows"], nlohmann::json::parse("[[1.0],[0.5,0.5],[0.25,0.375,0.375]]"));
  EXPECT_EQ(j["d"], 3);
}

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(call({"nonsense"}).code, 2);
  EXPECT_EQ(call({"coeffs", "--d", "1", "--p", "2"}).code, 2);
  EXPECT_EQ(call({"coeffs", "--d", "3", "--p", "0.5"}).code, 2);
  EXPECT_EQ(call({"sample-vp", "--d", "3"}).code, 2);
  EXPECT_EQ(call({"sample-vp", "--d", "3", "--p", "2", "--n", "0"}).code, 2);
  EXPECT_EQ(call({"sample-survival", "--d", "2", "--p", "2", "--radial", "weird"}).code, 2);
  EXPECT_EQ(call({"sample-maxid", "--d", "2", "--p", "2"}).code, 2);
  EXPECT_EQ(call({"verify", "--quick", "--full"}).code, 2);
  EXPECT_EQ(call({}).code, 2);
}

TEST(Cli, HelpAndVersion) {
  auto h = call({"--help"});
  EXPECT_EQ(h.code, 0);
  EXPECT_NE(h.out.find("sample-copula"), std::string::npos);
  auto v = call({"--version"});
  EXPECT_EQ(v.code, 0);
  EXPECT_EQ(v.out.rfind("lpsym ", 0), 0u);
}

TEST(Cli, CsvHeadersAndRowCounts) {
  struct Case {
    std::vector<std::string> args;
    std::string header;
  };
  const std::vector<Case> cases = {
      {{"sample-vp", "--d", "3", "--p", "2", "--n", "50"}, "vp"},
      {{"sample-survival", "--d", "3", "--p", "2", "--n", "50"}, "z1,z2,z3"},
      {{"sample-survival", "--d", "2", "--p", "2", "--n", "50", "--provenance"}, "z1,z2,r,vp,u1,u2"},
      {{"sample-copula", "--d", "2", "--p", "2.5", "--radial", "clayton:1.75", "--n", "50"}, "u1,u2"},
      {{"sample-maxid", "--d", "2", "--p", "4", "--measure", "harmonic:1.125", "--n", "50"}, "y1,y2"},
      {{"sample-maxid", "--d", "2", "--p", "4", "--measure", "harmonic:1.125", "--n", "50", "--emit-npoints"},
       "y1,y2,n_points"},
      {{"sample-rcopula", "--d", "3", "--p", "1", "--measure", "harmonic:1.125", "--n", "50"}, "u1,u2,u3"},
  };
  for (const auto& c : cases) {
    auto r = call(c.args);
    ASSERT_EQ(r.code, 0) << r.err;
    auto ls = lines(r.out);
    ASSERT_EQ(ls.size(), 51u);
    EXPECT_EQ(ls[0], c.header);
    EXPECT_EQ(r.out.find('\r'), std::string::npos);
    EXPECT_EQ(r.out.back(), '\n');
  }
}

TEST(Cli, DefaultSampleCountAndCopulaRange) {
  auto r = call({"sample-copula", "--d", "2", "--p", "2.5", "--radial", "clayton:1.75", "--seed", "7"});
  ASSERT_EQ(r.code, 0);
  auto ls = lines(r.out);
  ASSERT_EQ(ls.size(), lpsym::cli::kDefaultSamples + 1);
  for (std::size_t i = 1; i < ls.size(); ++i) {
    const auto comma = ls[i].find(',');
    const double u1 = std::stod(ls[i].substr(0, comma));
    const double u2 = std::stod(ls[i].substr(comma + 1));
    EXPECT_GE(u1, 0.0);
    EXPECT_LE(u1, 1.0);
    EXPECT_GE(u2, 0.0);
    EXPECT_LE(u2, 1.0);
  }
}

TEST(Cli, SameSeedSameBytesDifferentSeedDifferentBytes) {
  const std::vector<std::string> base = {"sample-survival", "--d", "3", "--p", "1.5", "--radial", "erlang",
                                         "--n", "3000"};
  auto with = [&](std::vector<std::string> extra) {
    auto a = base;
    a.insert(a.end(), extra.begin(), extra.end());
    return call(a).out;
  };
  const auto a = with({"--seed", "5", "--threads", "1"});
  EXPECT_EQ(a, with({"--seed", "5", "--threads", "8"}));
  EXPECT_NE(a, with({"--seed", "6"}));
}

TEST(Cli, SeedFromEnvironment) {
  const std::vector<std::string> args = {"sample-vp", "--d", "4", "--p", "3", "--n", "200"};
  auto explicit_seed = args;
  explicit_seed.insert(explicit_seed.end(), {"--seed", "99"});
  const auto want = call(explicit_seed).out;
  ::setenv("LPSYM_SEED", "99", 1);
  const auto got = call(args).out;
  ::unsetenv("LPSYM_SEED");
  EXPECT_EQ(got, want);
  EXPECT_NE(call(args).out, want);
}

TEST(Cli, WritesFile) {
  const auto path = std::filesystem::temp_directory_path() / "lpsym_cli_test.csv";
  auto r = call({"sample-vp", "--d", "2", "--p", "2", "--n", "10", "--out", path.string()});
  ASSERT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  EXPECT_EQ(lines(ss.str()).size(), 11u);
  std::filesystem::remove(path);
  EXPECT_EQ(call({"sample-vp", "--d", "2", "--p", "2", "--out", "/nonexistent/dir/x.csv"}).code, 1);
}

TEST(Cli, VerifyQuickWritesJson) {
  const auto path = std::filesystem::temp_directory_path() / "lpsym_cli_report.json";
  auto r = call({"verify", "--quick", "--seed", "12345", "--threads", "4", "--json", path.string()});
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("all checks passed"), std::string::npos);
  std::ifstream in(path);
  auto j = nlohmann::json::parse(in);
  EXPECT_TRUE(j["pass"].get<bool>());
  EXPECT_EQ(j["seed"], 12345);
  std::filesystem::remove(path);
}

TEST(FormatDouble, RoundTripsProperty) {
  std::mt19937_64 gen(123);
  std::uniform_real_distribution<double> unif(-30.0, 30.0);
  for (int i = 0; i < 20000; ++i) {
    const double x = std::ldexp(unif(gen), static_cast<int>(unif(gen) * 10));
    const auto s = lpsym::cli::format_double(x);
    EXPECT_EQ(std::strtod(s.c_str(), nullptr), x) << s;
    EXPECT_LE(s.size(), 24u);
  }
  EXPECT_EQ(lpsym::cli::format_double(0.5), "0.5");
  EXPECT_EQ(lpsym::cli::format_double(1.0), "1");
}

TEST(WriteCsv, RoundTripsBatch) {
  lpsym::SampleBatch b;
  b.cols = 2;
  b.values = {0.1, 1.0 / 3.0, 2.5e-300, 7.0};
  std::ostringstream out;
  lpsym::cli::write_csv(out, {"a", "b"}, b);
  EXPECT_EQ(out.str(), "a,b\n0.10000000000000001,0.33333333333333331\n2.5e-300,7\n");
  auto ls = lines(out.str());
  std::vector<double> back;
  for (std::size_t i = 1; i < ls.size(); ++i) {
    std::istringstream row(ls[i]);
    for (std::string cell; std::getline(row, cell, ',');) back.push_back(std::strtod(cell.c_str(), nullptr));
  }
  EXPECT_EQ(back, b.values);
}
