#include <gtest/gtest.h>

#include <json.hpp>

#include <cmath>

#include "jproc/io.hpp"
#include "jproc/registry.hpp"

using jproc::PointS6;
using jproc::Quaternion;

TEST(FormatReal, ShortestRoundTrip) {
  EXPECT_EQ(jproc::format_real(-1.0), "-1");
  EXPECT_EQ(jproc::format_real(-0.0), "0");
  EXPECT_EQ(jproc::format_real(0.5), "0.5");
  EXPECT_EQ(jproc::format_real(std::nan("")), "null");
  jproc::Sampler sampler(1);
  for (int n = 0; n < 1000; ++n) {
    const double v = sampler.uniform(-1.0, 1.0) * std::pow(10.0, sampler.uniform(-20, 20));
    EXPECT_EQ(std::stod(jproc::format_real(v)), v);
  }
}

TEST(QuaternionForms, JsonAndText) {
  EXPECT_EQ(jproc::to_json(Quaternion(-1.0)), "[-1,0,0,0]");
  EXPECT_EQ(jproc::to_json(Quaternion(0.25, -0.5, 1, 2)), "[0.25,-0.5,1,2]");
  EXPECT_EQ(jproc::to_text(Quaternion(0.25, -0.5, 1, 2)), "0.25-0.5i+1j+2k");
  EXPECT_EQ(jproc::to_text(Quaternion::one()), "1+0i+0j+0k");
}

TEST(QuaternionForms, TextRoundTrip) {
  jproc::Sampler sampler(2);
  for (int n = 0; n < 500; ++n) {
    const Quaternion q{sampler.uniform(-5, 5), sampler.uniform(-5, 5), sampler.uniform(-1e-6, 1e-6),
                       sampler.uniform(-5, 5) * 1e8};
    EXPECT_EQ(jproc::parse_quaternion(jproc::to_text(q)), q);
  }
}

TEST(ParseQuaternion, Terms) {
  EXPECT_EQ(jproc::parse_quaternion("i"), Quaternion::i());
  EXPECT_EQ(jproc::parse_quaternion("-j"), -Quaternion::j());
  EXPECT_EQ(jproc::parse_quaternion("0"), Quaternion{});
  EXPECT_EQ(jproc::parse_quaternion(" 1 - 0.5i + k "), Quaternion(1, -0.5, 0, 1));
  EXPECT_EQ(jproc::parse_quaternion("2.5e-1j+1e+1"), Quaternion(10, 0, 0.25, 0));
  EXPECT_EQ(jproc::parse_quaternion("i+i"), Quaternion(0, 2, 0, 0));
  for (const char* bad : {"", "+", "1+", "1 2", "ij", "x", "1*i", "--i"})
    EXPECT_THROW(jproc::parse_quaternion(bad), jproc::parse_error) << bad;
}

TEST(ParsePoint, LiteralAndJson) {
  EXPECT_EQ(jproc::parse_point("(i,0)"), (PointS6{{1, 0, 0}, {}}));
  EXPECT_EQ(jproc::parse_point("(0,1)"), (PointS6{{}, Quaternion::one()}));
  EXPECT_EQ(jproc::parse_point(" (0.6j, 0.8k) "), (PointS6{{0, 0.6, 0}, {0, 0, 0, 0.8}}));
  EXPECT_EQ(jproc::parse_point(R"({"p":[0,0,0.6],"w":[0.8,0,0,0]})"), (PointS6{{0, 0, 0.6}, {0.8, 0, 0, 0}}));
}

TEST(ParsePoint, Rejections) {
  for (const char* bad : {"", "(i)", "i,0", "(i,0,0)", "(1,0)", "(i,1)", "(0.5i,0.5)", R"({"p":[1,0],"w":[0,0,0,0]})",
                          R"({"p":[1,0,0]})", R"({"p":[1,0,0],"w":[0,0,0,"a"]})", "{bad json"})
    EXPECT_THROW(jproc::parse_point(bad), jproc::parse_error) << bad;
}

TEST(PointForms, JsonRoundTripsThroughParser) {
  for (const auto& x : jproc::sample_s6(3, 200)) {
    EXPECT_EQ(jproc::parse_point(jproc::to_json(x)), x);
    const auto j = nlohmann::json::parse(jproc::to_json(x));
    EXPECT_EQ(j["p"].size(), 3U);
    EXPECT_EQ(j["w"].size(), 4U);
  }
  EXPECT_EQ(jproc::csv_row(PointS6{{1, 0, 0}, {}}), "1,0,0,0,0,0,0");
}

TEST(ReportForms, VerifyReportJson) {
  const auto report = jproc::residual_suite("conj_antisymmetry", 50, 4);
  const auto j = nlohmann::json::parse(jproc::to_json(report));
  EXPECT_EQ(j["suite"], "conj_antisymmetry");
  EXPECT_EQ(j["samples"], 50);
  EXPECT_EQ(j["max_residual"].get<double>(), report.max_residual);
  EXPECT_EQ(j["mean_residual"].get<double>(), report.mean_residual);
  EXPECT_EQ(j["threshold"].get<double>(), 1e-12);
  EXPECT_EQ(j["pass"], true);
  EXPECT_EQ(jproc::parse_point(j["worst_point"].dump()), report.worst_point);
}

TEST(ReportForms, SweepCsv) {
  const jproc::SweepRecord r{0.05, 0.25, 0.5, 0, 1000};
  EXPECT_EQ(jproc::sweep_csv_header, "s,min_abs_det,min_singular_value,sign_changes,samples");
  EXPECT_EQ(jproc::csv_row(r), "0.05,0.25,0.5,0,1000");
  const auto j = nlohmann::json::parse(jproc::to_json(r));
  EXPECT_EQ(j["samples"], 1000);
}

TEST(Registry, MapsByName) {
  const PointS6 x{{1, 0, 0}, {}};
  const auto bm = std::get<jproc::GroupValuedMap>(jproc::lookup_map("bm"));
  EXPECT_EQ(bm(x), Quaternion(-1.0));
  EXPECT_NO_THROW(std::get<jproc::GroupValuedMap>(jproc::lookup_map("bm_pow:12")));
  EXPECT_NO_THROW(std::get<jproc::GroupValuedMap>(jproc::lookup_map("H:0.5")));
  EXPECT_NO_THROW(std::get<jproc::GroupValuedMap>(jproc::lookup_map("Q")));
  for (const char* name : {"sigma:3", "sigma:-2", "R", "inv_sigma", "inv_R", "inv_H:0.25", "identity", "antipodal"})
    EXPECT_NO_THROW(std::get<jproc::SelfMap>(jproc::lookup_map(name))) << name;
  for (const char* name : {"nope", "bm:1", "bm_pow", "bm_pow:x", "H:2", "H", "sigma", "inv_H:-1", "Q:1"})
    EXPECT_THROW(jproc::lookup_map(name), jproc::unknown_name_error) << name;
}

TEST(Registry, InvolutionNamesMatchDefinitions) {
  const auto inv_sigma = std::get<jproc::SelfMap>(jproc::lookup_map("inv_sigma"));
  const auto inv_r = std::get<jproc::SelfMap>(jproc::lookup_map("inv_R"));
  const auto inv_h1 = std::get<jproc::SelfMap>(jproc::lookup_map("inv_H:1"));
  for (const auto& x : jproc::sample_s6(5, 100)) {
    EXPECT_LT(jproc::distance(inv_sigma(x), -jproc::sigma(x)), 1e-14);
    EXPECT_LT(jproc::distance(inv_r(x), inv_h1(x)), 1e-12);
  }
}

TEST(Registry, Families) {
  EXPECT_EQ(jproc::lookup_family("H").label, "H");
  EXPECT_EQ(jproc::lookup_family("H_pow:12").label, "H_pow:12");
  EXPECT_EQ(jproc::lookup_family("demo_nonequiv").equivariance, jproc::Equivariance::none);
  for (const char* name : {"nope", "H:1", "H_pow", "H_pow:a", "demo_nonequiv:1"})
    EXPECT_THROW(jproc::lookup_family(name), jproc::unknown_name_error) << name;
}
