#include <gtest/gtest.h>

#include "test_support.hpp"

namespace {

using namespace bwm;
using io::json;

constexpr const char* kExample1Json =
    R"({"n":6,"best":1,"worst":6,"best_to_others":{"2":"2","3":"2","4":"2","5":"2"},"best_to_worst":"2","others_to_worst":{"2":"9","3":"2","4":"2","5":"2"}})";

TEST(InstanceJson, ParsesDocumentedExample) {
  EXPECT_EQ(io::parse_bwm(std::string(kExample1Json)), test::example1());
}

TEST(InstanceJson, RoundTripAndFractions) {
  const std::vector<Rational> entries = {Rational(3, 2), Rational(9), Rational(7, 4)};
  const auto inst = BwmInstance::from_free_entries(3, 2, 0, entries);
  const auto j = io::to_json(inst);
  EXPECT_EQ(j["best"], 3);
  EXPECT_EQ(j["worst"], 1);
  EXPECT_EQ(j["best_to_others"]["2"], "3/2");
  EXPECT_EQ(io::parse_bwm(j), inst);
  EXPECT_EQ(io::parse_bwm(json::parse(j.dump())), inst);
}

TEST(InstanceJson, RejectsMalformedInput) {
  const auto code = [](const std::string& text) {
    try {
      io::parse_bwm(text);
    } catch (const Error& e) {
      return e.code();
    }
    return Errc::InvalidConfig;
  };
  EXPECT_EQ(code("{"), Errc::Parse);
  EXPECT_EQ(code("[]"), Errc::Parse);
  EXPECT_EQ(code(R"({"best":1,"worst":3})"), Errc::Parse);
  EXPECT_EQ(code(R"({"n":3,"best":0,"worst":3})"), Errc::Parse);
  EXPECT_EQ(code(R"({"n":3,"best":1,"worst":3,"best_to_others":{"x":"2"}})"), Errc::Parse);
  EXPECT_EQ(code(R"({"n":3,"best":1,"worst":3,"best_to_others":{"2":2.5}})"), Errc::Parse);
  EXPECT_EQ(code(R"({"n":3,"best":1,"worst":3,"best_to_others":{"2":"2"},"best_to_worst":"2","others_to_worst":{"2":"10"}})"),
            Errc::OutOfScale);
  EXPECT_EQ(code(R"({"n":3,"best":1,"worst":3,"best_to_others":{"2":"2"},"best_to_worst":"3","others_to_worst":{"1":"2","2":"2"}})"),
            Errc::Inconsistent);
}

TEST(WeightsJson, TwelveSignificantDigits) {
  const auto pv = solve_llsm_bwm_closed_form(test::example1());
  const auto j = io::to_json(pv);
  ASSERT_EQ(j["w_sum"].size(), 6u);
  EXPECT_EQ(j["w_sum"][1].get<double>(), io::round12(pv.sum_one()[1]));
  EXPECT_NEAR(j["w_sum"][1].get<double>(), 0.2778, 5e-4);
  const auto text = j["y"][0].dump();
  EXPECT_LE(text.size(), 15u) << text;
  EXPECT_EQ(io::round12(0.1 + 0.2), 0.3);
}

TEST(DiagnosisJson, MatchesDocumentedShape) {
  const auto j = io::to_json(diagnose(test::example1()));
  EXPECT_EQ(j["p"], "2");
  EXPECT_EQ(j["p_mode"], "derived-min");
  EXPECT_EQ(j["max_entry"], "9");
  EXPECT_EQ(j["theorem1"]["bound"], "8");
  EXPECT_EQ(j["theorem1"]["pass"], false);
  EXPECT_NEAR(j["theorem2"]["bound"].get<double>(), 20.1587, 1e-4);
  EXPECT_EQ(j["theorem2"]["pass"], false);
  EXPECT_EQ(j["theorem2"]["bw_maximal"], false);
  EXPECT_EQ(j["corollary2"]["pass"], false);
  EXPECT_EQ(io::to_json(diagnose(test::example1(), Rational(3, 2)))["p_mode"], "given");
}

TEST(SolveDocument, CanonicalAndComplete) {
  const auto doc = io::solve_document(test::example1());
  const auto text = doc.dump();
  EXPECT_EQ(text.rfind(R"({"diagnosis":)", 0), 0u);
  EXPECT_EQ(json::parse(text).dump(), text);
  EXPECT_EQ(doc["reexamination"]["needed"], true);
  EXPECT_EQ(doc["reexamination"]["alternatives"], json::array({2}));
  EXPECT_EQ(doc["violations"]["violations"][0]["i"], 1);
  EXPECT_EQ(doc["violations"]["violations"][0]["j"], 2);
  EXPECT_EQ(doc["violations"]["violations"][0]["a_ij"], "2");
  EXPECT_EQ(io::solve_document(test::example1(8))["reexamination"]["needed"], false);
}

TEST(Scale, Parsing) {
  EXPECT_EQ(io::parse_scale("2..4"), (std::vector<Rational>{2, 3, 4}));
  EXPECT_EQ(io::parse_scale("2,7/2,9"), (std::vector<Rational>{2, Rational(7, 2), 9}));
  EXPECT_THROW(io::parse_scale("4..2"), Error);
  EXPECT_THROW(io::parse_scale("2,,3"), Error);
}

}  // namespace
