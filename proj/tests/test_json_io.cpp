#include <gtest/gtest.h>

#include "nullcone/json_io.hpp"
#include "support.hpp"

using namespace nullcone;

TEST(JsonIo, AlgebraRoundTrip) {
  StructureTensor::Builder b(3);
  b.add(1, 2, 3, Rational(1));
  b.add(1, 3, 3, Rational(-1, 2));
  auto t = b.build();
  auto j = to_json(t);
  EXPECT_EQ(j["constants"][1]["value"], "-1/2");
  EXPECT_EQ(algebra_from_json(json::parse(j.dump())), t);
}

TEST(JsonIo, AlgebraRejects) {
  EXPECT_THROW(algebra_from_json(json::parse(R"({"constants": []})")), FormatError);
  EXPECT_THROW(algebra_from_json(json::parse(R"({"dim": 2})")), FormatError);
  EXPECT_THROW(algebra_from_json(json::parse(R"({"dim": 2, "constants": [{"a":2,"b":1,"c":1,"value":"1"}]})")), FormatError);
  EXPECT_THROW(algebra_from_json(json::parse(R"({"dim": 2, "constants": [{"a":1,"b":3,"c":1,"value":"1"}]})")), FormatError);
  EXPECT_THROW(algebra_from_json(json::parse(R"({"dim": 2, "constants": [{"a":1,"b":2,"c":1,"value":"x"}]})")), FormatError);
  EXPECT_THROW(algebra_from_json(json::parse(R"({"dim": 2, "constants": [{"a":1,"b":2,"c":1}]})")), FormatError);
  EXPECT_THROW(algebra_from_json(json::parse(
                   R"({"dim": 2, "constants": [{"a":1,"b":2,"c":1,"value":"1"},{"a":1,"b":2,"c":1,"value":"2"}]})")),
               FormatError);
}

TEST(JsonIo, LayoutRoundTrip) {
  auto L = FrameLayout::canonical(2, 1);
  EXPECT_EQ(to_json(L)["roles"], "canonical");
  EXPECT_EQ(layout_from_json(to_json(L)).roles().size(), 5u);

  auto roles = L.roles();
  std::swap(roles[0], roles[4]);
  FrameLayout M(roles);
  auto j = to_json(M);
  ASSERT_TRUE(j["roles"].is_object());
  EXPECT_EQ(j["roles"]["1"], "H");
  auto back = layout_from_json(json::parse(j.dump()));
  EXPECT_EQ(back.p(), 2);
  EXPECT_EQ(back.k(), 1);
  for (int a = 1; a <= 5; ++a) EXPECT_EQ(back.role(a).str(), M.role(a).str());

  EXPECT_THROW(layout_from_json(json::parse(R"({"p":1,"k":0})")), FormatError);
  EXPECT_THROW(layout_from_json(json::parse(R"({"roles":{"1":"N-1","2":"N-1"}})")), FormatError);
  EXPECT_THROW(layout_from_json(json::parse(R"({"roles":{"1":"N-1","3":"N+1"}})")), FormatError);
  EXPECT_THROW(layout_from_json(json::parse(R"({"p":2,"roles":{"1":"N-1","2":"N+1"}})")), FormatError);
}

TEST(JsonIo, ClassForms) {
  EXPECT_EQ(class_from_json(json::parse(R"({"class":["2",1]})")), (std::vector<Rational>{2, 1}));
  EXPECT_EQ(class_from_json(json::parse(R"(["1/2"])")), (std::vector<Rational>{Rational(1, 2)}));
  EXPECT_EQ(parse_class_csv("3,1/2,0"), (std::vector<Rational>{3, Rational(1, 2), 0}));
  EXPECT_THROW(parse_class_csv("3,,1"), FormatError);
  EXPECT_THROW(parse_class_csv(""), FormatError);
  EXPECT_THROW(class_from_json(json::parse(R"({"class":[1.5]})")), FormatError);
}
