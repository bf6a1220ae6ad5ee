#include "mdi/declarations.hpp"

#include <gtest/gtest.h>

#include "support.hpp"

namespace mdi {
namespace {

TEST(Declarations, ProductDeclaration) {
  auto d = parse_declarations("sign > [non_headed_ph,headed_ph] * [int,decl,rel].");
  ASSERT_EQ(d.subtypes.size(), 1u);
  EXPECT_EQ(d.subtypes[0].parent, "sign");
  ASSERT_EQ(d.subtypes[0].dimensions.size(), 2u);
  EXPECT_EQ(d.subtypes[0].dimensions[0].size(), 2u);
  EXPECT_EQ(d.subtypes[0].dimensions[1].size(), 3u);
}

TEST(Declarations, SingleDimension) {
  auto d = parse_declarations("int > [wh_int,y_n].");
  ASSERT_EQ(d.subtypes.size(), 1u);
  EXPECT_EQ(d.subtypes[0].dimensions,
            (std::vector<std::vector<std::string>>{{"wh_int", "y_n"}}));
}

TEST(Declarations, FigureFiveFile) {
  auto d = parse_declarations(testing::read_data("hpsg.decl"), "hpsg.decl");
  EXPECT_EQ(d.subtypes.size(), 8u);
  EXPECT_TRUE(d.features.empty());
  EXPECT_EQ(d.subtypes[4].parent, "h_su");
  EXPECT_EQ(d.subtypes[4].span.line, 6);
}

TEST(Declarations, CommentsAndWhitespace) {
  auto d = parse_declarations("% header\n  a >\n [ b , c ] % trailing\n * [d] .\n");
  ASSERT_EQ(d.subtypes.size(), 1u);
  EXPECT_EQ(d.subtypes[0].dimensions.size(), 2u);
  EXPECT_EQ(d.subtypes[0].span.line, 2);
}

TEST(Declarations, FeatureIntroductions) {
  auto d = parse_declarations("sign > [a,b].\nsign intro [dtrs:sign, head:a & b].");
  ASSERT_EQ(d.features.size(), 1u);
  const auto& fi = d.features[0];
  EXPECT_EQ(fi.type, "sign");
  ASSERT_EQ(fi.features.size(), 2u);
  EXPECT_EQ(fi.features[1].name, "head");
  EXPECT_EQ(fi.features[1].restriction, (std::vector<std::string>{"a", "b"}));
}

TEST(Declarations, EmptyInput) {
  auto d = parse_declarations("% nothing\n");
  EXPECT_TRUE(d.subtypes.empty());
}

TEST(Declarations, Errors) {
  EXPECT_THROW(parse_declarations("a > []."), ParseError);
  EXPECT_THROW(parse_declarations("a > [b,b]."), ParseError);
  EXPECT_THROW(parse_declarations("a > [b]"), ParseError);
  EXPECT_THROW(parse_declarations("a > b."), ParseError);
  EXPECT_THROW(parse_declarations("A > [b]."), ParseError);
  EXPECT_THROW(parse_declarations("a > [b] * ."), ParseError);
  EXPECT_THROW(parse_declarations("a intro [f]."), ParseError);
}

TEST(Declarations, ErrorsCarryLocation) {
  try {
    parse_declarations("a > [b].\nb > [c,\n", "x.decl");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.origin(), "x.decl");
    EXPECT_EQ(e.where().line, 3);
    EXPECT_NE(std::string(e.what()).find("x.decl:3:"), std::string::npos) << e.what();
  }
}

TEST(Declarations, TextRoundTrip) {
  const std::string src = testing::read_data("hpsg.decl") + "headed_ph intro [dtrs:sign].\n";
  auto d = parse_declarations(src);
  auto again = parse_declarations(to_text(d));
  EXPECT_EQ(to_text(again), to_text(d));
  ASSERT_EQ(again.subtypes.size(), d.subtypes.size());
  for (std::size_t i = 0; i < d.subtypes.size(); ++i) {
    EXPECT_EQ(again.subtypes[i].parent, d.subtypes[i].parent);
    EXPECT_EQ(again.subtypes[i].dimensions, d.subtypes[i].dimensions);
  }
}

}  // namespace
}  // namespace mdi
