#include "mdi/hierarchy.hpp"

#include <gtest/gtest.h>

#include "support.hpp"

namespace mdi {
namespace {

using testing::build;
using testing::conj;

std::vector<std::string> names(const Hierarchy& h, const std::vector<TypeId>& ts) {
  std::vector<std::string> out;
  for (TypeId t : ts) out.push_back(h.name(t));
  std::sort(out.begin(), out.end());
  return out;
}

class Hpsg : public ::testing::Test {
 protected:
  Hierarchy h = testing::hpsg();
  std::vector<TypeId> ids(std::initializer_list<const char*> ns) const {
    std::vector<TypeId> out;
    for (const char* n : ns) out.push_back(h.id(n));
    return out;
  }
};

TEST_F(Hpsg, Shape) {
  // Figure 5 declares 16 distinct type names.
  EXPECT_EQ(h.size(), 16u);
  EXPECT_EQ(h.name(h.root()), "sign");
  EXPECT_EQ(h.dimensions().size(), 9u);
  EXPECT_EQ(h.dimensions_of(h.id("sign")).size(), 2u);
  EXPECT_EQ(names(h, h.parents(h.id("su_wh_rel"))),
            (std::vector<std::string>{"h_su", "wh_rel"}));
  EXPECT_TRUE(h.warnings().empty());
}

TEST_F(Hpsg, UpClosure) {
  EXPECT_EQ(names(h, h.up_closure(h.id("su_wh_rel"))),
            (std::vector<std::string>{"h_su", "headed_ph", "rel", "sign", "su_wh_rel", "wh_rel"}));
  EXPECT_EQ(names(h, h.up_closure(h.id("sign"))), (std::vector<std::string>{"sign"}));
  EXPECT_EQ(names(h, h.up_closure(h.id("decl"))), (std::vector<std::string>{"decl", "sign"}));
  EXPECT_THROW(h.id("nope"), UnknownTypeError);
}

TEST_F(Hpsg, DownClosure) {
  EXPECT_EQ(names(h, h.down_closure(h.id("rel"))),
            (std::vector<std::string>{"non_wh_rel", "rel", "su_wh_rel", "that_rel", "wh_rel"}));
  EXPECT_EQ(h.down_closure(h.root()).size(), h.size());
}

TEST_F(Hpsg, TopologicalOrder) {
  const auto& topo = h.topological_order();
  ASSERT_EQ(topo.size(), h.size());
  std::vector<std::size_t> pos(h.size());
  for (std::size_t i = 0; i < topo.size(); ++i) pos[topo[i].index] = i;
  for (TypeId t : h.types()) {
    for (TypeId p : h.parents(t)) EXPECT_LT(pos[p.index], pos[t.index]);
  }
}

TEST_F(Hpsg, Consistency) {
  EXPECT_TRUE(consistent(h, ids({"headed_ph", "rel"})));
  EXPECT_FALSE(consistent(h, ids({"h_su", "h_co"})));
  EXPECT_TRUE(consistent(h, ids({"sign"})));
  EXPECT_FALSE(consistent(h, ids({"wh_int", "that_rel"})));
  EXPECT_TRUE(consistent(h, {}));
  for (TypeId t : h.types()) EXPECT_TRUE(consistent(h, std::vector<TypeId>{t}));
  auto clash = find_clash(h, ids({"wh_int", "rel"}));
  ASSERT_TRUE(clash);
  EXPECT_EQ(names(h, {clash->first, clash->second}), (std::vector<std::string>{"int", "rel"}));
}

TEST_F(Hpsg, Conjoin) {
  auto hr = conjoin(h, conj(h, "headed_ph"), conj(h, "rel"));
  ASSERT_TRUE(hr);
  EXPECT_EQ(to_string(h, *hr), "headed_ph & rel");
  auto s = conjoin(h, conj(h, "su_wh_rel"), conj(h, "h_su"));
  ASSERT_TRUE(s);
  EXPECT_EQ(to_string(h, *s), "su_wh_rel");
  EXPECT_FALSE(conjoin(h, conj(h, "wh_int"), conj(h, "rel")));
  EXPECT_EQ(to_string(h, *conjoin(h, TypeConj{}, TypeConj{})), "sign");
}

TEST_F(Hpsg, Subsumes) {
  EXPECT_TRUE(subsumes(h, conj(h, "sign"), conj(h, "decl")));
  EXPECT_TRUE(subsumes(h, conj(h, "headed_ph & rel"), conj(h, "su_wh_rel")));
  EXPECT_FALSE(subsumes(h, conj(h, "h_su"), conj(h, "rel")));
  EXPECT_TRUE(subsumes(h, TypeConj{}, conj(h, "decl")));
  EXPECT_FALSE(subsumes(h, conj(h, "decl"), TypeConj{}));
}

TEST_F(Hpsg, ParseConj) {
  EXPECT_EQ(conj(h, " rel&headed_ph "), conj(h, "headed_ph & rel"));
  EXPECT_EQ(conj(h, "su_wh_rel & rel & sign"), conj(h, "su_wh_rel"));
  EXPECT_EQ(conj(h, "sign"), TypeConj{});
  EXPECT_THROW(conj(h, "rel & nope"), UnknownTypeError);
  EXPECT_THROW(conj(h, "rel &"), ParseError);
  EXPECT_THROW(conj(h, ""), ParseError);
}

TEST(Hierarchy, InconsistentParentsRejected) {
  EXPECT_THROW(build("a > [b,c].\nb > [d].\nc > [d]."), HierarchyError);
}

TEST(Hierarchy, CrossDimensionDiamond) {
  Hierarchy h = build("a > [b] * [c].\nb > [d].\nc > [d].");
  EXPECT_EQ(h.size(), 4u);
  EXPECT_EQ(h.parents(h.id("d")).size(), 2u);
}

TEST(Hierarchy, CycleRejected) {
  EXPECT_THROW(build("r > [a].\na > [b].\nb > [a]."), HierarchyError);
}

TEST(Hierarchy, RootCount) {
  EXPECT_THROW(build("a > [b].\nc > [d]."), HierarchyError);
  EXPECT_THROW(build(""), HierarchyError);
  EXPECT_THROW(build("a > [a]."), HierarchyError);
}

TEST(Hierarchy, DuplicateListingRejected) {
  EXPECT_THROW(build("a > [b,c] * [b]."), HierarchyError);
  EXPECT_THROW(build("a > [b,c].\na > [b,d]."), HierarchyError);
}

TEST(Hierarchy, RedundantParentDroppedWithWarning) {
  Hierarchy h = build("a > [b,c].\nb > [d].\na > [d,e].");
  ASSERT_EQ(h.warnings().size(), 1u);
  EXPECT_EQ(names(h, h.parents(h.id("d"))), (std::vector<std::string>{"b"}));
  // The emptied dimension disappears: a has [b,c] and [e].
  ASSERT_EQ(h.dimensions_of(h.id("a")).size(), 2u);
  EXPECT_EQ(h.dimension(h.dimensions_of(h.id("a"))[1]).members.size(), 1u);
}

TEST(Hierarchy, ErrorsCarryLocation) {
  try {
    build("a > [b,c].\nb > [d].\nc > [d].");
    FAIL();
  } catch (const HierarchyError& e) {
    EXPECT_GT(e.where().line, 0);
  }
}

TEST(Hierarchy, SingleRoot) {
  Hierarchy h = Hierarchy::single("top");
  EXPECT_EQ(h.size(), 1u);
  EXPECT_EQ(h.name(h.root()), "top");
  EXPECT_TRUE(h.dimensions().empty());
  EXPECT_TRUE(consistent(h, std::vector<TypeId>{h.root()}));
}

TEST(Hierarchy, ProductEquivalence) {
  Hierarchy a = build("x > [p,q] * [r,s].");
  Hierarchy b = build("x > [p,q].\nx > [r,s].");
  ASSERT_EQ(a.size(), b.size());
  ASSERT_EQ(a.dimensions().size(), b.dimensions().size());
  for (std::size_t d = 0; d < a.dimensions().size(); ++d) {
    EXPECT_EQ(a.dimension(d).parent, b.dimension(d).parent);
    EXPECT_EQ(a.dimension(d).members, b.dimension(d).members);
  }
}

}  // namespace
}  // namespace mdi
