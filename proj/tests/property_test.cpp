#include <gtest/gtest.h>

#include <random>

#include "mdi/unify.hpp"
#include "properties.hpp"

namespace mdi {
namespace {

constexpr int kHierarchies = 200;

TEST(Properties, RandomHierarchies) {
  std::mt19937 rng(20261019);
  for (int i = 0; i < kHierarchies; ++i) {
    auto spec = testing::random_hierarchy_spec(rng);
    Hierarchy h = testing::build(spec.product_text());
    SCOPED_TRACE(spec.product_text());
    ASSERT_LE(h.size(), 15u);
    for (TypeId t : h.types()) ASSERT_LE(h.dimensions_of(t).size(), 3u);
    EXPECT_EQ(testing::check_product_split(spec), std::nullopt);
    EXPECT_EQ(testing::check_conjoin_laws(h), std::nullopt);
    EXPECT_EQ(testing::check_subsumes_preorder(h), std::nullopt);
    EXPECT_EQ(testing::check_faithful(h), std::nullopt);
    EXPECT_EQ(count_possibilities(h), oracle::enumerate_complete(h).size());
    for (TypeId t : h.types()) EXPECT_TRUE(consistent(h, std::vector<TypeId>{t}));
  }
}

TEST(Properties, GeneratorProducesDiamonds) {
  std::mt19937 rng(7);
  int diamonds = 0;
  for (int i = 0; i < 100; ++i) {
    Hierarchy h = testing::random_hierarchy(rng);
    int multi = 0;
    for (TypeId t : h.types()) multi += h.parents(t).size() > 1 ? 1 : 0;
    EXPECT_LE(multi, 1);
    diamonds += multi;
  }
  EXPECT_GT(diamonds, 10);
}

TEST(Properties, OracleMatchesHierarchyOnRandomSubsets) {
  std::mt19937 rng(99);
  for (int i = 0; i < 50; ++i) {
    Hierarchy h = testing::random_hierarchy(rng, 10);
    const auto types = h.types();
    for (unsigned mask = 0; mask < (1u << types.size()); mask += 1 + (mask % 7)) {
      std::vector<TypeId> s;
      for (std::size_t k = 0; k < types.size(); ++k) {
        if (mask & (1u << k)) s.push_back(types[k]);
      }
      ASSERT_EQ(oracle::consistent_oracle(h, s), consistent(h, s));
    }
  }
}

TEST(Properties, EqualityVariableSemantics) {
  std::mt19937 rng(4242);
  for (int i = 0; i < 100; ++i) {
    EXPECT_EQ(testing::check_equality_semantics(rng), std::nullopt);
  }
}

// Random terms over a small signature for unifier properties.
Term random_term(std::mt19937& rng, const std::vector<Term>& vars, int depth) {
  std::uniform_int_distribution<int> d(0, 5);
  int k = d(rng);
  if (depth == 0 || k < 2) return vars[std::uniform_int_distribution<std::size_t>(0, vars.size() - 1)(rng)];
  if (k == 2) return Term::atom("b");
  if (k == 3) return Term::atom("a");
  return Term::compound(k == 4 ? "f" : "g",
                        {random_term(rng, vars, depth - 1), random_term(rng, vars, depth - 1)});
}

TEST(Properties, UnifierIsSoundAndSymmetric) {
  std::mt19937 rng(1);
  int successes = 0;
  for (int i = 0; i < 2000; ++i) {
    std::vector<Term> vars{Term::fresh_var(), Term::fresh_var(), Term::fresh_var()};
    Term a = random_term(rng, vars, 3);
    Term b = random_term(rng, vars, 3);
    auto ab = unify(a, b);
    auto ba = unify(b, a);
    ASSERT_EQ(ab.has_value(), ba.has_value()) << to_string(a) << " " << to_string(b);
    if (!ab) continue;
    ++successes;
    Term r = ab->apply(a);
    EXPECT_EQ(r, ab->apply(b));
    EXPECT_EQ(ab->apply(r), r);
    EXPECT_TRUE(alpha_equal(r, ba->apply(a)));
  }
  EXPECT_GT(successes, 100);
}

// Most general: every ground unifier over {a, b} factors through the mgu.
TEST(Properties, UnifierIsMostGeneral) {
  std::mt19937 rng(2);
  const Term atoms[] = {Term::atom("a"), Term::atom("b")};
  for (int i = 0; i < 300; ++i) {
    std::vector<Term> vars{Term::fresh_var(), Term::fresh_var(), Term::fresh_var()};
    Term a = random_term(rng, vars, 2);
    Term b = random_term(rng, vars, 2);
    auto mgu = unify(a, b);
    for (unsigned g = 0; g < 8; ++g) {
      std::vector<std::pair<Term, Term>> bind;
      for (std::size_t v = 0; v < 3; ++v) bind.emplace_back(vars[v], atoms[(g >> v) & 1]);
      auto ground = Substitution::from_bindings(bind);
      if (ground.apply(a) != ground.apply(b)) continue;
      ASSERT_TRUE(mgu) << to_string(a) << " " << to_string(b);
      // ground = ground o mgu on the original variables.
      for (const Term& v : vars) EXPECT_EQ(ground.apply(mgu->apply(v)), ground.apply(v));
    }
  }
}

}  // namespace
}  // namespace mdi
