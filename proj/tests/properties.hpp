#pragma once

// Law checks over one hierarchy. Each returns a description of the first
// violation found, or nullopt.

#include <optional>
#include <random>
#include <string>

#include "mdi/encoder.hpp"
#include "mdi/feature_structure.hpp"
#include "mdi/oracle.hpp"
#include "support.hpp"

namespace mdi::testing {

inline std::optional<std::string> check_conjoin_laws(const Hierarchy& h) {
  const auto cs = all_conjunctions(h, 2);
  auto show = [&h](const TypeConj& c) { return "{" + to_string(h, c) + "}"; };
  for (const TypeConj& a : cs) {
    auto aa = conjoin(h, a, a);
    if (!aa || *aa != a) return "idempotence fails for " + show(a);
    for (const TypeConj& b : cs) {
      auto ab = conjoin(h, a, b);
      auto ba = conjoin(h, b, a);
      if (ab != ba) return "commutativity fails for " + show(a) + ", " + show(b);
      if (ab) {
        if (!subsumes(h, a, *ab) || !subsumes(h, b, *ab)) {
          return "conjunction is not a lower bound of " + show(a) + ", " + show(b);
        }
      }
      if (subsumes(h, a, b) && (!ab || *ab != b)) {
        return "subsumes(a,b) but conjoin(a,b) != b for " + show(a) + ", " + show(b);
      }
    }
  }
  // Associativity over all triples of single types and the top element.
  const auto singles = all_conjunctions(h, 1);
  for (const TypeConj& a : singles) {
    for (const TypeConj& b : singles) {
      auto ab = conjoin(h, a, b);
      for (const TypeConj& c : singles) {
        auto left = ab ? conjoin(h, *ab, c) : std::nullopt;
        auto bc = conjoin(h, b, c);
        auto right = bc ? conjoin(h, a, *bc) : std::nullopt;
        if (left != right) {
          return "associativity fails for " + show(a) + ", " + show(b) + ", " + show(c);
        }
      }
    }
  }
  return std::nullopt;
}

inline std::optional<std::string> check_subsumes_preorder(const Hierarchy& h) {
  const auto cs = all_conjunctions(h, 2);
  for (const TypeConj& a : cs) {
    if (!subsumes(h, a, a)) return "subsumes is not reflexive at {" + to_string(h, a) + "}";
    for (const TypeConj& b : cs) {
      if (!subsumes(h, a, b)) continue;
      for (const TypeConj& c : cs) {
        if (subsumes(h, b, c) && !subsumes(h, a, c)) {
          return "subsumes is not transitive at {" + to_string(h, a) + "}, {" +
                 to_string(h, b) + "}, {" + to_string(h, c) + "}";
        }
      }
    }
  }
  return std::nullopt;
}

inline std::optional<std::string> check_product_split(const RandomHierarchy& spec) {
  Hierarchy a = build(spec.product_text());
  Hierarchy b = build(spec.split_text());
  if (a.size() != b.size() || a.dimensions().size() != b.dimensions().size()) {
    return "product and split forms differ in size";
  }
  for (TypeId t : a.types()) {
    if (a.name(t) != b.name(t)) return "type order differs at " + a.name(t);
  }
  for (std::size_t d = 0; d < a.dimensions().size(); ++d) {
    if (a.dimension(d).parent != b.dimension(d).parent ||
        a.dimension(d).members != b.dimension(d).members ||
        a.dimension(d).index != b.dimension(d).index) {
      return "dimension " + std::to_string(d) + " differs";
    }
  }
  return std::nullopt;
}

inline std::optional<std::string> check_faithful(const Hierarchy& h) {
  auto tab = EncodingTable::compile(h);
  oracle::FaithfulnessOptions opts;
  opts.complete_pairs = true;
  auto r = oracle::check_faithfulness(h, tab, opts);
  if (!r.faithful()) return oracle::format_lines(h, r);
  return std::nullopt;
}

/// Random hierarchy with two features `left` and `right` at the root plus
/// up to three more introduced at random types; checks that equality
/// variables separate allocations until unification or coreference joins
/// them.
inline std::optional<std::string> check_equality_semantics(std::mt19937& rng) {
  auto spec = random_hierarchy_spec(rng, 12);
  std::string text = spec.product_text();
  Hierarchy plain = build(text);
  const auto types = plain.types();
  auto pick = [&](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };
  text += plain.name(plain.root()) + " intro [left:" + plain.name(plain.root()) +
          ", right:" + plain.name(plain.root()) + "].\n";
  const std::size_t extra = pick(4);
  for (std::size_t i = 0; i < extra; ++i) {
    TypeId at = types[1 + pick(types.size() - 1)];
    TypeId restriction = types[pick(types.size())];
    text += plain.name(at) + " intro [f" + std::to_string(i) + ":" + plain.name(restriction) + "].\n";
  }
  auto decls = parse_declarations(text);
  Hierarchy h = Hierarchy::build(decls);
  FeatureTable f = validate_features(h, decls.features);
  auto tab = EncodingTable::compile(h, EncodingMode::kFeatureStructures, &f);

  const TypeConj c = TypeConj::of(h, types[pick(types.size())]);
  const std::string where = " (type " + to_string(h, c) + ")\n" + text;
  FeatureStructure a = fs_new(tab, c);
  FeatureStructure b = fs_new(tab, c);
  if (token_identical(a, b)) return "fresh allocations are token-identical" + where;
  if (!token_identical(a, a)) return "token identity is not reflexive" + where;
  auto u = fs_unify(a, b);
  if (!u) return "unifying two structures of one type failed" + where;
  if (u->types() != c) return "unification changed the type" + where;

  const FeaturePath left{"left"};
  const FeaturePath right{"right"};
  auto pair = fs_put(fs_new(tab, TypeConj{}), left, a);
  if (pair) pair = fs_put(*pair, right, b);
  if (!pair) return "storing values failed" + where;
  if (token_identical(*fs_get(*pair, left), *fs_get(*pair, right))) {
    return "separately stored values are token-identical" + where;
  }
  auto joined = fs_unify(*pair, *fs_corefer(fs_new(tab, TypeConj{}), left, right));
  if (!joined) return "unifying with a coreference failed" + where;
  if (!token_identical(*fs_get(*joined, left), *fs_get(*joined, right))) {
    return "values are not token-identical after unification" + where;
  }
  if (token_identical(*joined, *fs_get(*joined, left))) {
    return "root became token-identical to a feature value" + where;
  }
  return std::nullopt;
}

}  // namespace mdi::testing
