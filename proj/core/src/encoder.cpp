#include "mdi/encoder.hpp"

#include <functional>

#include "mdi/unify.hpp"

namespace mdi {

namespace {

Term fresh_node(const std::string& functor, std::size_t arity) {
  if (arity == 0) return Term::atom(functor);
  std::vector<Term> args;
  args.reserve(arity);
  for (std::size_t i = 0; i < arity; ++i) args.push_back(Term::fresh_var());
  return Term::compound(functor, std::move(args));
}

Term rename_functor(const Term& t, const std::string& from, const std::string& to) {
  if (t.is_var()) return t;
  std::vector<Term> args;
  args.reserve(t.arity());
  for (const Term& a : t.args()) args.push_back(rename_functor(a, from, to));
  return Term::compound(t.functor() == from ? to : t.functor(), std::move(args));
}

}  // namespace

EncodingTable EncodingTable::compile(const Hierarchy& h, EncodingMode mode,
                                     const FeatureTable* features) {
  EncodingTable tab;
  tab.h_ = &h;
  tab.mode_ = mode;
  tab.features_ = mode == EncodingMode::kFeatureStructures ? features : nullptr;
  const std::size_t n = h.size();
  tab.templates_.assign(n, Term::atom(h.name(h.root())));
  tab.carrier_path_.resize(n);
  tab.carrier_parent_.resize(n);
  tab.layout_.resize(n);
  tab.functors_.resize(n);

  for (TypeId t : h.types()) {
    tab.functors_[t.index] = h.name(t);
    NodeLayout& l = tab.layout_[t.index];
    l.dimension_slots = h.dimensions_of(t).size();
    if (tab.features_) l.feature_slots = tab.features_->introduced_at(t).size();
    l.equality_slot = mode == EncodingMode::kFeatureStructures && t == h.root();
  }

  // The first visit of a type in depth-first, left-to-right order is its
  // carrier occurrence; only carriers are expanded further.
  std::vector<bool> visited(n, false);
  std::function<void(TypeId)> visit = [&](TypeId t) {
    for (std::size_t d : h.dimensions_of(t)) {
      const Dimension& dim = h.dimension(d);
      for (TypeId m : dim.members) {
        if (visited[m.index]) continue;
        visited[m.index] = true;
        tab.carrier_parent_[m.index] = t;
        tab.carrier_path_[m.index] = tab.carrier_path_[t.index];
        tab.carrier_path_[m.index].push_back(dim.index);
        visit(m);
      }
    }
  };
  visited[h.root().index] = true;
  visit(h.root());

  for (TypeId t : h.topological_order()) {
    const std::size_t arity = tab.layout_[t.index].arity();
    if (t == h.root()) {
      tab.templates_[t.index] = fresh_node(tab.functors_[t.index], arity);
      continue;
    }
    // Subtype template: each parent's template with `t` chosen in the
    // parent's dimension, all unified together.
    std::optional<Term> acc;
    Substitution s;
    for (const ParentLink& link : h.parent_links(t)) {
      const bool carrier = tab.carrier_parent_[t.index] == link.parent;
      std::vector<std::size_t> path = tab.carrier_path_[link.parent.index];
      path.push_back(h.dimension(link.dimension).index);
      Term placed = replace_at(tab.instantiate(link.parent), path,
                               carrier ? fresh_node(tab.functors_[t.index], arity)
                                       : Term::atom(tab.functors_[t.index]));
      if (!acc) {
        acc = placed;
        continue;
      }
      auto u = unify(*acc, placed, std::move(s));
      if (!u) {
        throw Error("internal: supertypes of '" + h.name(t) +
                    "' have non-unifiable templates");
      }
      s = std::move(*u);
    }
    tab.templates_[t.index] = s.apply(*acc);
  }
  return tab;
}

std::vector<std::size_t> EncodingTable::feature_path(FeatureId f) const {
  if (!features_) throw Error("encoding table has no feature slots");
  const FeatureDecl& decl = features_->at(f);
  std::vector<std::size_t> path = carrier_path(decl.introduced_at);
  path.push_back(layout(decl.introduced_at).dimension_slots + decl.slot);
  return path;
}

std::size_t EncodingTable::equality_slot() const {
  const NodeLayout& l = layout(h_->root());
  if (!l.equality_slot) throw Error("encoding table has no equality slot");
  return l.arity() - 1;
}

EncodingTable EncodingTable::with_functor(TypeId t, const std::string& functor) const {
  EncodingTable out = *this;
  const std::string from = functors_.at(t.index);
  out.functors_[t.index] = functor;
  for (Term& tmpl : out.templates_) tmpl = rename_functor(tmpl, from, functor);
  return out;
}

std::optional<Term> encode(const EncodingTable& tab, const TypeConj& c) {
  if (c.empty()) return tab.instantiate(tab.hierarchy().root());
  Term acc = tab.instantiate(c.members().front());
  Substitution s;
  for (std::size_t i = 1; i < c.size(); ++i) {
    auto u = unify(acc, tab.instantiate(c.members()[i]), std::move(s));
    if (!u) return std::nullopt;
    s = std::move(*u);
  }
  return s.apply(acc);
}

TypeConj decode(const EncodingTable& tab, const Term& t) {
  const Hierarchy& h = tab.hierarchy();
  if (!is_instance(t, tab.instantiate(h.root()))) {
    throw Error("term " + to_string(t) + " is not an instance of the root template");
  }
  std::vector<TypeId> matched;
  for (TypeId type : h.types()) {
    if (is_instance(t, tab.instantiate(type))) matched.push_back(type);
  }
  return TypeConj::normalize(h, std::move(matched));
}

}  // namespace mdi
