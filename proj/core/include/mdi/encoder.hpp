#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mdi/features.hpp"
#include "mdi/hierarchy.hpp"
#include "mdi/term.hpp"

namespace mdi {

/// kTypes reproduces the bare type encoding (dimension slots only).
/// kFeatureStructures adds one slot per introduced feature and a trailing
/// equality slot on the root node.
enum class EncodingMode { kTypes, kFeatureStructures };

/// Argument layout of the node that carries a type.
struct NodeLayout {
  std::size_t dimension_slots = 0;
  std::size_t feature_slots = 0;
  bool equality_slot = false;

  std::size_t arity() const {
    return dimension_slots + feature_slots + (equality_slot ? 1 : 0);
  }
};

/// Per-type term templates such that conjunction of types is unification of
/// their templates.
///
/// Each dimension of a type is an argument position of the type's node;
/// co-members of a dimension put distinct functors at that position. A type
/// listed under several parents occurs once per parent, but only the
/// leftmost occurrence (first in depth-first, left-to-right order from the
/// root, dimensions in declaration order) carries its node with arguments;
/// the others are atoms.
///
/// The table holds pointers to the hierarchy and feature table it was
/// compiled from; both must outlive it.
class EncodingTable {
 public:
  static EncodingTable compile(const Hierarchy& h,
                               EncodingMode mode = EncodingMode::kTypes,
                               const FeatureTable* features = nullptr);

  const Hierarchy& hierarchy() const { return *h_; }
  /// Null in kTypes mode.
  const FeatureTable* features() const { return features_; }
  EncodingMode mode() const { return mode_; }

  /// Template of `t` with freshly allocated variables.
  Term instantiate(TypeId t) const { return rename_apart(templates_.at(t.index)); }

  /// Argument path from the root to the node carrying `t`.
  const std::vector<std::size_t>& carrier_path(TypeId t) const {
    return carrier_path_.at(t.index);
  }
  /// Parent under which `t` is carried; nullopt for the root.
  std::optional<TypeId> carrier_parent(TypeId t) const {
    return carrier_parent_.at(t.index);
  }
  const NodeLayout& layout(TypeId t) const { return layout_.at(t.index); }
  const std::string& functor(TypeId t) const { return functors_.at(t.index); }

  /// Argument path from the root to the value slot of `f` (kFeatureStructures).
  std::vector<std::size_t> feature_path(FeatureId f) const;
  /// Index of the equality slot in the root node (kFeatureStructures).
  std::size_t equality_slot() const;

  /// Copy whose templates use `functor` wherever `t`'s functor appeared.
  /// Used to inject faults into otherwise faithful tables.
  EncodingTable with_functor(TypeId t, const std::string& functor) const;

 private:
  EncodingTable() = default;

  const Hierarchy* h_ = nullptr;
  const FeatureTable* features_ = nullptr;
  EncodingMode mode_ = EncodingMode::kTypes;
  std::vector<Term> templates_;
  std::vector<std::vector<std::size_t>> carrier_path_;
  std::vector<std::optional<TypeId>> carrier_parent_;
  std::vector<NodeLayout> layout_;
  std::vector<std::string> functors_;
};

/// Unification of the members' templates (the root template for an empty
/// conjunction); nullopt iff the conjunction is inconsistent.
std::optional<Term> encode(const EncodingTable& tab, const TypeConj& c);

/// The most specific types whose templates subsume `t`. Throws Error if `t`
/// is not an instance of the root template.
TypeConj decode(const EncodingTable& tab, const Term& t);

}  // namespace mdi
