#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mdi/encoder.hpp"
#include "mdi/term.hpp"

namespace mdi {

/// A typed feature structure held as a term compiled in feature-structure
/// mode. Every node is a full root-shaped term whose last root argument is
/// its equality variable. Values are immutable; the operations below return
/// new structures.
class FeatureStructure {
 public:
  const Term& term() const { return term_; }
  const EncodingTable& table() const { return *table_; }
  /// Conjunction of types the node carries.
  TypeConj types() const { return decode(*table_, term_); }

 private:
  friend FeatureStructure fs_new(const EncodingTable&, const TypeConj&);
  friend class FsAccess;
  FeatureStructure(const EncodingTable* table, Term term)
      : table_(table), term_(std::move(term)) {}

  const EncodingTable* table_;
  Term term_;
};

using FeaturePath = std::vector<std::string>;

/// Fresh structure of type `c`: all appropriate feature slots unconstrained,
/// fresh equality variable. Throws InconsistentError, or Error if `tab` was
/// not compiled in feature-structure mode.
FeatureStructure fs_new(const EncodingTable& tab, const TypeConj& c);

/// Unifies `value` into the slot at `path`, together with the restriction of
/// the last feature. Intermediate unconstrained slots are instantiated to
/// their feature's restriction. Returns nullopt on a type clash. Throws
/// FeatureError if a feature is unknown or not appropriate where used.
std::optional<FeatureStructure> fs_put(const FeatureStructure& fs,
                                       std::span<const std::string> path,
                                       const FeatureStructure& value);

/// Node at `path`, or nullopt if the path runs through a slot that is still
/// unconstrained. Throws FeatureError as fs_put does.
std::optional<FeatureStructure> fs_get(const FeatureStructure& fs,
                                       std::span<const std::string> path);

/// Makes the values at `a` and `b` one node (coreference).
std::optional<FeatureStructure> fs_corefer(const FeatureStructure& fs,
                                           std::span<const std::string> a,
                                           std::span<const std::string> b);

/// Term unification of the two roots. Both must come from the same table.
std::optional<FeatureStructure> fs_unify(const FeatureStructure& a,
                                         const FeatureStructure& b);

/// True iff the two nodes share their equality variable, i.e. unification
/// has made them one node.
bool token_identical(const FeatureStructure& a, const FeatureStructure& b);

/// `t1 & t2: term` for display.
std::string to_string(const FeatureStructure& fs);

}  // namespace mdi
