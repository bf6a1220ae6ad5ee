#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "mdi/declarations.hpp"
#include "mdi/hierarchy.hpp"

namespace mdi {

struct FeatureId {
  std::uint32_t index = 0;
  friend auto operator<=>(FeatureId, FeatureId) = default;
};

/// A feature introduced at a unique most general type and appropriate for
/// that type and all of its subtypes. Values must satisfy `restriction`,
/// which may conjoin types from several dimensions.
struct FeatureDecl {
  std::string name;
  TypeId introduced_at;
  TypeConj restriction;
  std::size_t slot = 0;  // position among the features introduced at the type
  SourceSpan span;
};

class FeatureTable {
 public:
  FeatureTable() = default;

  std::span<const FeatureDecl> features() const { return decls_; }
  const FeatureDecl& at(FeatureId f) const { return decls_.at(f.index); }
  std::optional<FeatureId> find(std::string_view name) const;
  /// Features introduced at `t`, in declaration order. Empty for types the
  /// table was not built with.
  std::span<const FeatureId> introduced_at(TypeId t) const;
  /// The introducing type and all of its subtypes.
  std::vector<TypeId> appropriate_types(const Hierarchy& h, FeatureId f) const;
  /// True iff some member of `c` is a subtype-or-self of the introducing type.
  bool appropriate(const Hierarchy& h, FeatureId f, const TypeConj& c) const;

 private:
  friend FeatureTable validate_features(const Hierarchy&, std::span<const FeatureIntro>);

  std::vector<FeatureDecl> decls_;
  std::unordered_map<std::string, std::uint32_t> by_name_;
  std::vector<std::vector<FeatureId>> by_type_;
};

/// Resolves feature introductions against `h`. Throws FeatureError on a
/// feature introduced twice or an inconsistent restriction, and
/// UnknownTypeError on undeclared types.
FeatureTable validate_features(const Hierarchy& h,
                               std::span<const FeatureIntro> intros);

}  // namespace mdi
