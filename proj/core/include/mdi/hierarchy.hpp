#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "mdi/declarations.hpp"
#include "mdi/error.hpp"

namespace mdi {

/// Index of a type in a Hierarchy's symbol table. Ids follow first
/// appearance in the declarations.
struct TypeId {
  std::uint32_t index = 0;
  friend auto operator<=>(TypeId, TypeId) = default;
};

/// One bracketed list of pairwise disjoint subtypes of `parent`.
struct Dimension {
  TypeId parent;
  std::vector<TypeId> members;
  std::size_t index = 0;  // ordinal among the parent's dimensions
  SourceSpan span;
};

/// `child` is member `position` of dimension `dimension` (global index).
struct ParentLink {
  TypeId parent;
  std::size_t dimension = 0;
  std::size_t position = 0;
};

struct Warning {
  SourceSpan span;
  std::string message;
};

/// Validated multi-dimensional type hierarchy. Immutable once built.
class Hierarchy {
 public:
  /// Throws HierarchyError on cycles, zero or several roots, a type listed
  /// twice under one parent, or mutually inconsistent parents. A parent that
  /// subsumes another parent of the same type is dropped with a warning.
  static Hierarchy build(const DeclarationSet& decls);
  /// A hierarchy holding only its root type.
  static Hierarchy single(std::string root);

  std::size_t size() const { return names_.size(); }
  TypeId root() const { return root_; }
  const std::string& name(TypeId t) const { return names_.at(t.index); }
  std::optional<TypeId> find(std::string_view name) const;
  /// Throws UnknownTypeError.
  TypeId id(std::string_view name) const;
  std::vector<TypeId> types() const;

  std::span<const Dimension> dimensions() const { return dims_; }
  const Dimension& dimension(std::size_t d) const { return dims_.at(d); }
  /// Global indices of the dimensions declared on `t`, in declaration order.
  std::span<const std::size_t> dimensions_of(TypeId t) const {
    return dims_of_.at(t.index);
  }
  std::span<const ParentLink> parent_links(TypeId t) const {
    return links_.at(t.index);
  }
  std::vector<TypeId> parents(TypeId t) const;

  bool is_ancestor_or_self(TypeId ancestor, TypeId t) const {
    return closure_.at(t.index).at(ancestor.index);
  }
  /// `t` and all its ancestors, sorted by id.
  std::vector<TypeId> up_closure(TypeId t) const;
  /// `t` and all its descendants, sorted by id.
  std::vector<TypeId> down_closure(TypeId t) const;
  /// Every type after all of its parents; ties broken by id.
  const std::vector<TypeId>& topological_order() const { return topo_; }

  std::span<const Warning> warnings() const { return warnings_; }

 private:
  Hierarchy() = default;
  void index_links();
  void compute_closure();

  std::vector<std::string> names_;
  std::unordered_map<std::string, std::uint32_t> ids_;
  std::vector<Dimension> dims_;
  std::vector<std::vector<std::size_t>> dims_of_;
  std::vector<std::vector<ParentLink>> links_;
  std::vector<std::vector<bool>> closure_;  // closure_[t][a]: a is ancestor-or-self of t
  std::vector<TypeId> topo_;
  TypeId root_;
  std::vector<Warning> warnings_;
};

/// Normalized conjunction of types: no member subsumes another and the root
/// is never a member, so the empty conjunction is the top element. Members
/// are kept sorted by id.
class TypeConj {
 public:
  TypeConj() = default;

  /// Drops the root and every member that is an ancestor of another member.
  static TypeConj normalize(const Hierarchy& h, std::vector<TypeId> types);
  static TypeConj of(const Hierarchy& h, TypeId t) { return normalize(h, {t}); }

  const std::vector<TypeId>& members() const { return members_; }
  bool empty() const { return members_.empty(); }
  std::size_t size() const { return members_.size(); }

  friend bool operator==(const TypeConj&, const TypeConj&) = default;
  friend auto operator<=>(const TypeConj&, const TypeConj&) = default;

 private:
  explicit TypeConj(std::vector<TypeId> members) : members_(std::move(members)) {}
  std::vector<TypeId> members_;
};

/// Parses `t1 & t2 & ...` (whitespace-insensitive) and normalizes.
/// Throws UnknownTypeError or ParseError.
TypeConj parse_conj(const Hierarchy& h, std::string_view text);
std::vector<TypeId> parse_type_list(const Hierarchy& h, std::string_view text);

/// `a & b` with members in id order; the root alone for an empty conjunction.
std::string to_string(const Hierarchy& h, const TypeConj& c);

/// Two distinct co-members of one dimension found in the union of the
/// up-closures of `types`, if any.
std::optional<std::pair<TypeId, TypeId>> find_clash(const Hierarchy& h,
                                                    std::span<const TypeId> types);

/// True iff the up-closures of `types` contain no two distinct co-members of
/// one dimension (open-world semantics).
bool consistent(const Hierarchy& h, std::span<const TypeId> types);

/// Normalized union of `a` and `b`, or nullopt if inconsistent.
std::optional<TypeConj> conjoin(const Hierarchy& h, const TypeConj& a,
                                const TypeConj& b);

/// True iff every member of `general` is an ancestor-or-self of some member
/// of `specific`.
bool subsumes(const Hierarchy& h, const TypeConj& general, const TypeConj& specific);

}  // namespace mdi

template <>
struct std::hash<mdi::TypeId> {
  std::size_t operator()(mdi::TypeId t) const noexcept { return t.index; }
};
