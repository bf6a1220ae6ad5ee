#include "mdi/hierarchy.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <set>

namespace mdi {

namespace {

std::string quoted(const std::string& s) { return "'" + s + "'"; }

}  // namespace

std::optional<TypeId> Hierarchy::find(std::string_view name) const {
  auto it = ids_.find(std::string(name));
  if (it == ids_.end()) return std::nullopt;
  return TypeId{it->second};
}

TypeId Hierarchy::id(std::string_view name) const {
  if (auto t = find(name)) return *t;
  throw UnknownTypeError(std::string(name));
}

std::vector<TypeId> Hierarchy::types() const {
  std::vector<TypeId> out(size());
  for (std::uint32_t i = 0; i < size(); ++i) out[i] = TypeId{i};
  return out;
}

std::vector<TypeId> Hierarchy::parents(TypeId t) const {
  std::vector<TypeId> out;
  for (const ParentLink& l : parent_links(t)) out.push_back(l.parent);
  return out;
}

std::vector<TypeId> Hierarchy::up_closure(TypeId t) const {
  std::vector<TypeId> out;
  const auto& row = closure_.at(t.index);
  for (std::uint32_t i = 0; i < row.size(); ++i) {
    if (row[i]) out.push_back(TypeId{i});
  }
  return out;
}

std::vector<TypeId> Hierarchy::down_closure(TypeId t) const {
  std::vector<TypeId> out;
  for (std::uint32_t i = 0; i < size(); ++i) {
    if (closure_[i][t.index]) out.push_back(TypeId{i});
  }
  return out;
}

void Hierarchy::index_links() {
  dims_of_.assign(size(), {});
  links_.assign(size(), {});
  for (std::size_t d = 0; d < dims_.size(); ++d) {
    Dimension& dim = dims_[d];
    dim.index = dims_of_[dim.parent.index].size();
    dims_of_[dim.parent.index].push_back(d);
    for (std::size_t p = 0; p < dim.members.size(); ++p) {
      links_[dim.members[p].index].push_back(ParentLink{dim.parent, d, p});
    }
  }
}

void Hierarchy::compute_closure() {
  const std::size_t n = size();
  // Kahn's algorithm; the smallest ready id goes first.
  std::vector<std::size_t> pending(n);
  for (std::size_t t = 0; t < n; ++t) pending[t] = links_[t].size();
  std::set<std::uint32_t> ready;
  for (std::uint32_t t = 0; t < n; ++t) {
    if (pending[t] == 0) ready.insert(t);
  }
  topo_.clear();
  while (!ready.empty()) {
    std::uint32_t t = *ready.begin();
    ready.erase(ready.begin());
    topo_.push_back(TypeId{t});
    for (std::size_t d : dims_of_[t]) {
      for (TypeId m : dims_[d].members) {
        if (--pending[m.index] == 0) ready.insert(m.index);
      }
    }
  }
  if (topo_.size() != n) {
    std::vector<std::string> stuck;
    for (std::size_t t = 0; t < n; ++t) {
      if (pending[t] != 0) stuck.push_back(names_[t]);
    }
    std::string list;
    for (const auto& s : stuck) list += (list.empty() ? "" : ", ") + s;
    throw HierarchyError({}, "subtype cycle through: " + list);
  }
  closure_.assign(n, std::vector<bool>(n, false));
  for (TypeId t : topo_) {
    auto& row = closure_[t.index];
    row[t.index] = true;
    for (const ParentLink& l : links_[t.index]) {
      const auto& prow = closure_[l.parent.index];
      for (std::size_t a = 0; a < n; ++a) {
        if (prow[a]) row[a] = true;
      }
    }
  }
}

Hierarchy Hierarchy::single(std::string root) {
  Hierarchy h;
  h.ids_.emplace(root, 0);
  h.names_.push_back(std::move(root));
  h.index_links();
  h.compute_closure();
  return h;
}

Hierarchy Hierarchy::build(const DeclarationSet& decls) {
  Hierarchy h;
  auto intern = [&h](const std::string& name) {
    auto [it, inserted] =
        h.ids_.try_emplace(name, static_cast<std::uint32_t>(h.names_.size()));
    if (inserted) h.names_.push_back(name);
    return TypeId{it->second};
  };
  for (const SubtypeDecl& d : decls.subtypes) {
    intern(d.parent);
    for (const auto& dim : d.dimensions) {
      for (const auto& m : dim) intern(m);
    }
  }
  if (h.names_.empty()) throw HierarchyError({}, "no type declarations");

  // (parent, member) -> span of the first listing, to reject a second listing.
  std::map<std::pair<std::uint32_t, std::uint32_t>, SourceSpan> listed;
  for (const SubtypeDecl& d : decls.subtypes) {
    TypeId parent = h.id(d.parent);
    for (const auto& names : d.dimensions) {
      Dimension dim;
      dim.parent = parent;
      dim.span = d.span;
      for (const auto& m : names) {
        TypeId member = h.id(m);
        if (member == parent) {
          throw HierarchyError(d.span, "type " + quoted(m) + " declared as its own subtype");
        }
        if (!listed.try_emplace({parent.index, member.index}, d.span).second) {
          throw HierarchyError(d.span, "type " + quoted(m) +
                                           " appears in more than one dimension of " +
                                           quoted(d.parent));
        }
        dim.members.push_back(member);
      }
      h.dims_.push_back(std::move(dim));
    }
  }
  h.index_links();
  h.compute_closure();

  std::vector<TypeId> roots;
  for (TypeId t : h.types()) {
    if (h.links_[t.index].empty()) roots.push_back(t);
  }
  if (roots.size() != 1) {
    std::string list;
    for (TypeId r : roots) list += (list.empty() ? "" : ", ") + h.name(r);
    throw HierarchyError({}, "expected exactly one root type, found " +
                                 std::to_string(roots.size()) + ": " + list);
  }
  h.root_ = roots.front();

  // A parent that is an ancestor of another parent adds nothing but a
  // redundant edge; drop it.
  std::vector<std::pair<std::size_t, TypeId>> redundant;  // (dimension, member)
  for (TypeId t : h.types()) {
    const auto& links = h.links_[t.index];
    for (const ParentLink& a : links) {
      for (const ParentLink& b : links) {
        if (a.parent != b.parent && h.is_ancestor_or_self(a.parent, b.parent)) {
          redundant.emplace_back(a.dimension, t);
          h.warnings_.push_back(Warning{
              h.dims_[a.dimension].span,
              "redundant supertype " + quoted(h.name(a.parent)) + " of " +
                  quoted(h.name(t)) + " ignored (it subsumes " +
                  quoted(h.name(b.parent)) + ")"});
          break;
        }
      }
    }
  }
  if (!redundant.empty()) {
    for (const auto& [d, member] : redundant) {
      auto& members = h.dims_[d].members;
      members.erase(std::remove(members.begin(), members.end(), member), members.end());
    }
    std::erase_if(h.dims_, [](const Dimension& d) { return d.members.empty(); });
    h.index_links();
    h.compute_closure();
  }

  for (TypeId t : h.types()) {
    const auto& links = h.links_[t.index];
    for (std::size_t i = 0; i < links.size(); ++i) {
      for (std::size_t j = i + 1; j < links.size(); ++j) {
        TypeId pair[] = {links[i].parent, links[j].parent};
        if (auto clash = find_clash(h, pair)) {
          throw HierarchyError(
              h.dims_[links[j].dimension].span,
              "supertypes " + quoted(h.name(pair[0])) + " and " +
                  quoted(h.name(pair[1])) + " of " + quoted(h.name(t)) +
                  " are inconsistent (" + quoted(h.name(clash->first)) + " and " +
                  quoted(h.name(clash->second)) + " are disjoint)");
        }
      }
    }
  }
  for (TypeId t : h.types()) {
    TypeId self[] = {t};
    if (auto clash = find_clash(h, self)) {
      throw HierarchyError(
          h.dims_[h.links_[t.index].front().dimension].span,
          "type " + quoted(h.name(t)) + " inherits from disjoint types " +
              quoted(h.name(clash->first)) + " and " + quoted(h.name(clash->second)));
    }
  }
  return h;
}

TypeConj TypeConj::normalize(const Hierarchy& h, std::vector<TypeId> types) {
  std::sort(types.begin(), types.end());
  types.erase(std::unique(types.begin(), types.end()), types.end());
  std::vector<TypeId> kept;
  for (TypeId a : types) {
    bool subsumed = std::any_of(types.begin(), types.end(), [&](TypeId b) {
      return a != b && h.is_ancestor_or_self(a, b);
    });
    if (!subsumed && a != h.root()) kept.push_back(a);
  }
  return TypeConj(std::move(kept));
}

std::vector<TypeId> parse_type_list(const Hierarchy& h, std::string_view text) {
  std::vector<TypeId> out;
  std::size_t pos = 0;
  auto skip = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  for (;;) {
    skip();
    std::size_t start = pos;
    while (pos < text.size() &&
           (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_')) {
      ++pos;
    }
    if (start == pos) {
      throw ParseError("<conjunction>", SourceSpan{1, static_cast<int>(pos) + 1},
                       "expected a type name");
    }
    out.push_back(h.id(text.substr(start, pos - start)));
    skip();
    if (pos == text.size()) return out;
    if (text[pos] != '&') {
      throw ParseError("<conjunction>", SourceSpan{1, static_cast<int>(pos) + 1},
                       "expected '&'");
    }
    ++pos;
  }
}

TypeConj parse_conj(const Hierarchy& h, std::string_view text) {
  return TypeConj::normalize(h, parse_type_list(h, text));
}

std::string to_string(const Hierarchy& h, const TypeConj& c) {
  if (c.empty()) return h.name(h.root());
  std::string out;
  for (TypeId t : c.members()) {
    if (!out.empty()) out += " & ";
    out += h.name(t);
  }
  return out;
}

std::optional<std::pair<TypeId, TypeId>> find_clash(const Hierarchy& h,
                                                    std::span<const TypeId> types) {
  std::vector<bool> in(h.size(), false);
  for (TypeId t : types) {
    for (TypeId a : h.up_closure(t)) in[a.index] = true;
  }
  // dimension -> the member of it found in the closure
  std::unordered_map<std::size_t, TypeId> occupant;
  for (std::uint32_t i = 0; i < h.size(); ++i) {
    if (!in[i]) continue;
    for (const ParentLink& l : h.parent_links(TypeId{i})) {
      auto [it, inserted] = occupant.try_emplace(l.dimension, TypeId{i});
      if (!inserted && it->second != TypeId{i}) return std::pair{it->second, TypeId{i}};
    }
  }
  return std::nullopt;
}

bool consistent(const Hierarchy& h, std::span<const TypeId> types) {
  return !find_clash(h, types).has_value();
}

std::optional<TypeConj> conjoin(const Hierarchy& h, const TypeConj& a,
                                const TypeConj& b) {
  std::vector<TypeId> all = a.members();
  all.insert(all.end(), b.members().begin(), b.members().end());
  if (!consistent(h, all)) return std::nullopt;
  return TypeConj::normalize(h, std::move(all));
}

bool subsumes(const Hierarchy& h, const TypeConj& general, const TypeConj& specific) {
  return std::all_of(general.members().begin(), general.members().end(), [&](TypeId x) {
    if (x == h.root()) return true;
    return std::any_of(specific.members().begin(), specific.members().end(),
                       [&](TypeId y) { return h.is_ancestor_or_self(x, y); });
  });
}

}  // namespace mdi
