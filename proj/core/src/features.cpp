#include "mdi/features.hpp"

namespace mdi {

std::optional<FeatureId> FeatureTable::find(std::string_view name) const {
  auto it = by_name_.find(std::string(name));
  if (it == by_name_.end()) return std::nullopt;
  return FeatureId{it->second};
}

std::span<const FeatureId> FeatureTable::introduced_at(TypeId t) const {
  if (t.index >= by_type_.size()) return {};
  return by_type_[t.index];
}

std::vector<TypeId> FeatureTable::appropriate_types(const Hierarchy& h,
                                                    FeatureId f) const {
  return h.down_closure(at(f).introduced_at);
}

bool FeatureTable::appropriate(const Hierarchy& h, FeatureId f,
                               const TypeConj& c) const {
  return subsumes(h, TypeConj::of(h, at(f).introduced_at), c);
}

FeatureTable validate_features(const Hierarchy& h,
                               std::span<const FeatureIntro> intros) {
  FeatureTable table;
  table.by_type_.assign(h.size(), {});
  for (const FeatureIntro& intro : intros) {
    TypeId owner = h.id(intro.type);
    for (const FeatureSpec& spec : intro.features) {
      auto id = static_cast<std::uint32_t>(table.decls_.size());
      if (auto [it, inserted] = table.by_name_.try_emplace(spec.name, id); !inserted) {
        const FeatureDecl& first = table.decls_[it->second];
        throw FeatureError("line " + std::to_string(spec.span.line) + ": feature '" +
                           spec.name + "' introduced at both '" +
                           h.name(first.introduced_at) + "' and '" + intro.type + "'");
      }
      std::vector<TypeId> restriction = [&] {
        std::vector<TypeId> ids;
        for (const auto& n : spec.restriction) ids.push_back(h.id(n));
        return ids;
      }();
      if (!consistent(h, restriction)) {
        throw FeatureError("line " + std::to_string(spec.span.line) +
                           ": inconsistent restriction for feature '" + spec.name + "'");
      }
      auto& owned = table.by_type_[owner.index];
      table.decls_.push_back(FeatureDecl{spec.name, owner,
                                         TypeConj::normalize(h, std::move(restriction)),
                                         owned.size(), spec.span});
      owned.push_back(FeatureId{id});
    }
  }
  return table;
}

}  // namespace mdi
