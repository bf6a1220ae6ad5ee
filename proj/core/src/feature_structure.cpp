#include "mdi/feature_structure.hpp"

#include "mdi/unify.hpp"

namespace mdi {

class FsAccess {
 public:
  static FeatureStructure make(const EncodingTable& tab, Term t) {
    return FeatureStructure(&tab, std::move(t));
  }
};

namespace {

struct Located {
  Term root;
  std::vector<std::size_t> slot;
  const FeatureDecl* feature = nullptr;
};

const FeatureTable& feature_table(const EncodingTable& tab) {
  if (tab.mode() != EncodingMode::kFeatureStructures || !tab.features()) {
    throw Error("encoding table was not compiled for feature structures");
  }
  return *tab.features();
}

Term restriction_term(const EncodingTable& tab, const FeatureDecl& f) {
  auto t = encode(tab, f.restriction);
  if (!t) throw InconsistentError("restriction of feature '" + f.name + "' is inconsistent");
  return *t;
}

// Walks `path` from the root. With `materialize`, unconstrained intermediate
// slots are bound to their feature's restriction; without it, such a slot
// ends the walk with nullopt.
std::optional<Located> locate(const EncodingTable& tab, Term root,
                              std::span<const std::string> path, bool materialize) {
  const FeatureTable& feats = feature_table(tab);
  const Hierarchy& h = tab.hierarchy();
  Located loc{std::move(root), {}, nullptr};
  for (const std::string& name : path) {
    auto id = feats.find(name);
    if (!id) throw FeatureError("unknown feature '" + name + "'");
    Term node = subterm(loc.root, loc.slot);
    if (node.is_var()) {
      if (!materialize) return std::nullopt;
      auto s = unify(node, restriction_term(tab, *loc.feature));
      loc.root = s->apply(loc.root);
      node = subterm(loc.root, loc.slot);
    }
    TypeConj types = decode(tab, node);
    if (!feats.appropriate(h, *id, types)) {
      throw FeatureError("feature '" + name + "' is not appropriate for " +
                         to_string(h, types));
    }
    std::vector<std::size_t> rel = tab.feature_path(*id);
    loc.slot.insert(loc.slot.end(), rel.begin(), rel.end());
    loc.feature = &feats.at(*id);
  }
  return loc;
}

}  // namespace

FeatureStructure fs_new(const EncodingTable& tab, const TypeConj& c) {
  feature_table(tab);
  auto t = encode(tab, c);
  if (!t) throw InconsistentError("inconsistent type " + to_string(tab.hierarchy(), c));
  return FsAccess::make(tab, std::move(*t));
}

std::optional<FeatureStructure> fs_put(const FeatureStructure& fs,
                                       std::span<const std::string> path,
                                       const FeatureStructure& value) {
  if (&fs.table() != &value.table()) throw Error("feature structures from different tables");
  if (path.empty()) return fs_unify(fs, value);
  auto loc = locate(fs.table(), fs.term(), path, true);
  const Term& slot = subterm(loc->root, loc->slot);
  auto s = unify(slot, value.term());
  if (!s) return std::nullopt;
  s = unify(slot, restriction_term(fs.table(), *loc->feature), std::move(*s));
  if (!s) return std::nullopt;
  return FsAccess::make(fs.table(), s->apply(loc->root));
}

std::optional<FeatureStructure> fs_get(const FeatureStructure& fs,
                                       std::span<const std::string> path) {
  auto loc = locate(fs.table(), fs.term(), path, false);
  if (!loc) return std::nullopt;
  const Term& node = subterm(loc->root, loc->slot);
  if (node.is_var()) return std::nullopt;
  return FsAccess::make(fs.table(), node);
}

std::optional<FeatureStructure> fs_corefer(const FeatureStructure& fs,
                                           std::span<const std::string> a,
                                           std::span<const std::string> b) {
  auto la = locate(fs.table(), fs.term(), a, true);
  auto lb = locate(fs.table(), la->root, b, true);
  // `b` may have materialized slots along `a`; re-read `a` afterwards.
  la = locate(fs.table(), lb->root, a, true);
  const Term& ta = subterm(la->root, la->slot);
  const Term& tb = subterm(la->root, lb->slot);
  auto s = unify(ta, tb);
  if (!s) return std::nullopt;
  s = unify(ta, restriction_term(fs.table(), *la->feature), std::move(*s));
  if (!s) return std::nullopt;
  s = unify(ta, restriction_term(fs.table(), *lb->feature), std::move(*s));
  if (!s) return std::nullopt;
  return FsAccess::make(fs.table(), s->apply(la->root));
}

std::optional<FeatureStructure> fs_unify(const FeatureStructure& a,
                                         const FeatureStructure& b) {
  if (&a.table() != &b.table()) throw Error("feature structures from different tables");
  auto s = unify(a.term(), b.term());
  if (!s) return std::nullopt;
  return FsAccess::make(a.table(), s->apply(a.term()));
}

bool token_identical(const FeatureStructure& a, const FeatureStructure& b) {
  const std::size_t eq = a.table().equality_slot();
  const Term& x = a.term().arg(eq);
  const Term& y = b.term().arg(eq);
  return x.is_var() && y.is_var() && x.var_id() == y.var_id();
}

std::string to_string(const FeatureStructure& fs) {
  return to_string(fs.table().hierarchy(), fs.types()) + ": " + to_string(fs.term());
}

}  // namespace mdi
