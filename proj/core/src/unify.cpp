#include "mdi/unify.hpp"

#include <algorithm>

#include "mdi/error.hpp"

namespace mdi {

const Term* Substitution::lookup(VarId v) const {
  auto it = bindings_.find(v);
  return it == bindings_.end() ? nullptr : &it->second;
}

const Term& Substitution::walk(const Term& t) const {
  const Term* cur = &t;
  while (cur->is_var()) {
    const Term* next = lookup(cur->var_id());
    if (!next) break;
    cur = next;
  }
  return *cur;
}

Term Substitution::apply(const Term& t) const {
  if (bindings_.empty()) return t;
  const Term& w = walk(t);
  if (w.is_var() || w.arity() == 0) return w;
  std::vector<Term> args;
  args.reserve(w.arity());
  bool changed = false;
  for (const Term& a : w.args()) {
    args.push_back(apply(a));
    changed = changed || !(args.back() == a);
  }
  if (!changed) return w;
  return Term::compound(w.functor(), std::move(args));
}

Substitution Substitution::normalized() const {
  Substitution out;
  for (const auto& [v, t] : bindings_) out.bind(v, apply(t));
  return out;
}

std::vector<std::pair<VarId, Term>> Substitution::entries() const {
  std::vector<std::pair<VarId, Term>> out(bindings_.begin(), bindings_.end());
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

class Unifier {
 public:
  explicit Unifier(Substitution seed) : s_(std::move(seed)) {}

  bool unify(const Term& a, const Term& b) {
    std::vector<std::pair<Term, Term>> stack{{a, b}};
    while (!stack.empty()) {
      auto [x0, y0] = std::move(stack.back());
      stack.pop_back();
      const Term& x = s_.walk(x0);
      const Term& y = s_.walk(y0);
      if (x.is_var() && y.is_var() && x.var_id() == y.var_id()) continue;
      if (x.is_var()) {
        if (!bind(x.var_id(), y)) return false;
        continue;
      }
      if (y.is_var()) {
        if (!bind(y.var_id(), x)) return false;
        continue;
      }
      if (x.functor() != y.functor() || x.arity() != y.arity()) return false;
      for (std::size_t i = x.arity(); i-- > 0;) {
        stack.emplace_back(x.arg(i), y.arg(i));
      }
    }
    return true;
  }

  Substitution take() { return std::move(s_).normalized(); }

  static bool bind_checked(Substitution& s, VarId v, const Term& t) {
    if (occurs(s, v, t)) return false;
    s.bind(v, t);
    return true;
  }

 private:
  static bool occurs(const Substitution& s, VarId v, const Term& t) {
    const Term& w = s.walk(t);
    if (w.is_var()) return w.var_id() == v;
    for (const Term& a : w.args()) {
      if (occurs(s, v, a)) return true;
    }
    return false;
  }

  bool bind(VarId v, const Term& t) { return bind_checked(s_, v, t); }

  Substitution s_;
};

Substitution Substitution::from_bindings(
    std::vector<std::pair<Term, Term>> bindings) {
  Substitution s;
  for (auto& [var, value] : bindings) {
    if (!var.is_var()) throw Error("substitution key is not a variable");
    if (s.lookup(var.var_id())) {
      throw Error("variable bound twice in substitution");
    }
    if (!Unifier::bind_checked(s, var.var_id(), value)) {
      throw Error("cyclic substitution binding for " + to_string(var));
    }
  }
  return s;
}

std::optional<Substitution> unify(const Term& a, const Term& b,
                                  Substitution seed) {
  Unifier u(std::move(seed));
  if (!u.unify(a, b)) return std::nullopt;
  return u.take();
}

namespace {

bool match_into(const Term& pattern, const Term& target,
                std::unordered_map<VarId, Term>& binding) {
  if (pattern.is_var()) {
    auto [it, inserted] = binding.try_emplace(pattern.var_id(), target);
    return inserted || it->second == target;
  }
  if (target.is_var()) return false;
  if (pattern.functor() != target.functor() ||
      pattern.arity() != target.arity()) {
    return false;
  }
  for (std::size_t i = 0; i < pattern.arity(); ++i) {
    if (!match_into(pattern.arg(i), target.arg(i), binding)) return false;
  }
  return true;
}

bool alpha_into(const Term& a, const Term& b,
                std::unordered_map<VarId, VarId>& forward,
                std::unordered_map<VarId, VarId>& backward) {
  if (a.is_var() || b.is_var()) {
    if (!a.is_var() || !b.is_var()) return false;
    auto [f, f_new] = forward.try_emplace(a.var_id(), b.var_id());
    auto [r, r_new] = backward.try_emplace(b.var_id(), a.var_id());
    return f->second == b.var_id() && r->second == a.var_id();
  }
  if (a.functor() != b.functor() || a.arity() != b.arity()) return false;
  for (std::size_t i = 0; i < a.arity(); ++i) {
    if (!alpha_into(a.arg(i), b.arg(i), forward, backward)) return false;
  }
  return true;
}

}  // namespace

bool is_instance(const Term& specific, const Term& general) {
  std::unordered_map<VarId, Term> binding;
  return match_into(general, specific, binding);
}

bool alpha_equal(const Term& a, const Term& b) {
  std::unordered_map<VarId, VarId> forward, backward;
  return alpha_into(a, b, forward, backward);
}

}  // namespace mdi
