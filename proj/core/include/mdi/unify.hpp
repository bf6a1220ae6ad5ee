#pragma once

#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "mdi/term.hpp"

namespace mdi {

/// Mapping from variables to terms. Bindings may be stored triangularly
/// (a bound term may mention other bound variables); `apply` always
/// resolves fully, so its result is idempotent. No binding may create a
/// cycle.
class Substitution {
 public:
  Substitution() = default;

  /// Builds a substitution from explicit bindings. Throws Error if the
  /// bindings are cyclic (X -> f(X), or X -> Y, Y -> X).
  static Substitution from_bindings(std::vector<std::pair<Term, Term>> bindings);

  bool empty() const { return bindings_.empty(); }
  std::size_t size() const { return bindings_.size(); }
  const Term* lookup(VarId v) const;

  /// Follows variable-to-term bindings until reaching an unbound variable or
  /// a compound term.
  const Term& walk(const Term& t) const;

  Term apply(const Term& t) const;

  /// Equivalent substitution in which no bound term mentions a bound
  /// variable.
  Substitution normalized() const;

  /// Bindings sorted by variable id.
  std::vector<std::pair<VarId, Term>> entries() const;

 private:
  friend class Unifier;
  void bind(VarId v, Term t) { bindings_.insert_or_assign(v, std::move(t)); }

  std::unordered_map<VarId, Term> bindings_;
};

inline Term apply(const Substitution& s, const Term& t) { return s.apply(t); }

/// Most general unifier of `a` and `b` (occurs check on), extending `seed`.
/// Returns nullopt on functor/arity clash or occurs-check violation.
std::optional<Substitution> unify(const Term& a, const Term& b,
                                  Substitution seed = {});

/// True iff `specific` is an instance of `general` (one-way matching;
/// variables of `specific` are treated as constants).
bool is_instance(const Term& specific, const Term& general);

/// True iff a bijective variable renaming maps `a` onto `b`.
bool alpha_equal(const Term& a, const Term& b);

}  // namespace mdi
