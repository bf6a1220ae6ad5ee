#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mdi {

/// Identity of a logic variable. Two variables are the same iff their ids
/// are equal; printed names carry no meaning.
struct VarId {
  std::uint64_t value = 0;
  friend auto operator<=>(VarId, VarId) = default;
};

/// Immutable first-order term: a variable or a functor applied to an ordered
/// list of arguments (arity 0 is an atom). Copies share structure.
class Term {
 public:
  /// Allocates a variable with a process-wide unique id.
  static Term fresh_var();
  static Term var(VarId id);
  static Term atom(std::string name);
  static Term compound(std::string functor, std::vector<Term> args);

  bool is_var() const;
  bool is_atom() const { return !is_var() && arity() == 0; }
  VarId var_id() const;
  const std::string& functor() const;
  std::span<const Term> args() const;
  std::size_t arity() const { return args().size(); }
  const Term& arg(std::size_t i) const { return args()[i]; }

  /// Structural equality; variables compare by identity.
  friend bool operator==(const Term& a, const Term& b);

 private:
  struct Node;
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// Number of functor/atom occurrences; variables are not counted.
std::size_t symbol_count(const Term& t);

/// Variables of `t` in first-occurrence (depth-first, left-to-right) order.
std::vector<VarId> variables(const Term& t);

bool occurs_in(VarId v, const Term& t);

/// Copy of `t` with every variable replaced by a fresh one, consistently.
Term rename_apart(const Term& t);

/// Subterm reached by following argument indices from the root.
const Term& subterm(const Term& t, std::span<const std::size_t> path);

/// Copy of `t` with the subterm at `path` replaced by `replacement`.
Term replace_at(const Term& t, std::span<const std::size_t> path, Term replacement);

/// Canonical text: `f(a,_,g(b))`. Singleton variables print as `_`,
/// shared ones as `_G1`, `_G2`, ... in first-occurrence order.
std::string to_string(const Term& t);

/// Parses canonical text. `_` is a fresh anonymous variable; any other
/// variable token (`_G1`, `X`) denotes the same variable throughout the text.
/// Throws ParseError.
Term parse_term(std::string_view text);

}  // namespace mdi

template <>
struct std::hash<mdi::VarId> {
  std::size_t operator()(mdi::VarId v) const noexcept {
    return std::hash<std::uint64_t>{}(v.value);
  }
};
