#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mdi/declarations.hpp"
#include "mdi/error.hpp"
#include "mdi/hierarchy.hpp"
#include "mdi/term.hpp"

namespace mdi {

enum class EntryKind { kSimple, kConjunctive, kDisjunctive };

/// Features whose presence enters a system: one feature, all of several, or
/// any of several.
struct EntryCondition {
  EntryKind kind = EntryKind::kSimple;
  std::vector<std::string> features;
  SourceSpan span;
};

/// A choice system: exactly one alternative is selected once it is entered.
struct ChoiceSystem {
  std::string label;
  std::vector<std::string> alternatives;
  EntryCondition entry;
  SourceSpan span;
};

/// `and P -> S1 & S2`: P enters all listed systems at once.
struct Brace {
  std::string parent;
  std::vector<std::string> systems;
  SourceSpan span;
};

/// Systemic classification network. Systems keep source order.
struct Network {
  std::string root;
  std::vector<ChoiceSystem> systems;
  std::vector<Brace> braces;

  const ChoiceSystem* find_system(std::string_view label) const;
};

/// Statements, each ending in `.` (`%` comments as in declaration files):
///
///   root N.
///   choice L -> A | B | ... .     system L with alternatives A, B, ...
///   and P -> S1 & S2 ... .        feature P enters systems S1, S2, ...
///   entry L <- X.                 simple entry
///   entry L <- X & Y ... .        conjunctive entry
///   entry L <- X | Y ... .        disjunctive entry
///
/// A system with neither an `entry` nor an `and` statement is entered by the
/// feature named like its label (normally the root). Throws ParseError on
/// syntax errors, duplicate entry conditions and unreachable features.
Network parse_network(std::string_view text, std::string_view origin = "<input>");

/// One disjunctive entry condition rewritten into a pair of new types.
struct LiftedPair {
  std::string target;    // system that had the disjunctive entry
  std::string positive;  // new type standing for the system being entered
  std::string negative;  // its complement; empty if every alternative qualifies
  std::string host;      // choice system the pair was lifted to
  std::vector<std::string> positive_alternatives;
  std::vector<std::string> negative_alternatives;
};

struct LiftedNetwork {
  Network network;
  std::vector<LiftedPair> pairs;
};

/// Replaces every disjunctive entry condition on a system X by a new
/// dimension [X, not_X] at the top of the nearest choice system that
/// dominates all disjuncts. That system's alternatives are rehomed under X
/// when they reach a disjunct and under not_X otherwise; X's own choices
/// then hang off X. A one-feature disjunction is already simple.
LiftedNetwork lift_disjunctions(const Network& n);

/// Multi-dimensional declarations classifying the same objects as `n`.
/// Throws Error if a disjunctive entry condition remains.
DeclarationSet translate(const Network& n);
inline DeclarationSet translate(const LiftedNetwork& n) { return translate(n.network); }

/// Lift, translate and build in one step.
Hierarchy network_hierarchy(const Network& n);

/// Number of complete instantiations of `h`: up-closed sets of types that
/// contain the root and select exactly one member of every entered
/// dimension. A dimension is entered when its parent is selected; a member
/// list declared identically under several parents (a conjunctive entry) is
/// entered only when all of those parents are selected.
std::uint64_t count_possibilities(const Hierarchy& h);

/// Finite-domain encoding of n possibilities as a term with n+1 arguments,
/// the first the atom `0` and the last the atom `1`. Excluding possibility k
/// unifies arguments k and k+1 (1-based); excluding all of them forces
/// `0 = 1` and fails.
class FiniteDomain {
 public:
  std::size_t possibilities() const { return n_; }
  std::size_t arity() const { return term_.arity(); }
  const Term& term() const { return term_; }
  /// Still satisfiable with possibility k (1-based) excluded? Throws
  /// std::out_of_range if k is not in [1, n].
  std::optional<FiniteDomain> exclude(std::size_t k) const;
  /// True iff possibility k has not been excluded.
  bool allows(std::size_t k) const;

 private:
  friend FiniteDomain bruteforce_encode(std::size_t n);
  FiniteDomain(std::size_t n, Term t) : n_(n), term_(std::move(t)) {}
  std::size_t n_;
  Term term_;
};

/// Throws std::invalid_argument for n == 0.
FiniteDomain bruteforce_encode(std::size_t n);

}  // namespace mdi
