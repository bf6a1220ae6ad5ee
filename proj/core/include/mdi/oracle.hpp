#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mdi/encoder.hpp"
#include "mdi/hierarchy.hpp"
#include "mdi/systemic.hpp"

namespace mdi::oracle {

// Brute-force semantics used to certify the algebra and the encoding. None
// of this reuses the closure, consistency or unification code it checks.

/// Literal reading of the subset/disjointness axioms: collect every ancestor
/// of every member, then reject if some dimension holds two of them.
bool consistent_oracle(const Hierarchy& h, std::span<const TypeId> types);

/// Every complete instantiation of `h` (see count_possibilities), as
/// normalized conjunctions, in a deterministic order. Throws Error when
/// more than `limit` are found.
std::vector<TypeConj> enumerate_complete(const Hierarchy& h,
                                         std::size_t limit = 1'000'000);

/// Legal classifications of a network computed directly on the network:
/// start at the root, pick one alternative of every entered system, repeat.
/// Each result is a sorted feature set. Throws Error beyond `limit`.
std::vector<std::vector<std::string>> enumerate_network(const Network& n,
                                                        std::size_t limit = 1'000'000);

/// Classifications per alternative of the first system entered by the root.
struct BreakdownEntry {
  std::string alternative;
  std::size_t count = 0;
};
std::vector<BreakdownEntry> breakdown(
    const Network& n, const std::vector<std::vector<std::string>>& classifications);

struct Mismatch {
  TypeConj a;
  TypeConj b;
  bool oracle_consistent = false;
  bool unifier_succeeded = false;
  std::string detail;
};

struct RoundTripFailure {
  std::vector<TypeId> input;
  std::string expected;
  std::string decoded;
};

struct FaithfulnessReport {
  std::size_t pairs_checked = 0;
  std::size_t roundtrips_checked = 0;
  std::vector<Mismatch> mismatches;
  std::vector<RoundTripFailure> roundtrip_failures;

  bool faithful() const { return mismatches.empty() && roundtrip_failures.empty(); }
};

struct FaithfulnessOptions {
  /// Also check every ordered pair of complete instantiations.
  bool complete_pairs = false;
  std::size_t enumeration_limit = 1'000'000;
  /// Worker threads for the pairwise checks; output order does not depend
  /// on it.
  unsigned threads = 1;
};

/// For every ordered pair of declared types, compares term unification of
/// their encodings (with the library unifier and with an independent naive
/// one) against consistent_oracle, and checks decode(encode(c)) against the
/// oracle's normalization for every consistent pair.
FaithfulnessReport check_faithfulness(const Hierarchy& h, const EncodingTable& tab,
                                      const FaithfulnessOptions& options = {});

/// Human-readable summary.
std::string format_text(const Hierarchy& h, const FaithfulnessReport& r);
/// One line per finding: `mismatch <a> <b> oracle=<c|i> unifier=<ok|fail>`,
/// `roundtrip <input> expected=<..> decoded=<..>`, then `summary ...`.
std::string format_lines(const Hierarchy& h, const FaithfulnessReport& r);

}  // namespace mdi::oracle
