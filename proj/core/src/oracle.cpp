#include "mdi/oracle.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <thread>

#include "mdi/unify.hpp"

namespace mdi::oracle {

namespace {

// Ancestor sets recomputed from the raw dimension records by fixed-point
// iteration.
class Closure {
 public:
  explicit Closure(const Hierarchy& h) : up_(h.size()) {
    for (std::uint32_t t = 0; t < h.size(); ++t) up_[t].insert(t);
    for (bool grew = true; grew;) {
      grew = false;
      for (const Dimension& d : h.dimensions()) {
        for (TypeId m : d.members) {
          for (std::uint32_t a : std::set<std::uint32_t>(up_[d.parent.index])) {
            grew = up_[m.index].insert(a).second || grew;
          }
        }
      }
    }
  }

  const std::set<std::uint32_t>& up(TypeId t) const { return up_[t.index]; }

  std::set<std::uint32_t> up_all(std::span<const TypeId> ts) const {
    std::set<std::uint32_t> out;
    for (TypeId t : ts) out.insert(up_[t.index].begin(), up_[t.index].end());
    return out;
  }

  // Members of `ts` that are not a proper ancestor of another member.
  std::vector<TypeId> most_specific(std::vector<TypeId> ts) const {
    std::sort(ts.begin(), ts.end());
    ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
    std::vector<TypeId> out;
    for (TypeId a : ts) {
      bool below = false;
      for (TypeId b : ts) below = below || (a != b && up_[b.index].count(a.index));
      if (!below) out.push_back(a);
    }
    return out;
  }

 private:
  std::vector<std::set<std::uint32_t>> up_;
};

bool disjointness_violated(const Hierarchy& h, const std::set<std::uint32_t>& in) {
  for (const Dimension& d : h.dimensions()) {
    for (std::size_t i = 0; i < d.members.size(); ++i) {
      for (std::size_t j = i + 1; j < d.members.size(); ++j) {
        if (in.count(d.members[i].index) && in.count(d.members[j].index)) return true;
      }
    }
  }
  return false;
}

// Textbook unification by eager substitution: every new binding is applied
// to all pending equations and earlier bindings.
class NaiveUnifier {
 public:
  bool unify(const Term& a, const Term& b) {
    std::vector<std::pair<Term, Term>> todo{{a, b}};
    while (!todo.empty()) {
      auto [x, y] = todo.back();
      todo.pop_back();
      if (x.is_var() && y.is_var() && x.var_id() == y.var_id()) continue;
      if (!x.is_var() && y.is_var()) std::swap(x, y);
      if (x.is_var()) {
        if (occurs_in(x.var_id(), y)) return false;
        for (auto& [l, r] : todo) {
          l = replace(l, x.var_id(), y);
          r = replace(r, x.var_id(), y);
        }
        for (auto& [v, t] : bound_) t = replace(t, x.var_id(), y);
        bound_.emplace_back(x.var_id(), y);
        continue;
      }
      if (x.functor() != y.functor() || x.arity() != y.arity()) return false;
      for (std::size_t i = 0; i < x.arity(); ++i) todo.emplace_back(x.arg(i), y.arg(i));
    }
    return true;
  }

 private:
  static Term replace(const Term& t, VarId v, const Term& with) {
    if (t.is_var()) return t.var_id() == v ? with : t;
    if (t.arity() == 0) return t;
    std::vector<Term> args;
    for (const Term& a : t.args()) args.push_back(replace(a, v, with));
    return Term::compound(t.functor(), std::move(args));
  }

  std::vector<std::pair<VarId, Term>> bound_;
};

bool naive_unifiable(const Term& a, const Term& b) { return NaiveUnifier().unify(a, b); }

std::string names(const Hierarchy& h, std::span<const TypeId> ts, const char* sep) {
  std::string out;
  for (TypeId t : ts) {
    if (!out.empty()) out += sep;
    out += h.name(t);
  }
  return out.empty() ? h.name(h.root()) : out;
}

}  // namespace

bool consistent_oracle(const Hierarchy& h, std::span<const TypeId> types) {
  for (TypeId t : types) {
    if (t.index >= h.size()) throw UnknownTypeError("#" + std::to_string(t.index));
  }
  return !disjointness_violated(h, Closure(h).up_all(types));
}

namespace {

class CompleteEnumerator {
 public:
  CompleteEnumerator(const Hierarchy& h, std::size_t limit)
      : h_(h), closure_(h), limit_(limit), status_(h.size(), kUnknown) {
    const auto dims = h.dimensions();
    // Depth of each type: longest parent chain from the root.
    std::vector<std::size_t> depth(h.size(), 0);
    for (bool grew = true; grew;) {
      grew = false;
      for (const Dimension& d : dims) {
        for (TypeId m : d.members) {
          if (depth[m.index] < depth[d.parent.index] + 1) {
            depth[m.index] = depth[d.parent.index] + 1;
            grew = true;
          }
        }
      }
    }
    std::map<std::set<std::uint32_t>, std::set<std::uint32_t>> parents_of_list;
    for (const Dimension& d : dims) {
      std::set<std::uint32_t> key;
      for (TypeId m : d.members) key.insert(m.index);
      parents_of_list[key].insert(d.parent.index);
    }
    std::vector<std::pair<std::size_t, std::size_t>> keyed;  // (deepest entry parent, dim)
    for (std::size_t i = 0; i < dims.size(); ++i) {
      std::set<std::uint32_t> key;
      for (TypeId m : dims[i].members) key.insert(m.index);
      const auto& group = parents_of_list[key];
      groups_.emplace_back(group.begin(), group.end());
      std::size_t deepest = 0;
      for (std::uint32_t p : group) deepest = std::max(deepest, depth[p]);
      keyed.emplace_back(deepest, i);
    }
    std::stable_sort(keyed.begin(), keyed.end());
    for (const auto& [k, d] : keyed) order_.push_back(d);
  }

  std::vector<TypeConj> run() {
    status_[h_.root().index] = kIn;
    step(0);
    return std::move(results_);
  }

 private:
  enum : signed char { kUnknown = -1, kOut = 0, kIn = 1 };

  void step(std::size_t k) {
    if (k == order_.size()) {
      record();
      return;
    }
    const Dimension& d = h_.dimension(order_[k]);
    bool entered = status_[d.parent.index] == kIn;
    for (std::uint32_t p : groups_[order_[k]]) entered = entered && status_[p] == kIn;

    std::vector<TypeId> already;
    for (TypeId m : d.members) {
      if (status_[m.index] == kIn) already.push_back(m);
    }
    if (!entered || !already.empty()) {
      if (!entered && !already.empty()) return;
      if (already.size() > 1) return;
      auto saved = status_;
      for (TypeId m : d.members) {
        if (status_[m.index] == kUnknown) status_[m.index] = kOut;
      }
      step(k + 1);
      status_ = std::move(saved);
      return;
    }
    for (TypeId pick : d.members) {
      if (status_[pick.index] != kUnknown) continue;
      auto saved = status_;
      for (TypeId m : d.members) {
        if (status_[m.index] == kUnknown) status_[m.index] = m == pick ? kIn : kOut;
      }
      step(k + 1);
      status_ = std::move(saved);
    }
  }

  void record() {
    std::vector<TypeId> in;
    for (std::uint32_t t = 0; t < status_.size(); ++t) {
      if (status_[t] == kIn) in.push_back(TypeId{t});
    }
    if (results_.size() >= limit_) {
      throw Error("more than " + std::to_string(limit_) + " complete instantiations");
    }
    results_.push_back(TypeConj::normalize(h_, closure_.most_specific(std::move(in))));
  }

  const Hierarchy& h_;
  Closure closure_;
  std::size_t limit_;
  std::vector<signed char> status_;
  std::vector<std::vector<std::uint32_t>> groups_;
  std::vector<std::size_t> order_;
  std::vector<TypeConj> results_;
};

}  // namespace

std::vector<TypeConj> enumerate_complete(const Hierarchy& h, std::size_t limit) {
  return CompleteEnumerator(h, limit).run();
}

std::vector<std::vector<std::string>> enumerate_network(const Network& n,
                                                        std::size_t limit) {
  std::set<std::vector<std::string>> found;
  std::vector<int> choice(n.systems.size(), -1);  // index of the chosen alternative
  auto entered = [&](const ChoiceSystem& s, const std::set<std::string>& have) {
    auto in = [&](const std::string& f) { return have.count(f) > 0; };
    const auto& fs = s.entry.features;
    return s.entry.kind == EntryKind::kDisjunctive ? std::any_of(fs.begin(), fs.end(), in)
                                                   : std::all_of(fs.begin(), fs.end(), in);
  };
  auto search = [&](auto& self, std::set<std::string> have) -> void {
    for (std::size_t i = 0; i < n.systems.size(); ++i) {
      if (choice[i] >= 0 || !entered(n.systems[i], have)) continue;
      for (std::size_t a = 0; a < n.systems[i].alternatives.size(); ++a) {
        choice[i] = static_cast<int>(a);
        auto next = have;
        next.insert(n.systems[i].alternatives[a]);
        self(self, std::move(next));
      }
      choice[i] = -1;
      return;
    }
    if (found.size() >= limit && !found.count({have.begin(), have.end()})) {
      throw Error("more than " + std::to_string(limit) + " network classifications");
    }
    found.insert({have.begin(), have.end()});
  };
  search(search, std::set<std::string>{n.root});
  return {found.begin(), found.end()};
}

std::vector<BreakdownEntry> breakdown(
    const Network& n, const std::vector<std::vector<std::string>>& classifications) {
  std::vector<BreakdownEntry> out;
  for (const ChoiceSystem& s : n.systems) {
    if (s.entry.kind != EntryKind::kSimple || s.entry.features.front() != n.root) continue;
    for (const auto& a : s.alternatives) {
      std::size_t c = 0;
      for (const auto& cls : classifications) {
        c += std::binary_search(cls.begin(), cls.end(), a) ? 1 : 0;
      }
      out.push_back({a, c});
    }
    break;
  }
  return out;
}

namespace {

struct PairFindings {
  std::size_t pairs = 0;
  std::size_t roundtrips = 0;
  std::vector<Mismatch> mismatches;
  std::vector<RoundTripFailure> roundtrips_failed;
};

void check_pair(const Hierarchy& h, const EncodingTable& tab, const Closure& closure,
                const TypeConj& a, const TypeConj& b, PairFindings& out) {
  ++out.pairs;
  std::vector<TypeId> both = a.members();
  both.insert(both.end(), b.members().begin(), b.members().end());
  if (both.empty()) both.push_back(h.root());
  const bool oracle = !disjointness_violated(h, closure.up_all(both));

  auto term_of = [&](const TypeConj& c) {
    Term acc = tab.instantiate(h.root());
    for (TypeId t : c.members()) {
      auto s = unify(acc, tab.instantiate(t));
      acc = s ? s->apply(acc) : tab.instantiate(t);
    }
    return acc;
  };
  const Term ta = a.size() == 1 ? tab.instantiate(a.members()[0]) : term_of(a);
  const Term tb = b.size() == 1 ? tab.instantiate(b.members()[0]) : term_of(b);
  const auto mgu = unify(ta, tb);
  const bool library = mgu.has_value();
  const bool naive = naive_unifiable(ta, tb);
  if (library != oracle || naive != oracle) {
    std::string detail;
    if (library != naive) detail = "library and naive unifiers disagree";
    out.mismatches.push_back(Mismatch{a, b, oracle, library, detail});
  }
  if (!oracle) return;

  ++out.roundtrips;
  std::vector<TypeId> expected = closure.most_specific(both);
  std::erase(expected, h.root());
  std::string decoded;
  bool ok = false;
  if (mgu) {
    try {
      TypeConj got = decode(tab, mgu->apply(ta));
      ok = got.members() == expected;
      decoded = names(h, got.members(), "&");
    } catch (const Error& e) {
      decoded = std::string("error: ") + e.what();
    }
  } else {
    decoded = "unification failed";
  }
  if (!ok) {
    out.roundtrips_failed.push_back(
        RoundTripFailure{both, names(h, expected, "&"), decoded});
  }
}

}  // namespace

FaithfulnessReport check_faithfulness(const Hierarchy& h, const EncodingTable& tab,
                                      const FaithfulnessOptions& options) {
  const Closure closure(h);
  std::vector<TypeConj> items;
  for (TypeId t : h.types()) items.push_back(TypeConj::of(h, t));
  if (options.complete_pairs) {
    auto complete = enumerate_complete(h, options.enumeration_limit);
    items.insert(items.end(), complete.begin(), complete.end());
  }
  const std::size_t n = items.size();
  const unsigned workers = std::max(1u, std::min<unsigned>(options.threads, n));
  std::vector<PairFindings> parts(workers);
  auto work = [&](unsigned w) {
    for (std::size_t i = w; i < n; i += workers) {
      for (std::size_t j = 0; j < n; ++j) {
        // Type-level pairs are always checked; complete instantiations
        // only against each other.
        if ((i < h.size()) != (j < h.size())) continue;
        check_pair(h, tab, closure, items[i], items[j], parts[w]);
      }
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
  }

  // Merge back into row-major order.
  FaithfulnessReport report;
  for (const auto& p : parts) {
    report.pairs_checked += p.pairs;
    report.roundtrips_checked += p.roundtrips;
    report.mismatches.insert(report.mismatches.end(), p.mismatches.begin(), p.mismatches.end());
    report.roundtrip_failures.insert(report.roundtrip_failures.end(),
                                     p.roundtrips_failed.begin(), p.roundtrips_failed.end());
  }
  auto key = [](const TypeConj& a, const TypeConj& b) { return std::pair{a, b}; };
  std::stable_sort(report.mismatches.begin(), report.mismatches.end(),
                   [&](const Mismatch& x, const Mismatch& y) {
                     return key(x.a, x.b) < key(y.a, y.b);
                   });
  std::stable_sort(report.roundtrip_failures.begin(), report.roundtrip_failures.end(),
                   [](const RoundTripFailure& x, const RoundTripFailure& y) {
                     return x.input < y.input;
                   });
  return report;
}

std::string format_text(const Hierarchy& h, const FaithfulnessReport& r) {
  std::string out;
  out += "pairs checked:      " + std::to_string(r.pairs_checked) + "\n";
  out += "round trips:        " + std::to_string(r.roundtrips_checked) + "\n";
  out += "mismatches:         " + std::to_string(r.mismatches.size()) + "\n";
  out += "round-trip failures: " + std::to_string(r.roundtrip_failures.size()) + "\n";
  for (const Mismatch& m : r.mismatches) {
    out += "  " + to_string(h, m.a) + "  vs  " + to_string(h, m.b) + ": oracle says " +
           (m.oracle_consistent ? "consistent" : "inconsistent") + ", unification " +
           (m.unifier_succeeded ? "succeeds" : "fails");
    if (!m.detail.empty()) out += " (" + m.detail + ")";
    out += "\n";
  }
  for (const RoundTripFailure& f : r.roundtrip_failures) {
    out += "  round trip of " + names(h, f.input, " & ") + ": expected " + f.expected +
           ", decoded " + f.decoded + "\n";
  }
  out += r.faithful() ? "encoding is faithful\n" : "encoding is NOT faithful\n";
  return out;
}

std::string format_lines(const Hierarchy& h, const FaithfulnessReport& r) {
  std::string out;
  for (const Mismatch& m : r.mismatches) {
    out += "mismatch " + names(h, m.a.members(), "&") + " " + names(h, m.b.members(), "&") +
           " oracle=" + (m.oracle_consistent ? "consistent" : "inconsistent") +
           " unifier=" + (m.unifier_succeeded ? "ok" : "fail") + "\n";
  }
  for (const RoundTripFailure& f : r.roundtrip_failures) {
    out += "roundtrip " + names(h, f.input, "&") + " expected=" + f.expected +
           " decoded=" + f.decoded + "\n";
  }
  out += "summary pairs=" + std::to_string(r.pairs_checked) +
         " mismatches=" + std::to_string(r.mismatches.size()) +
         " roundtrip_failures=" + std::to_string(r.roundtrip_failures.size()) + "\n";
  return out;
}

}  // namespace mdi::oracle
