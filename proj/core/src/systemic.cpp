#include "mdi/systemic.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <stdexcept>

#include "mdi/unify.hpp"

namespace mdi {

const ChoiceSystem* Network::find_system(std::string_view label) const {
  for (const ChoiceSystem& s : systems) {
    if (s.label == label) return &s;
  }
  return nullptr;
}

namespace {

struct Token {
  enum Kind { kIdent, kArrow, kBackArrow, kBar, kAmp, kDot, kEnd } kind;
  std::string text;
  SourceSpan span;
};

class NetLexer {
 public:
  NetLexer(std::string_view text, std::string_view origin) : text_(text), origin_(origin) {}

  Token next() {
    skip();
    SourceSpan at{line_, static_cast<int>(pos_ - line_start_) + 1};
    if (pos_ >= text_.size()) return {Token::kEnd, "", at};
    char c = text_[pos_];
    if (std::islower(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        ++pos_;
      }
      return {Token::kIdent, std::string(text_.substr(start, pos_ - start)), at};
    }
    auto two = text_.substr(pos_, 2);
    if (two == "->") return pos_ += 2, Token{Token::kArrow, "->", at};
    if (two == "<-") return pos_ += 2, Token{Token::kBackArrow, "<-", at};
    ++pos_;
    switch (c) {
      case '|': return {Token::kBar, "|", at};
      case '&': return {Token::kAmp, "&", at};
      case '.': return {Token::kDot, ".", at};
      default:
        throw ParseError(std::string(origin_), at,
                         std::string("unexpected character '") + c + "'");
    }
  }

 private:
  void skip() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '%') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else if (c == '\n') {
        ++pos_;
        ++line_;
        line_start_ = pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  std::string_view text_;
  std::string_view origin_;
  std::size_t pos_ = 0;
  int line_ = 1;
  std::size_t line_start_ = 0;
};

class NetParser {
 public:
  NetParser(std::string_view text, std::string_view origin)
      : lex_(text, origin), origin_(origin) {
    advance();
  }

  Network parse() {
    Network net;
    std::map<std::string, EntryCondition> entries;
    std::map<std::string, SourceSpan> braced;
    SourceSpan root_span;
    while (tok_.kind != Token::kEnd) {
      Token kw = expect(Token::kIdent, "a statement keyword");
      if (kw.text == "root") {
        if (!net.root.empty()) fail(kw.span, "root declared twice");
        net.root = expect(Token::kIdent, "root name").text;
        root_span = kw.span;
      } else if (kw.text == "choice") {
        ChoiceSystem sys;
        sys.span = kw.span;
        sys.label = expect(Token::kIdent, "system label").text;
        if (net.find_system(sys.label)) fail(kw.span, "system '" + sys.label + "' declared twice");
        expect(Token::kArrow, "'->'");
        sys.alternatives = names(Token::kBar, "alternative");
        net.systems.push_back(std::move(sys));
      } else if (kw.text == "and") {
        Brace b;
        b.span = kw.span;
        b.parent = expect(Token::kIdent, "feature name").text;
        expect(Token::kArrow, "'->'");
        b.systems = names(Token::kAmp, "system label");
        for (const auto& s : b.systems) {
          if (entries.count(s) || !braced.try_emplace(s, kw.span).second) {
            fail(kw.span, "system '" + s + "' has more than one entry condition");
          }
        }
        net.braces.push_back(std::move(b));
      } else if (kw.text == "entry") {
        std::string target = expect(Token::kIdent, "system label").text;
        expect(Token::kBackArrow, "'<-'");
        EntryCondition cond;
        cond.span = kw.span;
        cond.features.push_back(expect(Token::kIdent, "feature name").text);
        if (tok_.kind == Token::kBar || tok_.kind == Token::kAmp) {
          Token::Kind sep = tok_.kind;
          cond.kind = sep == Token::kBar ? EntryKind::kDisjunctive : EntryKind::kConjunctive;
          while (tok_.kind == sep) {
            advance();
            cond.features.push_back(expect(Token::kIdent, "feature name").text);
          }
          if (tok_.kind == Token::kBar || tok_.kind == Token::kAmp) {
            fail(tok_.span, "cannot mix '|' and '&' in one entry condition");
          }
        }
        if (braced.count(target) || !entries.try_emplace(target, cond).second) {
          fail(kw.span, "system '" + target + "' has more than one entry condition");
        }
      } else {
        fail(kw.span, "unknown statement '" + kw.text + "'");
      }
      expect(Token::kDot, "'.'");
    }
    if (net.root.empty()) fail(tok_.span, "missing 'root' statement");

    for (const auto& [label, cond] : entries) {
      if (!net.find_system(label)) fail(cond.span, "entry condition for undeclared system '" + label + "'");
    }
    for (const Brace& b : net.braces) {
      for (const auto& s : b.systems) {
        if (!net.find_system(s)) fail(b.span, "brace names undeclared system '" + s + "'");
      }
    }
    for (ChoiceSystem& sys : net.systems) {
      if (auto it = entries.find(sys.label); it != entries.end()) {
        sys.entry = it->second;
      } else {
        sys.entry = EntryCondition{EntryKind::kSimple, {sys.label}, sys.span};
        for (const Brace& b : net.braces) {
          if (std::find(b.systems.begin(), b.systems.end(), sys.label) != b.systems.end()) {
            sys.entry.features = {b.parent};
            sys.entry.span = b.span;
          }
        }
      }
      if (sys.entry.features.size() == 1) sys.entry.kind = EntryKind::kSimple;
    }
    check_features(net, root_span);
    return net;
  }

 private:
  [[noreturn]] void fail(SourceSpan at, const std::string& what) const {
    throw ParseError(std::string(origin_), at, what);
  }

  void advance() { tok_ = lex_.next(); }

  Token expect(Token::Kind kind, const char* what) {
    if (tok_.kind != kind) {
      fail(tok_.span, std::string("expected ") + what +
                          (tok_.kind == Token::kEnd ? " before end of input"
                                                    : ", found '" + tok_.text + "'"));
    }
    Token t = tok_;
    advance();
    return t;
  }

  std::vector<std::string> names(Token::Kind sep, const char* what) {
    std::vector<std::string> out{expect(Token::kIdent, what).text};
    while (tok_.kind == sep) {
      advance();
      out.push_back(expect(Token::kIdent, what).text);
    }
    return out;
  }

  // Every feature used in an entry condition must exist, and every feature
  // must be reachable from the root.
  void check_features(const Network& net, SourceSpan root_span) const {
    std::set<std::string> known{net.root};
    for (const ChoiceSystem& s : net.systems) {
      for (const auto& a : s.alternatives) {
        if (a == net.root) fail(s.span, "root '" + a + "' used as an alternative");
        known.insert(a);
      }
    }
    for (const ChoiceSystem& s : net.systems) {
      for (const auto& f : s.entry.features) {
        if (!known.count(f)) {
          fail(s.entry.span, "system '" + s.label + "' is entered by unknown feature '" + f + "'");
        }
      }
    }
    std::set<std::string> reached{net.root};
    for (bool grew = true; grew;) {
      grew = false;
      for (const ChoiceSystem& s : net.systems) {
        const auto& fs = s.entry.features;
        auto in = [&](const std::string& f) { return reached.count(f) > 0; };
        bool entered = s.entry.kind == EntryKind::kDisjunctive
                           ? std::any_of(fs.begin(), fs.end(), in)
                           : std::all_of(fs.begin(), fs.end(), in);
        if (!entered) continue;
        for (const auto& a : s.alternatives) grew = reached.insert(a).second || grew;
      }
    }
    for (const ChoiceSystem& s : net.systems) {
      for (const auto& a : s.alternatives) {
        if (!reached.count(a)) fail(s.span, "feature '" + a + "' is unreachable from the root");
      }
    }
    (void)root_span;
  }

  NetLexer lex_;
  std::string_view origin_;
  Token tok_{};
};

// Features reachable from `f` (including `f`) through any kind of entry.
std::set<std::string> reach_from(const Network& n, const std::string& f) {
  std::set<std::string> out{f};
  for (bool grew = true; grew;) {
    grew = false;
    for (const ChoiceSystem& s : n.systems) {
      const auto& fs = s.entry.features;
      if (std::none_of(fs.begin(), fs.end(), [&](const std::string& x) { return out.count(x); })) {
        continue;
      }
      for (const auto& a : s.alternatives) grew = out.insert(a).second || grew;
    }
  }
  return out;
}

std::set<std::string> reach_of_system(const Network& n, const ChoiceSystem& s) {
  std::set<std::string> out;
  for (const auto& a : s.alternatives) {
    auto r = reach_from(n, a);
    out.insert(r.begin(), r.end());
  }
  return out;
}

std::string unique_name(std::string base, const std::set<std::string>& taken) {
  if (!taken.count(base)) return base;
  for (int i = 2;; ++i) {
    std::string candidate = base + "_" + std::to_string(i);
    if (!taken.count(candidate)) return candidate;
  }
}

}  // namespace

Network parse_network(std::string_view text, std::string_view origin) {
  return NetParser(text, origin).parse();
}

LiftedNetwork lift_disjunctions(const Network& n) {
  LiftedNetwork out{n, {}};
  Network& net = out.network;

  // Features and system labels are separate namespaces.
  std::set<std::string> taken{net.root};
  std::set<std::string> labels;
  for (const ChoiceSystem& s : net.systems) {
    labels.insert(s.label);
    taken.insert(s.alternatives.begin(), s.alternatives.end());
  }

  // Host system for each disjunctive target, in source order.
  std::map<std::string, std::vector<std::string>> targets_of_host;
  std::vector<std::string> hosts;
  for (const ChoiceSystem& s : net.systems) {
    if (s.entry.kind != EntryKind::kDisjunctive) continue;
    const ChoiceSystem* best = nullptr;
    std::size_t best_size = 0;
    for (const ChoiceSystem& c : net.systems) {
      if (c.label == s.label) continue;
      auto reach = reach_of_system(net, c);
      bool dominates = std::all_of(s.entry.features.begin(), s.entry.features.end(),
                                   [&](const std::string& f) { return reach.count(f) > 0; });
      if (dominates && (!best || reach.size() < best_size)) {
        best = &c;
        best_size = reach.size();
      }
    }
    if (!best) {
      throw Error("no choice system dominates the disjunctive entry of '" + s.label + "'");
    }
    if (best->entry.kind == EntryKind::kDisjunctive) {
      throw Error("disjunctive entry of '" + s.label + "' lifts into system '" + best->label +
                  "', which itself has a disjunctive entry");
    }
    if (!targets_of_host.count(best->label)) hosts.push_back(best->label);
    targets_of_host[best->label].push_back(s.label);
  }

  for (const std::string& host_label : hosts) {
    const ChoiceSystem host = *net.find_system(host_label);
    std::vector<ChoiceSystem> status, branches, moved;
    std::vector<std::string> status_labels;
    for (const std::string& target : targets_of_host[host_label]) {
      const ChoiceSystem* tsys = net.find_system(target);
      LiftedPair pair;
      pair.target = target;
      pair.host = host_label;
      pair.positive = unique_name(target, taken);
      taken.insert(pair.positive);
      const auto& disjuncts = tsys->entry.features;
      for (const auto& a : host.alternatives) {
        auto r = reach_from(net, a);
        bool hits = std::any_of(disjuncts.begin(), disjuncts.end(),
                                [&](const std::string& d) { return r.count(d) > 0; });
        (hits ? pair.positive_alternatives : pair.negative_alternatives).push_back(a);
      }
      if (!pair.negative_alternatives.empty()) {
        pair.negative = unique_name("not_" + target, taken);
        taken.insert(pair.negative);
      }

      ChoiceSystem st;
      st.label = unique_name(target + "_status", labels);
      labels.insert(st.label);
      st.alternatives = {pair.positive};
      if (!pair.negative.empty()) st.alternatives.push_back(pair.negative);
      st.entry = host.entry;
      st.span = host.span;
      status_labels.push_back(st.label);
      status.push_back(std::move(st));

      ChoiceSystem pos;
      pos.label = unique_name(target + "_pos", labels);
      labels.insert(pos.label);
      pos.alternatives = pair.positive_alternatives;
      pos.entry = EntryCondition{EntryKind::kSimple, {pair.positive}, tsys->entry.span};
      pos.span = tsys->span;
      branches.push_back(std::move(pos));

      ChoiceSystem own = *tsys;
      own.entry = EntryCondition{EntryKind::kSimple, {pair.positive}, tsys->entry.span};
      branches.push_back(std::move(own));
      moved.push_back(*tsys);

      if (!pair.negative.empty()) {
        ChoiceSystem neg;
        neg.label = unique_name(target + "_neg", labels);
        labels.insert(neg.label);
        neg.alternatives = pair.negative_alternatives;
        neg.entry = EntryCondition{EntryKind::kSimple, {pair.negative}, tsys->entry.span};
        neg.span = tsys->span;
        branches.push_back(std::move(neg));
      }
      out.pairs.push_back(std::move(pair));
    }

    // The host's alternatives now hang off the new pairs: replace the host
    // by the status systems, followed by the rehomed branches.
    std::vector<ChoiceSystem> rebuilt;
    for (ChoiceSystem& s : net.systems) {
      if (s.label == host_label) {
        rebuilt.insert(rebuilt.end(), status.begin(), status.end());
        rebuilt.insert(rebuilt.end(), branches.begin(), branches.end());
        continue;
      }
      bool is_moved = std::any_of(moved.begin(), moved.end(),
                                  [&](const ChoiceSystem& m) { return m.label == s.label; });
      if (!is_moved) rebuilt.push_back(std::move(s));
    }
    net.systems = std::move(rebuilt);
    for (Brace& b : net.braces) {
      auto it = std::find(b.systems.begin(), b.systems.end(), host_label);
      if (it == b.systems.end()) continue;
      it = b.systems.erase(it);
      b.systems.insert(it, status_labels.begin(), status_labels.end());
    }
    for (const ChoiceSystem& m : moved) {
      for (Brace& b : net.braces) std::erase(b.systems, m.label);
    }
  }
  return out;
}

DeclarationSet translate(const Network& n) {
  DeclarationSet out;
  std::set<std::string> emitted;
  auto add = [&out](const std::string& parent, std::vector<std::vector<std::string>> dims,
                    SourceSpan span) {
    out.subtypes.push_back(SubtypeDecl{parent, std::move(dims), span});
  };
  for (const ChoiceSystem& s : n.systems) {
    if (emitted.count(s.label)) continue;
    if (s.entry.kind == EntryKind::kDisjunctive) {
      throw Error("system '" + s.label + "' still has a disjunctive entry condition");
    }
    const Brace* brace = nullptr;
    for (const Brace& b : n.braces) {
      if (std::find(b.systems.begin(), b.systems.end(), s.label) != b.systems.end()) brace = &b;
    }
    if (brace) {
      std::vector<std::vector<std::string>> dims;
      for (const auto& label : brace->systems) {
        const ChoiceSystem* sub = n.find_system(label);
        dims.push_back(sub->alternatives);
        emitted.insert(label);
      }
      add(brace->parent, std::move(dims), brace->span);
      continue;
    }
    emitted.insert(s.label);
    for (const auto& f : s.entry.features) add(f, {s.alternatives}, s.span);
  }
  return out;
}

Hierarchy network_hierarchy(const Network& n) {
  return Hierarchy::build(translate(lift_disjunctions(n)));
}

namespace {

class PossibilityCounter {
 public:
  explicit PossibilityCounter(const Hierarchy& h) : h_(h) {
    const auto dims = h.dimensions();
    std::map<std::vector<TypeId>, std::vector<TypeId>> parents_by_members;
    for (const Dimension& d : dims) {
      auto key = d.members;
      std::sort(key.begin(), key.end());
      parents_by_members[key].push_back(d.parent);
    }
    for (const Dimension& d : dims) {
      auto key = d.members;
      std::sort(key.begin(), key.end());
      entry_.push_back(parents_by_members[key]);
    }
  }

  std::uint64_t count() {
    std::vector<bool> in(h_.size(), false);
    in[h_.root().index] = true;
    return count(in);
  }

 private:
  std::uint64_t count(const std::vector<bool>& in) {
    const auto dims = h_.dimensions();
    for (std::size_t d = 0; d < dims.size(); ++d) {
      if (!in[dims[d].parent.index]) continue;
      if (!std::all_of(entry_[d].begin(), entry_[d].end(),
                       [&](TypeId p) { return in[p.index]; })) {
        continue;
      }
      const auto& members = dims[d].members;
      if (std::any_of(members.begin(), members.end(), [&](TypeId m) { return in[m.index]; })) {
        continue;
      }
      std::uint64_t total = 0;
      for (TypeId m : members) {
        std::vector<bool> next = in;
        for (TypeId a : h_.up_closure(m)) next[a.index] = true;
        if (consistent_set(next)) total += count(next);
      }
      return total;
    }
    return 1;
  }

  bool consistent_set(const std::vector<bool>& in) const {
    for (const Dimension& d : h_.dimensions()) {
      int chosen = 0;
      for (TypeId m : d.members) chosen += in[m.index] ? 1 : 0;
      if (chosen > 1) return false;
    }
    return true;
  }

  const Hierarchy& h_;
  std::vector<std::vector<TypeId>> entry_;  // parents that must all be present
};

}  // namespace

std::uint64_t count_possibilities(const Hierarchy& h) {
  return PossibilityCounter(h).count();
}

FiniteDomain bruteforce_encode(std::size_t n) {
  if (n == 0) throw std::invalid_argument("finite domain needs at least one possibility");
  std::vector<Term> args;
  args.reserve(n + 1);
  args.push_back(Term::atom("0"));
  for (std::size_t i = 1; i < n; ++i) args.push_back(Term::fresh_var());
  args.push_back(Term::atom("1"));
  return FiniteDomain(n, Term::compound("dom", std::move(args)));
}

std::optional<FiniteDomain> FiniteDomain::exclude(std::size_t k) const {
  if (k < 1 || k > n_) {
    throw std::out_of_range("possibility " + std::to_string(k) + " not in [1, " +
                            std::to_string(n_) + "]");
  }
  auto s = unify(term_.arg(k - 1), term_.arg(k));
  if (!s) return std::nullopt;
  FiniteDomain out = *this;
  out.term_ = s->apply(term_);
  return out;
}

bool FiniteDomain::allows(std::size_t k) const {
  if (k < 1 || k > n_) {
    throw std::out_of_range("possibility " + std::to_string(k) + " not in [1, " +
                            std::to_string(n_) + "]");
  }
  return !(term_.arg(k - 1) == term_.arg(k));
}

}  // namespace mdi
