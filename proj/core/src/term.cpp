#include "mdi/term.hpp"

#include <atomic>
#include <cctype>
#include <unordered_map>
#include <variant>

#include "mdi/error.hpp"

namespace mdi {

struct Term::Node {
  struct Compound {
    std::string functor;
    std::vector<Term> args;
  };
  std::variant<VarId, Compound> value;
};

namespace {

std::atomic<std::uint64_t> next_var_id{1};

}  // namespace

Term Term::fresh_var() {
  return var(VarId{next_var_id.fetch_add(1, std::memory_order_relaxed)});
}

Term Term::var(VarId id) {
  return Term(std::make_shared<const Node>(Node{id}));
}

Term Term::atom(std::string name) { return compound(std::move(name), {}); }

Term Term::compound(std::string functor, std::vector<Term> args) {
  return Term(std::make_shared<const Node>(
      Node{Node::Compound{std::move(functor), std::move(args)}}));
}

bool Term::is_var() const { return std::holds_alternative<VarId>(node_->value); }

VarId Term::var_id() const { return std::get<VarId>(node_->value); }

const std::string& Term::functor() const {
  return std::get<Node::Compound>(node_->value).functor;
}

std::span<const Term> Term::args() const {
  if (const auto* c = std::get_if<Node::Compound>(&node_->value)) return c->args;
  return {};
}

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  if (a.is_var() || b.is_var()) {
    return a.is_var() && b.is_var() && a.var_id() == b.var_id();
  }
  if (a.functor() != b.functor() || a.arity() != b.arity()) return false;
  for (std::size_t i = 0; i < a.arity(); ++i) {
    if (!(a.arg(i) == b.arg(i))) return false;
  }
  return true;
}

std::size_t symbol_count(const Term& t) {
  if (t.is_var()) return 0;
  std::size_t n = 1;
  for (const Term& a : t.args()) n += symbol_count(a);
  return n;
}

namespace {

void collect_vars(const Term& t, std::vector<VarId>& out,
                  std::unordered_map<VarId, std::size_t>& seen) {
  if (t.is_var()) {
    if (seen.emplace(t.var_id(), out.size()).second) out.push_back(t.var_id());
    return;
  }
  for (const Term& a : t.args()) collect_vars(a, out, seen);
}

Term rename_with(const Term& t, std::unordered_map<VarId, Term>& renaming) {
  if (t.is_var()) {
    auto [it, inserted] = renaming.try_emplace(t.var_id(), t);
    if (inserted) it->second = Term::fresh_var();
    return it->second;
  }
  if (t.arity() == 0) return t;
  std::vector<Term> args;
  args.reserve(t.arity());
  for (const Term& a : t.args()) args.push_back(rename_with(a, renaming));
  return Term::compound(t.functor(), std::move(args));
}

}  // namespace

std::vector<VarId> variables(const Term& t) {
  std::vector<VarId> out;
  std::unordered_map<VarId, std::size_t> seen;
  collect_vars(t, out, seen);
  return out;
}

bool occurs_in(VarId v, const Term& t) {
  if (t.is_var()) return t.var_id() == v;
  for (const Term& a : t.args()) {
    if (occurs_in(v, a)) return true;
  }
  return false;
}

Term rename_apart(const Term& t) {
  std::unordered_map<VarId, Term> renaming;
  return rename_with(t, renaming);
}

const Term& subterm(const Term& t, std::span<const std::size_t> path) {
  const Term* cur = &t;
  for (std::size_t i : path) {
    if (cur->is_var() || i >= cur->arity()) {
      throw Error("term path does not exist in " + to_string(t));
    }
    cur = &cur->arg(i);
  }
  return *cur;
}

Term replace_at(const Term& t, std::span<const std::size_t> path,
                Term replacement) {
  if (path.empty()) return replacement;
  if (t.is_var() || path.front() >= t.arity()) {
    throw Error("term path does not exist in " + to_string(t));
  }
  std::vector<Term> args(t.args().begin(), t.args().end());
  args[path.front()] =
      replace_at(args[path.front()], path.subspan(1), std::move(replacement));
  return Term::compound(t.functor(), std::move(args));
}

namespace {

void count_vars(const Term& t, std::unordered_map<VarId, int>& counts) {
  if (t.is_var()) {
    ++counts[t.var_id()];
    return;
  }
  for (const Term& a : t.args()) count_vars(a, counts);
}

void print(const Term& t, const std::unordered_map<VarId, int>& counts,
           std::unordered_map<VarId, int>& names, std::string& out) {
  if (t.is_var()) {
    if (counts.at(t.var_id()) == 1) {
      out += '_';
      return;
    }
    auto [it, inserted] =
        names.try_emplace(t.var_id(), static_cast<int>(names.size()) + 1);
    out += "_G" + std::to_string(it->second);
    return;
  }
  out += t.functor();
  if (t.arity() == 0) return;
  out += '(';
  for (std::size_t i = 0; i < t.arity(); ++i) {
    if (i) out += ',';
    print(t.arg(i), counts, names, out);
  }
  out += ')';
}

class TermParser {
 public:
  explicit TermParser(std::string_view text) : text_(text) {}

  Term parse() {
    Term t = term();
    skip_space();
    if (pos_ != text_.size()) fail("trailing input");
    return t;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("<term>", SourceSpan{1, static_cast<int>(pos_) + 1}, what);
  }

  void skip_space() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  static bool word_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  }

  std::string_view word() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && word_char(text_[pos_])) ++pos_;
    return text_.substr(start, pos_ - start);
  }

  Term term() {
    skip_space();
    if (pos_ >= text_.size()) fail("expected a term");
    char c = text_[pos_];
    if (c == '_' || std::isupper(static_cast<unsigned char>(c))) {
      std::string_view name = word();
      if (name == "_") return Term::fresh_var();
      auto [it, inserted] = named_.try_emplace(std::string(name), Term::fresh_var());
      return it->second;
    }
    if (!std::isalnum(static_cast<unsigned char>(c))) {
      fail(std::string("unexpected character '") + c + "'");
    }
    std::string functor(word());
    skip_space();
    if (pos_ >= text_.size() || text_[pos_] != '(') return Term::atom(functor);
    ++pos_;
    std::vector<Term> args;
    for (;;) {
      args.push_back(term());
      skip_space();
      if (pos_ < text_.size() && text_[pos_] == ',') {
        ++pos_;
        continue;
      }
      if (pos_ < text_.size() && text_[pos_] == ')') {
        ++pos_;
        break;
      }
      fail("expected ',' or ')'");
    }
    return Term::compound(std::move(functor), std::move(args));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::unordered_map<std::string, Term> named_;
};

}  // namespace

std::string to_string(const Term& t) {
  std::unordered_map<VarId, int> counts;
  count_vars(t, counts);
  std::unordered_map<VarId, int> names;
  std::string out;
  print(t, counts, names, out);
  return out;
}

Term parse_term(std::string_view text) { return TermParser(text).parse(); }

}  // namespace mdi
