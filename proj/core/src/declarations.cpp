#include "mdi/declarations.hpp"

#include <cctype>
#include <set>

namespace mdi {

namespace {

class DeclParser {
 public:
  DeclParser(std::string_view text, std::string_view origin)
      : text_(text), origin_(origin) {}

  DeclarationSet parse() {
    DeclarationSet out;
    for (skip(); !at_end(); skip()) {
      SourceSpan span = here();
      std::string head = ident("type name");
      skip();
      if (peek() == '>') {
        ++pos_;
        out.subtypes.push_back(subtype_rest(std::move(head), span));
      } else if (lookahead_word() == "intro") {
        ident("'intro'");
        out.features.push_back(intro_rest(std::move(head), span));
      } else {
        fail("expected '>' or 'intro' after '" + head + "'");
      }
    }
    return out;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(std::string(origin_), here(), what);
  }

  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }

  SourceSpan here() const { return SourceSpan{line_, static_cast<int>(pos_ - line_start_) + 1}; }

  void skip() {
    while (!at_end()) {
      char c = text_[pos_];
      if (c == '%') {
        while (!at_end() && text_[pos_] != '\n') ++pos_;
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

  void expect(char c) {
    skip();
    if (peek() != c) {
      if (at_end()) fail(std::string("expected '") + c + "' before end of input");
      fail(std::string("expected '") + c + "', found '" + peek() + "'");
    }
    ++pos_;
  }

  std::string_view lookahead_word() const {
    std::size_t end = pos_;
    while (end < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[end])) || text_[end] == '_')) {
      ++end;
    }
    return text_.substr(pos_, end - pos_);
  }

  std::string ident(const char* what) {
    skip();
    if (!std::islower(static_cast<unsigned char>(peek()))) {
      if (at_end()) fail(std::string("expected ") + what + " before end of input");
      fail(std::string("expected ") + what + ", found '" + peek() + "'");
    }
    std::string_view w = lookahead_word();
    pos_ += w.size();
    return std::string(w);
  }

  std::vector<std::string> dimlist() {
    expect('[');
    skip();
    if (peek() == ']') fail("empty dimension");
    std::vector<std::string> members;
    std::set<std::string> seen;
    for (;;) {
      SourceSpan at = (skip(), here());
      std::string m = ident("type name");
      if (!seen.insert(m).second) {
        throw ParseError(std::string(origin_), at,
                         "duplicate type '" + m + "' in one dimension");
      }
      members.push_back(std::move(m));
      skip();
      if (peek() == ',') {
        ++pos_;
        continue;
      }
      expect(']');
      return members;
    }
  }

  SubtypeDecl subtype_rest(std::string parent, SourceSpan span) {
    SubtypeDecl d{std::move(parent), {}, span};
    d.dimensions.push_back(dimlist());
    for (skip(); peek() == '*'; skip()) {
      ++pos_;
      d.dimensions.push_back(dimlist());
    }
    expect('.');
    return d;
  }

  FeatureIntro intro_rest(std::string type, SourceSpan span) {
    FeatureIntro f{std::move(type), {}, span};
    expect('[');
    for (;;) {
      skip();
      FeatureSpec spec{"", {}, here()};
      spec.name = ident("feature name");
      expect(':');
      spec.restriction.push_back(ident("type name"));
      for (skip(); peek() == '&'; skip()) {
        ++pos_;
        spec.restriction.push_back(ident("type name"));
      }
      f.features.push_back(std::move(spec));
      skip();
      if (peek() == ',') {
        ++pos_;
        continue;
      }
      expect(']');
      break;
    }
    expect('.');
    return f;
  }

  std::string_view text_;
  std::string_view origin_;
  std::size_t pos_ = 0;
  int line_ = 1;
  std::size_t line_start_ = 0;
};

}  // namespace

DeclarationSet parse_declarations(std::string_view text,
                                  std::string_view origin) {
  return DeclParser(text, origin).parse();
}

std::string to_text(const DeclarationSet& decls) {
  std::string out;
  for (const SubtypeDecl& d : decls.subtypes) {
    out += d.parent + " > ";
    for (std::size_t i = 0; i < d.dimensions.size(); ++i) {
      if (i) out += " * ";
      out += '[';
      for (std::size_t j = 0; j < d.dimensions[i].size(); ++j) {
        if (j) out += ',';
        out += d.dimensions[i][j];
      }
      out += ']';
    }
    out += ".\n";
  }
  for (const FeatureIntro& f : decls.features) {
    out += f.type + " intro [";
    for (std::size_t i = 0; i < f.features.size(); ++i) {
      if (i) out += ", ";
      out += f.features[i].name + ':';
      for (std::size_t j = 0; j < f.features[i].restriction.size(); ++j) {
        if (j) out += " & ";
        out += f.features[i].restriction[j];
      }
    }
    out += "].\n";
  }
  return out;
}

}  // namespace mdi
