#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "mdi/error.hpp"

namespace mdi {

/// `parent > [a,b] * [c].` One entry per bracketed list, in source order.
struct SubtypeDecl {
  std::string parent;
  std::vector<std::vector<std::string>> dimensions;
  SourceSpan span;
};

/// One `name:t1 & t2` item of a feature introduction.
struct FeatureSpec {
  std::string name;
  std::vector<std::string> restriction;
  SourceSpan span;
};

/// `type intro [f:c, g:d & e].`
struct FeatureIntro {
  std::string type;
  std::vector<FeatureSpec> features;
  SourceSpan span;
};

/// Everything read from a declaration file, in source order. Order is
/// significant: it fixes dimension indices and hence term layout.
struct DeclarationSet {
  std::vector<SubtypeDecl> subtypes;
  std::vector<FeatureIntro> features;
};

/// Grammar (`%` starts a comment running to end of line):
///
///   decl    := ident ">" dimlist ("*" dimlist)* "."
///            | ident "intro" "[" feature ("," feature)* "]" "."
///   dimlist := "[" ident ("," ident)* "]"
///   feature := ident ":" ident ("&" ident)*
///   ident   := [a-z][A-Za-z0-9_]*
///
/// Throws ParseError carrying `origin` and line/column.
DeclarationSet parse_declarations(std::string_view text,
                                  std::string_view origin = "<input>");

/// Renders declarations back to the file syntax, one declaration per line.
std::string to_text(const DeclarationSet& decls);

}  // namespace mdi
