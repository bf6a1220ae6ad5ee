#pragma once

#include <stdexcept>
#include <string>

namespace mdi {

/// Line/column of a construct in a declaration or network file (1-based).
struct SourceSpan {
  int line = 0;
  int column = 0;
};

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Lexical or syntactic error in a text input.
class ParseError : public Error {
 public:
  ParseError(std::string origin, SourceSpan where, const std::string& what);

  const std::string& origin() const { return origin_; }
  SourceSpan where() const { return where_; }
  /// The description without the location prefix.
  const std::string& message() const { return message_; }

 private:
  std::string origin_;
  SourceSpan where_;
  std::string message_;
};

/// The declarations parse but do not describe a well-formed hierarchy.
class HierarchyError : public Error {
 public:
  HierarchyError(SourceSpan where, const std::string& what);

  SourceSpan where() const { return where_; }
  const std::string& message() const { return message_; }

 private:
  SourceSpan where_;
  std::string message_;
};

class UnknownTypeError : public Error {
 public:
  explicit UnknownTypeError(const std::string& name);
};

/// A conjunction of types has an empty denotation.
class InconsistentError : public Error {
 public:
  using Error::Error;
};

class FeatureError : public Error {
 public:
  using Error::Error;
};

}  // namespace mdi
