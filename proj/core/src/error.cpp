#include "mdi/error.hpp"

namespace mdi {

namespace {

std::string located(const std::string& origin, SourceSpan where,
                    const std::string& what) {
  std::string out = origin;
  if (where.line > 0) {
    out += ':' + std::to_string(where.line) + ':' + std::to_string(where.column);
  }
  if (!out.empty()) out += ": ";
  return out + what;
}

}  // namespace

ParseError::ParseError(std::string origin, SourceSpan where,
                       const std::string& what)
    : Error(located(origin, where, what)),
      origin_(std::move(origin)),
      where_(where),
      message_(what) {}

HierarchyError::HierarchyError(SourceSpan where, const std::string& what)
    : Error(where.line > 0 ? located("line", where, what) : what),
      where_(where),
      message_(what) {}

UnknownTypeError::UnknownTypeError(const std::string& name)
    : Error("unknown type '" + name + "'") {}

}  // namespace mdi
