#pragma once

#include <stdexcept>
#include <string>

namespace treesearch {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Instance text / edge-list problems. `line` is 1-based for parse errors,
// 0 when the instance was built programmatically.
struct InvalidInstance : Error {
  enum class Code {
    MalformedLine,    // bad token, bad rational, wrong field/edge count, n < 1
    NegativeCost,
    DuplicateEdge,
    VertexOutOfRange,
    NotATree,         // disconnected or cyclic (covers self-loops)
  };
  InvalidInstance(Code c, const std::string& msg, int line_no = 0)
      : Error(msg), code(c), line(line_no) {}
  Code code;
  int line;
};

// Strategy JSON that cannot even be loaded into an arena (bad ids, bad shape).
// Semantic violations against an instance are reported via validate(), not thrown.
struct InvalidStrategy : Error {
  using Error::Error;
};

// Instance exceeds a solver's configured size cap.
struct SizeCapExceeded : Error {
  using Error::Error;
};

// Operation applied outside its domain (non-path to the path solver,
// non-spider to the spider solver, negative N in the reduction, bad config...).
struct PreconditionError : Error {
  using Error::Error;
};

}  // namespace treesearch
