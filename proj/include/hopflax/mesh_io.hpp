#pragma once

#include <iosfwd>
#include <string>

#include "hopflax/mesh.hpp"

namespace hopflax {

/// Malformed mesh text; `line()` is 1-based, 0 when the error is not tied
/// to a line (e.g. premature end of file).
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// Text format, '#' starts a comment, blank lines are ignored:
//   nv nt
//   x y        (nv lines)
//   i j k      (nt lines, 0-based)
// Boundary vertices are recomputed on load and never stored.
TriMesh read_mesh(std::istream& in);
void write_mesh(const TriMesh& mesh, std::ostream& out);

TriMesh load_mesh(const std::string& path);
void save_mesh(const TriMesh& mesh, const std::string& path);

}  // namespace hopflax
