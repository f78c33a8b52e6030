#include "hopflax/mesh_io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string_view>
#include <vector>

#include "hopflax/text_format.hpp"

namespace hopflax {
namespace {

class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  // Next non-empty, comment-stripped line split on whitespace.
  bool next(std::vector<std::string>& fields) {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_no_;
      if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
      std::istringstream ss(line);
      fields.clear();
      for (std::string tok; ss >> tok;) fields.push_back(tok);
      if (!fields.empty()) return true;
    }
    return false;
  }

  int line() const { return line_no_; }

 private:
  std::istream& in_;
  int line_no_ = 0;
};

std::vector<std::string> expect_fields(LineReader& reader, std::size_t count, const char* what) {
  std::vector<std::string> fields;
  if (!reader.next(fields)) {
    throw ParseError(0, std::string("unexpected end of file, expected ") + what);
  }
  if (fields.size() != count) {
    throw ParseError(reader.line(), std::string("expected ") + std::to_string(count) +
                                        " fields for " + what + ", got " +
                                        std::to_string(fields.size()));
  }
  return fields;
}

template <class F>
auto convert(LineReader& reader, F&& f) {
  try {
    return f();
  } catch (const std::invalid_argument& e) {
    throw ParseError(reader.line(), e.what());
  }
}

}  // namespace

TriMesh read_mesh(std::istream& in) {
  LineReader reader(in);
  auto header = expect_fields(reader, 2, "header 'nv nt'");
  const long long nv = convert(reader, [&] { return parse_integer(header[0]); });
  const long long nt = convert(reader, [&] { return parse_integer(header[1]); });
  if (nv < 0 || nt < 0) throw ParseError(reader.line(), "negative count in header");

  std::vector<Point> vertices;
  vertices.reserve(nv);
  for (long long i = 0; i < nv; ++i) {
    auto f = expect_fields(reader, 2, "vertex 'x y'");
    vertices.emplace_back(convert(reader, [&] { return parse_double(f[0]); }),
                          convert(reader, [&] { return parse_double(f[1]); }));
  }
  std::vector<Triangle> triangles;
  triangles.reserve(nt);
  for (long long t = 0; t < nt; ++t) {
    auto f = expect_fields(reader, 3, "triangle 'i j k'");
    Triangle tri{};
    for (int k = 0; k < 3; ++k) {
      const long long idx = convert(reader, [&] { return parse_integer(f[k]); });
      if (idx < 0 || idx >= nv) {
        throw ParseError(reader.line(), "vertex index " + std::to_string(idx) +
                                            " out of range [0, " + std::to_string(nv) + ")");
      }
      tri[k] = static_cast<int>(idx);
    }
    triangles.push_back(tri);
  }
  std::vector<std::string> extra;
  if (reader.next(extra)) {
    throw ParseError(reader.line(), "trailing data after " + std::to_string(nt) + " triangles");
  }
  return TriMesh::build(std::move(vertices), std::move(triangles));
}

void write_mesh(const TriMesh& mesh, std::ostream& out) {
  out << mesh.num_vertices() << ' ' << mesh.num_triangles() << '\n';
  for (const auto& p : mesh.vertices()) {
    out << format_double(p.x()) << ' ' << format_double(p.y()) << '\n';
  }
  for (const auto& t : mesh.triangles()) out << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
}

TriMesh load_mesh(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open mesh file '" + path + "'");
  return read_mesh(in);
}

void save_mesh(const TriMesh& mesh, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write mesh file '" + path + "'");
  write_mesh(mesh, out);
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

}  // namespace hopflax
