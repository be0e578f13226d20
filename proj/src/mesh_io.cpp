#include "fexray/mesh_io.hpp"

#include "fexray/error.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string_view>
#include <vector>

namespace fexray {

namespace {

constexpr std::string_view kMeshMagic = "fexray-mesh";
constexpr std::string_view kFieldMagic = "fexray-field";
constexpr int kFormatVersion = 1;
constexpr std::size_t kMaxCount = 100'000'000;

// Yields the whitespace-separated tokens of each non-blank, non-comment line.
class LineReader {
 public:
  LineReader(std::istream& in, std::string source) : in_(in), source_(std::move(source)) {}

  bool next(std::vector<std::string_view>& tokens) {
    while (std::getline(in_, line_)) {
      ++line_no_;
      tokens.clear();
      std::size_t pos = 0;
      while (pos < line_.size()) {
        while (pos < line_.size() && std::isspace(static_cast<unsigned char>(line_[pos]))) ++pos;
        if (pos >= line_.size() || line_[pos] == '#') break;
        const std::size_t start = pos;
        while (pos < line_.size() && !std::isspace(static_cast<unsigned char>(line_[pos]))) ++pos;
        tokens.emplace_back(line_.data() + start, pos - start);
      }
      if (!tokens.empty()) return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& what) const { throw ParseError(source_, line_no_, what); }

  template <typename T>
  T number(std::string_view token, const char* what) const {
    T value{};
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size()) {
      fail(std::string("invalid ") + what + " '" + std::string(token) + "'");
    }
    return value;
  }

  void expect_count(const std::vector<std::string_view>& tokens, std::size_t n, const char* what) const {
    if (tokens.size() != n) {
      fail(std::string("expected ") + std::to_string(n) + " fields on " + what + " line, got " +
           std::to_string(tokens.size()));
    }
  }

 private:
  std::istream& in_;
  std::string source_;
  std::string line_;
  int line_no_ = 0;
};

void check_header(LineReader& reader, const std::vector<std::string_view>& tokens,
                  std::string_view magic, std::size_t fields) {
  if (tokens.empty() || tokens[0] != magic) reader.fail("missing '" + std::string(magic) + "' header");
  reader.expect_count(tokens, fields, "header");
  if (reader.number<int>(tokens[1], "version") != kFormatVersion) reader.fail("unsupported version");
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open '" + path.string() + "'");
  return in;
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  return out;
}

}  // namespace

Mesh read_mesh(std::istream& in, const std::string& source) {
  LineReader reader(in, source);
  std::vector<std::string_view> tok;
  if (!reader.next(tok)) reader.fail("empty mesh file");
  check_header(reader, tok, kMeshMagic, 5);
  const auto n_nodes = reader.number<std::size_t>(tok[2], "node count");
  const auto n_elems = reader.number<std::size_t>(tok[3], "element count");
  const auto npe = reader.number<int>(tok[4], "nodes per element");
  if (npe != 4 && npe != 10) reader.fail("nodes per element must be 4 or 10");
  if (n_nodes > kMaxCount || n_elems > kMaxCount) reader.fail("node or element count too large");

  std::vector<Vec3> nodes(n_nodes);
  for (std::size_t i = 0; i < n_nodes; ++i) {
    if (!reader.next(tok)) reader.fail("unexpected end of file, expected node " + std::to_string(i));
    reader.expect_count(tok, 4, "node");
    if (reader.number<std::size_t>(tok[0], "node id") != i) {
      reader.fail("node ids must be consecutive, expected " + std::to_string(i));
    }
    for (int d = 0; d < 3; ++d) nodes[i][d] = reader.number<double>(tok[1 + d], "coordinate");
  }

  std::vector<NodeId> conn;
  conn.reserve(n_elems * npe);
  for (std::size_t e = 0; e < n_elems; ++e) {
    if (!reader.next(tok)) reader.fail("unexpected end of file, expected element " + std::to_string(e));
    reader.expect_count(tok, 1 + npe, "element");
    if (reader.number<std::size_t>(tok[0], "element id") != e) {
      reader.fail("element ids must be consecutive, expected " + std::to_string(e));
    }
    for (int k = 0; k < npe; ++k) {
      const auto id = reader.number<NodeId>(tok[1 + k], "node id");
      if (id >= n_nodes) reader.fail("node id " + std::to_string(id) + " out of range");
      conn.push_back(id);
    }
  }
  if (reader.next(tok)) reader.fail("unexpected trailing content");
  return Mesh(std::move(nodes), std::move(conn),
              npe == 4 ? ElementOrder::linear : ElementOrder::quadratic);
}

Mesh read_mesh_file(const std::filesystem::path& path) {
  auto in = open_input(path);
  return read_mesh(in, path.string());
}

void write_mesh(std::ostream& out, const Mesh& mesh) {
  out << kMeshMagic << ' ' << kFormatVersion << ' ' << mesh.node_count() << ' '
      << mesh.element_count() << ' ' << mesh.nodes_per_element() << '\n';
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
  for (std::size_t i = 0; i < mesh.node_count(); ++i) {
    const Vec3& p = mesh.nodes()[i];
    out << i << ' ' << p.x() << ' ' << p.y() << ' ' << p.z() << '\n';
  }
  for (ElementId e = 0; e < mesh.element_count(); ++e) {
    out << e;
    for (NodeId id : mesh.element(e)) out << ' ' << id;
    out << '\n';
  }
}

void write_mesh_file(const std::filesystem::path& path, const Mesh& mesh) {
  auto out = open_output(path);
  write_mesh(out, mesh);
  if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

NodalField read_field(std::istream& in, const std::string& source) {
  LineReader reader(in, source);
  std::vector<std::string_view> tok;
  if (!reader.next(tok)) reader.fail("empty field file");
  check_header(reader, tok, kFieldMagic, 3);
  const auto n = reader.number<std::size_t>(tok[2], "value count");
  if (n > kMaxCount) reader.fail("value count too large");
  std::vector<double> values(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!reader.next(tok)) reader.fail("unexpected end of file, expected value " + std::to_string(i));
    reader.expect_count(tok, 2, "field");
    if (reader.number<std::size_t>(tok[0], "node id") != i) {
      reader.fail("node ids must be consecutive, expected " + std::to_string(i));
    }
    values[i] = reader.number<double>(tok[1], "value");
  }
  if (reader.next(tok)) reader.fail("unexpected trailing content");
  return NodalField(std::move(values));
}

NodalField read_field_file(const std::filesystem::path& path) {
  auto in = open_input(path);
  return read_field(in, path.string());
}

void write_field(std::ostream& out, const NodalField& field) {
  out << kFieldMagic << ' ' << kFormatVersion << ' ' << field.size() << '\n';
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
  for (std::size_t i = 0; i < field.size(); ++i) out << i << ' ' << field.values()[i] << '\n';
}

void write_field_file(const std::filesystem::path& path, const NodalField& field) {
  auto out = open_output(path);
  write_field(out, field);
  if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

}  // namespace fexray
