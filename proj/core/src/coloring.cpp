#include "dcolor/coloring.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace dcolor {

Coloring identity_coloring(VertexId n) {
  Coloring c;
  c.n = n;
  c.color.assign(static_cast<std::size_t>(n) + 1, 0);
  for (VertexId v = 1; v <= n; ++v) c[v] = v;
  c.palette = n;
  return c;
}

void save_coloring(const Coloring& c, std::ostream& out) {
  out << "vertex,color\n";
  for (VertexId v = 1; v <= c.n; ++v) out << v << ',' << c[v] << '\n';
}

void save_coloring_file(const Coloring& c, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw GraphError("cannot open coloring file for writing: " + path);
  save_coloring(c, f);
}

namespace {

[[noreturn]] void parse_fail(int line, const std::string& what) {
  throw GraphError("coloring line " + std::to_string(line) + ": " + what);
}

} // namespace

Coloring load_coloring(std::istream& in) {
  std::string line;
  int lineno = 0;
  if (!std::getline(in, line)) throw GraphError("coloring: empty input");
  ++lineno;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "vertex,color") parse_fail(lineno, "expected header \"vertex,color\"");

  std::vector<std::pair<VertexId, Color>> rows;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto comma = line.find(',');
    if (comma == std::string::npos) parse_fail(lineno, "expected \"vertex,color\"");
    VertexId v;
    Color col;
    try {
      std::size_t used = 0;
      v = static_cast<VertexId>(std::stol(line.substr(0, comma), &used));
      if (used != comma) parse_fail(lineno, "bad vertex id");
      std::string rest = line.substr(comma + 1);
      col = static_cast<Color>(std::stoll(rest, &used));
      if (used != rest.size()) parse_fail(lineno, "bad color");
    } catch (const GraphError&) {
      throw;
    } catch (const std::exception&) {
      parse_fail(lineno, "expected \"vertex,color\"");
    }
    if (v < 1) parse_fail(lineno, "vertex id must be >= 1");
    if (col < 1) parse_fail(lineno, "color must be >= 1");
    rows.emplace_back(v, col);
  }
  if (rows.empty()) throw GraphError("coloring: no rows");

  Coloring c;
  c.n = static_cast<VertexId>(rows.size());
  c.color.assign(rows.size() + 1, 0);
  for (auto [v, col] : rows) {
    if (v > c.n) throw GraphError("coloring: vertex " + std::to_string(v) +
                                  " out of range for " + std::to_string(c.n) + " rows");
    if (c[v] != 0) throw GraphError("coloring: duplicate row for vertex " + std::to_string(v));
    c[v] = col;
    c.palette = std::max(c.palette, col);
  }
  for (VertexId v = 1; v <= c.n; ++v)
    if (c[v] == 0) throw GraphError("coloring: missing row for vertex " + std::to_string(v));
  return c;
}

Coloring load_coloring_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw GraphError("cannot open coloring file: " + path);
  return load_coloring(f);
}

} // namespace dcolor
