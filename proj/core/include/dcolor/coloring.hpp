#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "dcolor/graph.hpp"

namespace dcolor {

using Color = std::int64_t;

// A vertex coloring together with the palette it is claimed to live in and
// the defect (max same-colored neighbors per vertex) it is claimed to have.
// Colors are 1-based; color[0] is unused.  defect_bound == 0 means proper.
struct Coloring {
  VertexId n = 0;
  std::vector<Color> color;
  Color palette = 0;
  int defect_bound = 0;

  Color operator[](VertexId v) const { return color[static_cast<std::size_t>(v)]; }
  Color& operator[](VertexId v) { return color[static_cast<std::size_t>(v)]; }
};

// Every vertex gets its own id as color; palette n.  The standard initial
// coloring for everything downstream.
Coloring identity_coloring(VertexId n);

// CSV with header "vertex,color", one row per vertex in id order, LF endings.
void save_coloring(const Coloring& c, std::ostream& out);
void save_coloring_file(const Coloring& c, const std::string& path);

// Parse errors carry 1-based line numbers.  The palette of a loaded coloring
// is the max color seen (colors must be >= 1); defect_bound loads as 0.
Coloring load_coloring(std::istream& in);
Coloring load_coloring_file(const std::string& path);

} // namespace dcolor
