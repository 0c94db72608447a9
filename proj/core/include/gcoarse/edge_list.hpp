#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "gcoarse/graph.hpp"
#include "gcoarse/graph_ops.hpp"

namespace gcoarse {

// Edge-list TSV: one `u <TAB> v <TAB> w` record per line, '#' starts a
// comment. A line with u == v carries the slack of u; weight 0 on such a
// line only declares the vertex. Any run of blanks or tabs separates fields
// when reading; writing always uses single tabs and 17 significant digits.

Graph parse_edge_list(std::istream& in);
Graph parse_edge_list(std::string_view text);

/// Edges once each (u < v, ascending), then one self line per vertex that
/// has positive slack or no incident edge.
void write_edge_list(const Graph& g, std::ostream& out);
std::string write_edge_list(const Graph& g);

/// One vertex ID per line; '#' comments and blank lines allowed.
std::vector<VertexId> parse_vertex_list(std::istream& in);

/// `vertex_id <TAB> degree` per line.
DegreeMap parse_degree_map(std::istream& in);
void write_degree_map(const DegreeMap& degrees, std::ostream& out);

/// `%.17g` rendering; reads back to the identical double.
std::string format_double(double value);

}  // namespace gcoarse
