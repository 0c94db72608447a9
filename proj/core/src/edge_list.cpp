#include "gcoarse/edge_list.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "gcoarse/errors.hpp"

namespace gcoarse {

namespace {

std::string_view strip_comment(std::string_view line) {
  if (auto hash = line.find('#'); hash != std::string_view::npos) {
    line = line.substr(0, hash);
  }
  if (!line.empty() && line.back() == '\r') {
    line.remove_suffix(1);
  }
  return line;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) {
      ++i;
    }
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') {
      ++i;
    }
    if (i > start) {
      fields.push_back(line.substr(start, i - start));
    }
  }
  return fields;
}

VertexId parse_id(std::string_view field, std::size_t line_no) {
  VertexId id = 0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), id);
  if (ec != std::errc{} || ptr != field.data() + field.size()) {
    throw ParseError(line_no, "invalid vertex id '" + std::string(field) + "'");
  }
  return id;
}

double parse_real(std::string_view field, std::size_t line_no) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || ptr != field.data() + field.size() || !std::isfinite(value)) {
    throw ParseError(line_no, "invalid number '" + std::string(field) + "'");
  }
  return value;
}

template <class Fn>
void for_each_record(std::istream& in, Fn&& fn) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto fields = split_fields(strip_comment(line));
    if (!fields.empty()) {
      fn(fields, line_no);
    }
  }
}

}  // namespace

std::string format_double(double value) {
  std::array<char, 64> buf{};
  auto [ptr, ec] =
      std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::general, 17);
  return std::string(buf.data(), ptr);
}

Graph parse_edge_list(std::istream& in) {
  Graph g;
  for_each_record(in, [&](const std::vector<std::string_view>& f, std::size_t line_no) {
    if (f.size() != 3) {
      throw ParseError(line_no, "expected 'u v w', got " + std::to_string(f.size()) + " fields");
    }
    const VertexId u = parse_id(f[0], line_no);
    const VertexId v = parse_id(f[1], line_no);
    const double w = parse_real(f[2], line_no);
    if (u == v) {
      if (w < 0.0) {
        throw DomainError("line " + std::to_string(line_no) + ": negative slack on vertex " +
                          std::to_string(u));
      }
      g.add_slack(u, w);
      return;
    }
    if (w <= 0.0) {
      throw DomainError("line " + std::to_string(line_no) + ": non-positive weight on edge (" +
                        std::to_string(u) + "," + std::to_string(v) + ")");
    }
    g.add_edge(u, v, w);
  });
  return g;
}

Graph parse_edge_list(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_edge_list(in);
}

void write_edge_list(const Graph& g, std::ostream& out) {
  for (const Graph::Edge& e : g.edges()) {
    out << e.u << '\t' << e.v << '\t' << format_double(e.weight) << '\n';
  }
  for (VertexId v : g.vertices()) {
    const double s = g.slack(v);
    if (s > 0.0 || g.degree(v) == 0) {
      out << v << '\t' << v << '\t' << format_double(s) << '\n';
    }
  }
  if (!out) {
    throw Error("failed to write edge list");
  }
}

std::string write_edge_list(const Graph& g) {
  std::ostringstream out;
  write_edge_list(g, out);
  return out.str();
}

std::vector<VertexId> parse_vertex_list(std::istream& in) {
  std::vector<VertexId> ids;
  for_each_record(in, [&](const std::vector<std::string_view>& f, std::size_t line_no) {
    if (f.size() != 1) {
      throw ParseError(line_no, "expected a single vertex id");
    }
    ids.push_back(parse_id(f[0], line_no));
  });
  return ids;
}

DegreeMap parse_degree_map(std::istream& in) {
  DegreeMap degrees;
  for_each_record(in, [&](const std::vector<std::string_view>& f, std::size_t line_no) {
    if (f.size() != 2) {
      throw ParseError(line_no, "expected 'vertex degree'");
    }
    const VertexId v = parse_id(f[0], line_no);
    const double d = parse_real(f[1], line_no);
    if (d <= 0.0) {
      throw DomainError("line " + std::to_string(line_no) + ": degree must be positive");
    }
    if (!degrees.emplace(v, d).second) {
      throw ParseError(line_no, "duplicate vertex " + std::to_string(v));
    }
  });
  return degrees;
}

void write_degree_map(const DegreeMap& degrees, std::ostream& out) {
  for (const auto& [v, d] : degrees) {
    out << v << '\t' << format_double(d) << '\n';
  }
  if (!out) {
    throw Error("failed to write degree map");
  }
}

}  // namespace gcoarse
