#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <memory>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

namespace gcoarse {

using VertexId = std::uint64_t;

struct Neighbor {
  VertexId id;
  double weight;
};

struct VertexPair {
  VertexId u;
  VertexId v;

  friend bool operator==(const VertexPair&, const VertexPair&) = default;
  friend auto operator<=>(const VertexPair&, const VertexPair&) = default;
};

namespace detail {

/// Neighbor list in insertion order with swap-remove deletion. Lookups scan
/// linearly until the list grows past kIndexedDegree; larger lists keep a
/// hash index from neighbor ID to slot.
class AdjacencyList {
 public:
  static constexpr std::size_t kIndexedDegree = 32;

  AdjacencyList() = default;
  AdjacencyList(const AdjacencyList& other);
  AdjacencyList& operator=(const AdjacencyList& other);
  AdjacencyList(AdjacencyList&&) noexcept = default;
  AdjacencyList& operator=(AdjacencyList&&) noexcept = default;

  std::span<const Neighbor> entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  void reserve(std::size_t n) { entries_.reserve(n); }

  std::optional<std::uint32_t> find(VertexId neighbor) const;
  double& weight_at(std::uint32_t slot) { return entries_[slot].weight; }

  /// Appends a neighbor that must not already be present.
  void append(VertexId neighbor, double weight);

  /// Removes a neighbor that must be present; the last entry takes its slot.
  void erase(VertexId neighbor);

 private:
  using PositionIndex = std::unordered_map<VertexId, std::uint32_t>;

  std::vector<Neighbor> entries_;
  std::unique_ptr<PositionIndex> position_;
};

}  // namespace detail

/// Undirected weighted graph with a non-negative self-loop mass ("slack")
/// per vertex. The matrix it stands for is D' - A where D' = D + slack.
///
/// Edge weights are strictly positive and stored from both endpoints with
/// bit-identical values. Parallel insertions merge by addition. Self-loops
/// are never stored as edges; they only exist as slack.
///
/// Neighbor lists keep insertion order (swap-remove on deletion), so every
/// traversal is a deterministic function of the sequence of mutations.
class Graph {
 public:
  Graph() = default;

  /// Inserts an isolated vertex if absent. Returns true if it was new.
  bool add_vertex(VertexId v);

  /// Adds `weight` to edge {u,v}, creating endpoints as needed.
  /// Throws DomainError if u == v or weight is not a finite positive value.
  void add_edge(VertexId u, VertexId v, double weight);

  /// Adds `amount` (>= 0) to the slack of v, creating v if needed.
  void add_slack(VertexId v, double amount);

  /// Overwrites the slack of an existing vertex.
  void set_slack(VertexId v, double value);

  /// Deletes v and every incident edge. Throws DomainError if absent.
  void remove_vertex(VertexId v);

  /// Deletes edge {u,v} and returns its weight; both endpoints stay.
  /// Throws DomainError if the edge is absent.
  double remove_edge(VertexId u, VertexId v);

  bool contains(VertexId v) const { return vertices_.contains(v); }
  std::size_t num_vertices() const { return vertices_.size(); }
  std::size_t num_edges() const { return edge_count_; }
  bool empty() const { return vertices_.empty(); }

  /// Vertex IDs in ascending order.
  std::vector<VertexId> vertices() const;

  std::span<const Neighbor> neighbors(VertexId v) const;

  /// Unweighted degree |N(v)|.
  std::size_t degree(VertexId v) const { return neighbors(v).size(); }

  /// Weighted degree D_{v,v} (slack excluded).
  double weighted_degree(VertexId v) const;

  double slack(VertexId v) const;

  /// D'_{v,v} = D_{v,v} + slack(v).
  double augmented_degree(VertexId v) const { return weighted_degree(v) + slack(v); }

  std::optional<double> weight(VertexId u, VertexId v) const;
  bool has_edge(VertexId u, VertexId v) const { return weight(u, v).has_value(); }

  double total_slack() const;

  /// Every undirected edge once, as (u, v, w) with u < v, sorted.
  struct Edge {
    VertexId u;
    VertexId v;
    double weight;
  };
  std::vector<Edge> edges() const;

  /// Structural equality: same vertices, slack, and edge weights
  /// (neighbor order is ignored). Comparison is exact.
  friend bool operator==(const Graph& a, const Graph& b);

 private:
  struct VertexRecord {
    detail::AdjacencyList adjacency;
    double slack = 0.0;
  };

  VertexRecord& record(VertexId v);
  const VertexRecord& record(VertexId v) const;

  std::unordered_map<VertexId, VertexRecord> vertices_;
  std::size_t edge_count_ = 0;
};

/// Vertices that every coarsening must retain.
class TerminalSet {
 public:
  TerminalSet() = default;
  explicit TerminalSet(std::vector<VertexId> ids);
  TerminalSet(std::initializer_list<VertexId> ids)
      : TerminalSet(std::vector<VertexId>(ids)) {}

  /// Every vertex of g is a terminal.
  static TerminalSet all_of(const Graph& g) { return TerminalSet(g.vertices()); }

  bool contains(VertexId v) const;
  std::size_t size() const { return ids_.size(); }
  bool empty() const { return ids_.empty(); }

  /// Sorted, duplicate-free.
  const std::vector<VertexId>& ids() const { return ids_; }

  /// Throws DomainError naming the first terminal that is not in g.
  void validate_against(const Graph& g) const;

 private:
  std::vector<VertexId> ids_;
};

}  // namespace gcoarse
