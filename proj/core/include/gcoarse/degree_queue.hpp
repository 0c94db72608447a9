#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "gcoarse/graph.hpp"

namespace gcoarse {

/// Degree threshold for elimination loops: a finite positive bound or
/// infinity.
class DegreeThreshold {
 public:
  /// Throws DomainError when bound is zero.
  explicit DegreeThreshold(std::size_t bound);
  static DegreeThreshold infinity() { return DegreeThreshold(); }

  bool admits(std::size_t degree) const { return degree <= bound_; }
  bool is_infinite() const { return bound_ == std::numeric_limits<std::size_t>::max(); }
  std::size_t bound() const { return bound_; }

  /// "inf" or the decimal bound.
  std::string to_string() const;

  /// Parses "inf" or a positive integer; throws DomainError otherwise.
  static DegreeThreshold parse(const std::string& text);

 private:
  DegreeThreshold() : bound_(std::numeric_limits<std::size_t>::max()) {}
  std::size_t bound_;
};

/// Non-terminal vertices keyed by unweighted degree, ordered by
/// (degree, ID). Backed by a binary heap with lazy deletion: updates push a
/// fresh entry and stale ones are discarded when they reach the top.
class DegreeBucketQueue {
 public:
  DegreeBucketQueue() = default;

  /// Enqueues every non-terminal of g at its current degree.
  DegreeBucketQueue(const Graph& g, const TerminalSet& terminals);

  /// Inserts v or changes its degree.
  void update(VertexId v, std::size_t degree);

  /// Removes v if present.
  void erase(VertexId v);

  /// Removes and returns the minimum-degree vertex (ties: smallest ID) when
  /// its degree is admitted by `delta`; otherwise leaves the queue intact.
  std::optional<VertexId> pop_min_below(const DegreeThreshold& delta);

  struct Entry {
    VertexId vertex;
    std::size_t degree;
  };
  std::optional<Entry> peek_min() const;

  bool contains(VertexId v) const { return degree_of_.contains(v); }
  std::optional<std::size_t> degree_of(VertexId v) const;
  std::size_t size() const { return degree_of_.size(); }
  bool empty() const { return degree_of_.empty(); }

 private:
  using HeapEntry = std::pair<std::size_t, VertexId>;

  bool is_live(const HeapEntry& e) const;
  void push(std::size_t degree, VertexId v);
  void prune() const;
  void compact();

  // Min-heap on (degree, ID) under std::greater; may hold stale entries.
  mutable std::vector<HeapEntry> heap_;
  std::unordered_map<VertexId, std::size_t> degree_of_;
};

}  // namespace gcoarse
