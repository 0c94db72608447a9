#include "gcoarse/graph.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gcoarse/errors.hpp"

namespace gcoarse {

namespace detail {

AdjacencyList::AdjacencyList(const AdjacencyList& other)
    : entries_(other.entries_),
      position_(other.position_ ? std::make_unique<PositionIndex>(*other.position_) : nullptr) {}

AdjacencyList& AdjacencyList::operator=(const AdjacencyList& other) {
  if (this != &other) {
    *this = AdjacencyList(other);
  }
  return *this;
}

std::optional<std::uint32_t> AdjacencyList::find(VertexId neighbor) const {
  if (position_) {
    if (auto it = position_->find(neighbor); it != position_->end()) {
      return it->second;
    }
    return std::nullopt;
  }
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (entries_[i].id == neighbor) {
      return static_cast<std::uint32_t>(i);
    }
  }
  return std::nullopt;
}

void AdjacencyList::append(VertexId neighbor, double weight) {
  entries_.push_back({neighbor, weight});
  if (position_) {
    position_->emplace(neighbor, static_cast<std::uint32_t>(entries_.size() - 1));
  } else if (entries_.size() > kIndexedDegree) {
    position_ = std::make_unique<PositionIndex>();
    position_->reserve(2 * entries_.size());
    for (std::size_t i = 0; i < entries_.size(); ++i) {
      position_->emplace(entries_[i].id, static_cast<std::uint32_t>(i));
    }
  }
}

void AdjacencyList::erase(VertexId neighbor) {
  const std::uint32_t slot = *find(neighbor);
  const std::uint32_t last = static_cast<std::uint32_t>(entries_.size() - 1);
  if (position_) {
    position_->erase(neighbor);
  }
  if (slot != last) {
    entries_[slot] = entries_[last];
    if (position_) {
      (*position_)[entries_[slot].id] = slot;
    }
  }
  entries_.pop_back();
  if (position_ && entries_.size() <= kIndexedDegree / 2) {
    position_.reset();
  }
}

}  // namespace detail

namespace {

std::string vertex_name(VertexId v) { return "vertex " + std::to_string(v); }

}  // namespace

bool Graph::add_vertex(VertexId v) { return vertices_.try_emplace(v).second; }

void Graph::add_edge(VertexId u, VertexId v, double weight) {
  if (u == v) {
    throw DomainError("self-loop on " + vertex_name(u) + " must be recorded as slack");
  }
  if (!(weight > 0.0) || !std::isfinite(weight)) {
    throw DomainError("edge (" + std::to_string(u) + "," + std::to_string(v) +
                      ") has non-positive or non-finite weight");
  }
  VertexRecord& ru = vertices_[u];
  VertexRecord& rv = vertices_[v];
  if (auto slot = ru.adjacency.find(v)) {
    ru.adjacency.weight_at(*slot) += weight;
    rv.adjacency.weight_at(*rv.adjacency.find(u)) += weight;
    return;
  }
  ru.adjacency.append(v, weight);
  rv.adjacency.append(u, weight);
  ++edge_count_;
}

void Graph::add_slack(VertexId v, double amount) {
  if (!(amount >= 0.0) || !std::isfinite(amount)) {
    throw DomainError("negative or non-finite slack on " + vertex_name(v));
  }
  vertices_[v].slack += amount;
}

void Graph::set_slack(VertexId v, double value) {
  if (!(value >= 0.0) || !std::isfinite(value)) {
    throw DomainError("negative or non-finite slack on " + vertex_name(v));
  }
  record(v).slack = value;
}

void Graph::remove_vertex(VertexId v) {
  auto it = vertices_.find(v);
  if (it == vertices_.end()) {
    throw DomainError(vertex_name(v) + " is not in the graph");
  }
  for (const Neighbor& nb : it->second.adjacency.entries()) {
    vertices_.at(nb.id).adjacency.erase(v);
  }
  edge_count_ -= it->second.adjacency.size();
  vertices_.erase(it);
}

double Graph::remove_edge(VertexId u, VertexId v) {
  const auto w = weight(u, v);
  if (!w) {
    throw DomainError("edge {" + std::to_string(u) + ", " + std::to_string(v) +
                      "} is not in the graph");
  }
  vertices_.at(u).adjacency.erase(v);
  vertices_.at(v).adjacency.erase(u);
  --edge_count_;
  return *w;
}

std::vector<VertexId> Graph::vertices() const {
  std::vector<VertexId> ids;
  ids.reserve(vertices_.size());
  for (const auto& [id, rec] : vertices_) {
    ids.push_back(id);
  }
  std::sort(ids.begin(), ids.end());
  return ids;
}

Graph::VertexRecord& Graph::record(VertexId v) {
  auto it = vertices_.find(v);
  if (it == vertices_.end()) {
    throw DomainError(vertex_name(v) + " is not in the graph");
  }
  return it->second;
}

const Graph::VertexRecord& Graph::record(VertexId v) const {
  auto it = vertices_.find(v);
  if (it == vertices_.end()) {
    throw DomainError(vertex_name(v) + " is not in the graph");
  }
  return it->second;
}

std::span<const Neighbor> Graph::neighbors(VertexId v) const {
  return record(v).adjacency.entries();
}

double Graph::weighted_degree(VertexId v) const {
  double sum = 0.0;
  for (const Neighbor& nb : record(v).adjacency.entries()) {
    sum += nb.weight;
  }
  return sum;
}

double Graph::slack(VertexId v) const { return record(v).slack; }

std::optional<double> Graph::weight(VertexId u, VertexId v) const {
  const VertexRecord& ru = record(u);
  if (auto slot = ru.adjacency.find(v)) {
    return ru.adjacency.entries()[*slot].weight;
  }
  return std::nullopt;
}

double Graph::total_slack() const {
  double sum = 0.0;
  for (VertexId v : vertices()) {
    sum += vertices_.at(v).slack;
  }
  return sum;
}

std::vector<Graph::Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count_);
  for (const auto& [id, rec] : vertices_) {
    for (const Neighbor& nb : rec.adjacency.entries()) {
      if (id < nb.id) {
        out.push_back({id, nb.id, nb.weight});
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const Edge& a, const Edge& b) {
    return a.u != b.u ? a.u < b.u : a.v < b.v;
  });
  return out;
}

bool operator==(const Graph& a, const Graph& b) {
  if (a.vertices_.size() != b.vertices_.size() || a.edge_count_ != b.edge_count_) {
    return false;
  }
  for (const auto& [id, ra] : a.vertices_) {
    auto it = b.vertices_.find(id);
    if (it == b.vertices_.end()) {
      return false;
    }
    const Graph::VertexRecord& rb = it->second;
    if (ra.slack != rb.slack || ra.adjacency.size() != rb.adjacency.size()) {
      return false;
    }
    for (const Neighbor& nb : ra.adjacency.entries()) {
      const auto slot = rb.adjacency.find(nb.id);
      if (!slot || rb.adjacency.entries()[*slot].weight != nb.weight) {
        return false;
      }
    }
  }
  return true;
}

TerminalSet::TerminalSet(std::vector<VertexId> ids) : ids_(std::move(ids)) {
  std::sort(ids_.begin(), ids_.end());
  ids_.erase(std::unique(ids_.begin(), ids_.end()), ids_.end());
}

bool TerminalSet::contains(VertexId v) const {
  return std::binary_search(ids_.begin(), ids_.end(), v);
}

void TerminalSet::validate_against(const Graph& g) const {
  for (VertexId t : ids_) {
    if (!g.contains(t)) {
      throw DomainError("terminal " + std::to_string(t) + " is not a vertex of the graph");
    }
  }
}

}  // namespace gcoarse
