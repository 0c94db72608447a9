#include "gcoarse/degree_queue.hpp"

#include <algorithm>
#include <charconv>
#include <functional>

#include "gcoarse/errors.hpp"

namespace gcoarse {

DegreeThreshold::DegreeThreshold(std::size_t bound) : bound_(bound) {
  if (bound == 0) {
    throw DomainError("degree threshold must be at least 1");
  }
}

std::string DegreeThreshold::to_string() const {
  return is_infinite() ? std::string("inf") : std::to_string(bound_);
}

DegreeThreshold DegreeThreshold::parse(const std::string& text) {
  if (text == "inf") {
    return infinity();
  }
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw DomainError("degree threshold must be a positive integer or 'inf', got '" + text + "'");
  }
  return DegreeThreshold(value);
}

DegreeBucketQueue::DegreeBucketQueue(const Graph& g, const TerminalSet& terminals) {
  for (VertexId v : g.vertices()) {
    if (!terminals.contains(v)) {
      degree_of_.emplace(v, g.degree(v));
      heap_.emplace_back(g.degree(v), v);
    }
  }
  std::make_heap(heap_.begin(), heap_.end(), std::greater<>{});
}

bool DegreeBucketQueue::is_live(const HeapEntry& e) const {
  auto it = degree_of_.find(e.second);
  return it != degree_of_.end() && it->second == e.first;
}

void DegreeBucketQueue::push(std::size_t degree, VertexId v) {
  heap_.emplace_back(degree, v);
  std::push_heap(heap_.begin(), heap_.end(), std::greater<>{});
  if (heap_.size() > 4 * degree_of_.size() + 64) {
    compact();
  }
}

void DegreeBucketQueue::prune() const {
  while (!heap_.empty() && !is_live(heap_.front())) {
    std::pop_heap(heap_.begin(), heap_.end(), std::greater<>{});
    heap_.pop_back();
  }
}

void DegreeBucketQueue::compact() {
  std::erase_if(heap_, [this](const HeapEntry& e) { return !is_live(e); });
  std::sort(heap_.begin(), heap_.end());
  heap_.erase(std::unique(heap_.begin(), heap_.end()), heap_.end());
  std::make_heap(heap_.begin(), heap_.end(), std::greater<>{});
}

void DegreeBucketQueue::update(VertexId v, std::size_t degree) {
  auto [it, inserted] = degree_of_.try_emplace(v, degree);
  if (!inserted) {
    if (it->second == degree) {
      return;
    }
    it->second = degree;
  }
  push(degree, v);
}

void DegreeBucketQueue::erase(VertexId v) { degree_of_.erase(v); }

std::optional<DegreeBucketQueue::Entry> DegreeBucketQueue::peek_min() const {
  prune();
  if (heap_.empty()) {
    return std::nullopt;
  }
  return Entry{heap_.front().second, heap_.front().first};
}

std::optional<VertexId> DegreeBucketQueue::pop_min_below(const DegreeThreshold& delta) {
  const auto top = peek_min();
  if (!top || !delta.admits(top->degree)) {
    return std::nullopt;
  }
  std::pop_heap(heap_.begin(), heap_.end(), std::greater<>{});
  heap_.pop_back();
  degree_of_.erase(top->vertex);
  return top->vertex;
}

std::optional<std::size_t> DegreeBucketQueue::degree_of(VertexId v) const {
  if (auto it = degree_of_.find(v); it != degree_of_.end()) {
    return it->second;
  }
  return std::nullopt;
}

}  // namespace gcoarse
