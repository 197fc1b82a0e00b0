#include "ftl/traverse.hpp"

#include <algorithm>

namespace ftl {

Explorer::Explorer(const Graph& g)
    : g_(&g), block_mark_(g.n(), 0), seen_mark_(g.n(), 0) {
  queue_.reserve(g.n());
}

std::span<const Vertex> Explorer::reach(Vertex src) {
  ++seen_epoch_;
  queue_.clear();
  if (blocked(src)) return {};
  seen_mark_[src] = seen_epoch_;
  queue_.push_back(src);
  for (std::size_t head = 0; head < queue_.size(); ++head) {
    for (Vertex w : g_->neighbors(queue_[head])) {
      if (seen_mark_[w] == seen_epoch_ || blocked(w)) continue;
      seen_mark_[w] = seen_epoch_;
      queue_.push_back(w);
    }
  }
  return queue_;
}

std::span<const Vertex> Explorer::reach_internal(Vertex src) {
  ++seen_epoch_;
  queue_.clear();
  seen_mark_[src] = seen_epoch_;
  queue_.push_back(src);
  for (std::size_t head = 0; head < queue_.size(); ++head) {
    Vertex z = queue_[head];
    if (z != src && blocked(z)) continue;
    for (Vertex w : g_->neighbors(z)) {
      if (seen_mark_[w] == seen_epoch_) continue;
      seen_mark_[w] = seen_epoch_;
      queue_.push_back(w);
    }
  }
  return queue_;
}

Vertex Explorer::component_id(Vertex src) {
  auto comp = reach(src);
  if (comp.empty()) return kNoVertex;
  return *std::max_element(comp.begin(), comp.end());
}

bool Explorer::connected(Vertex a, Vertex b) {
  if (blocked(a) || blocked(b)) return false;
  if (a == b) return true;
  ++seen_epoch_;
  queue_.clear();
  seen_mark_[a] = seen_epoch_;
  queue_.push_back(a);
  for (std::size_t head = 0; head < queue_.size(); ++head) {
    for (Vertex w : g_->neighbors(queue_[head])) {
      if (seen_mark_[w] == seen_epoch_ || blocked(w)) continue;
      if (w == b) return true;
      seen_mark_[w] = seen_epoch_;
      queue_.push_back(w);
    }
  }
  return false;
}

void Explorer::label_components(std::vector<Vertex>& cid) {
  const Vertex n = g_->n();
  cid.assign(n, kNoVertex);
  ++seen_epoch_;
  // Scanning from the top means the first vertex of every component is its maximum.
  for (Vertex r = n - 1; r >= 0; --r) {
    if (blocked(r) || seen_mark_[r] == seen_epoch_) continue;
    queue_.clear();
    seen_mark_[r] = seen_epoch_;
    queue_.push_back(r);
    for (std::size_t head = 0; head < queue_.size(); ++head) {
      Vertex z = queue_[head];
      cid[z] = r;
      for (Vertex w : g_->neighbors(z)) {
        if (seen_mark_[w] == seen_epoch_ || blocked(w)) continue;
        seen_mark_[w] = seen_epoch_;
        queue_.push_back(w);
      }
    }
  }
}

}  // namespace ftl
