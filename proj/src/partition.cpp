#include "opdyn/partition.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace opdyn {

Partition::Partition(std::size_t vertex_count, std::vector<std::vector<Vertex>> classes)
    : classes_(std::move(classes)) {
  constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> seen(vertex_count, kUnset);
  for (auto& cls : classes_) {
    if (cls.empty()) throw std::invalid_argument("partition class is empty");
    std::sort(cls.begin(), cls.end());
  }
  std::sort(classes_.begin(), classes_.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  for (std::size_t c = 0; c < classes_.size(); ++c) {
    for (Vertex v : classes_[c]) {
      if (v >= vertex_count) throw std::invalid_argument("partition vertex out of range");
      if (seen[v] != kUnset) throw std::invalid_argument("partition classes overlap");
      seen[v] = c;
    }
  }
  if (std::find(seen.begin(), seen.end(), kUnset) != seen.end())
    throw std::invalid_argument("partition does not cover every vertex");
  class_of_ = std::move(seen);
}

Partition Partition::whole(std::size_t vertex_count) {
  std::vector<Vertex> all(vertex_count);
  for (std::size_t i = 0; i < vertex_count; ++i) all[i] = i;
  return Partition(vertex_count, {std::move(all)});
}

Partition Partition::singletons(std::size_t vertex_count) {
  std::vector<std::vector<Vertex>> classes(vertex_count);
  for (std::size_t i = 0; i < vertex_count; ++i) classes[i] = {i};
  return Partition(vertex_count, std::move(classes));
}

Partition Partition::from_labels(const std::vector<std::size_t>& class_of) {
  std::map<std::size_t, std::vector<Vertex>> groups;
  for (std::size_t v = 0; v < class_of.size(); ++v) groups[class_of[v]].push_back(v);
  std::vector<std::vector<Vertex>> classes;
  classes.reserve(groups.size());
  for (auto& [id, members] : groups) classes.push_back(std::move(members));
  return Partition(class_of.size(), std::move(classes));
}

std::string Partition::canonical_key() const {
  std::string key;
  for (std::size_t c = 0; c < classes_.size(); ++c) {
    if (c) key += '|';
    for (std::size_t k = 0; k < classes_[c].size(); ++k) {
      if (k) key += ',';
      key += std::to_string(classes_[c][k]);
    }
  }
  return key;
}

bool Partition::refines(const Partition& coarser) const {
  if (coarser.vertex_count() != vertex_count()) return false;
  for (const auto& cls : classes_) {
    std::size_t target = coarser.class_of(cls.front());
    for (Vertex v : cls) {
      if (coarser.class_of(v) != target) return false;
    }
  }
  return true;
}

}  // namespace opdyn
