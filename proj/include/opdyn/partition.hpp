#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "opdyn/graph.hpp"

namespace opdyn {

/// A set of disjoint, non-empty vertex classes covering 0..n-1.
///
/// Stored canonically: members ascending inside each class, classes ordered by
/// their smallest member. Two partitions with the same classes therefore
/// compare equal and share a canonical_key().
class Partition {
 public:
  /// Throws std::invalid_argument on empty classes, repeated or missing
  /// vertices, or indices >= vertex_count.
  Partition(std::size_t vertex_count, std::vector<std::vector<Vertex>> classes);

  static Partition whole(std::size_t vertex_count);
  static Partition singletons(std::size_t vertex_count);
  /// Builds from a per-vertex class id (ids need not be contiguous).
  static Partition from_labels(const std::vector<std::size_t>& class_of);

  std::size_t vertex_count() const noexcept { return class_of_.size(); }
  std::size_t class_count() const noexcept { return classes_.size(); }
  const std::vector<std::vector<Vertex>>& classes() const noexcept { return classes_; }
  const std::vector<Vertex>& operator[](std::size_t c) const { return classes_.at(c); }
  std::size_t class_of(Vertex v) const { return class_of_.at(v); }

  /// "0,1,2|3,4|5" style key; identical for equal partitions.
  std::string canonical_key() const;

  /// True if every class of *this lies inside a class of `coarser`.
  bool refines(const Partition& coarser) const;

  friend bool operator==(const Partition& a, const Partition& b) {
    return a.classes_ == b.classes_ && a.class_of_.size() == b.class_of_.size();
  }

 private:
  std::vector<std::vector<Vertex>> classes_;
  std::vector<std::size_t> class_of_;
};

}  // namespace opdyn
