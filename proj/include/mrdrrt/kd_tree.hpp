#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace mrdrrt {

/// Insert-only k-d tree over points in R^d with exact Euclidean queries.
///
/// Points are identified by insertion index. Distance ties resolve to the lower
/// index, so query results are a pure function of the insertion sequence.
class KdTree {
 public:
  explicit KdTree(std::size_t dimension);

  std::size_t dimension() const { return dim_; }
  std::size_t size() const { return nodes_.size(); }
  bool empty() const { return nodes_.empty(); }

  /// Returns the index assigned to the point.
  std::size_t insert(std::span<const double> point);

  std::span<const double> point(std::size_t index) const {
    return {coords_.data() + index * dim_, dim_};
  }

  /// Index of the nearest stored point. Precondition: !empty().
  std::size_t nearest(std::span<const double> query) const;

  /// Up to k indices ordered by ascending (distance, index).
  std::vector<std::size_t> k_nearest(std::span<const double> query,
                                     std::size_t k) const;

 private:
  static constexpr std::uint32_t kNone = 0xffffffffu;

  struct Node {
    std::uint32_t left = kNone;
    std::uint32_t right = kNone;
    std::uint32_t axis = 0;
  };

  double sq_distance(std::size_t index, std::span<const double> query) const;

  std::size_t dim_;
  std::vector<double> coords_;
  std::vector<Node> nodes_;
};

}  // namespace mrdrrt
