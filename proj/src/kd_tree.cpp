#include "mrdrrt/kd_tree.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <stdexcept>
#include <utility>

namespace mrdrrt {

KdTree::KdTree(std::size_t dimension) : dim_(dimension) {
  if (dimension == 0) {
    throw std::invalid_argument("KdTree: dimension must be positive");
  }
}

double KdTree::sq_distance(std::size_t index,
                           std::span<const double> query) const {
  const double* p = coords_.data() + index * dim_;
  double sum = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) {
    const double d = p[i] - query[i];
    sum += d * d;
  }
  return sum;
}

std::size_t KdTree::insert(std::span<const double> point) {
  if (point.size() != dim_) {
    throw std::invalid_argument("KdTree::insert: dimension mismatch");
  }
  const auto index = static_cast<std::uint32_t>(nodes_.size());
  coords_.insert(coords_.end(), point.begin(), point.end());
  nodes_.push_back({});
  if (index == 0) {
    return 0;
  }
  std::uint32_t cur = 0;
  std::uint32_t depth = 0;
  while (true) {
    Node& node = nodes_[cur];
    const std::size_t axis = node.axis;
    const bool go_left = point[axis] < coords_[cur * dim_ + axis];
    std::uint32_t& child = go_left ? node.left : node.right;
    ++depth;
    if (child == kNone) {
      child = index;
      nodes_[index].axis = depth % static_cast<std::uint32_t>(dim_);
      return index;
    }
    cur = child;
  }
}

std::size_t KdTree::nearest(std::span<const double> query) const {
  const auto result = k_nearest(query, 1);
  if (result.empty()) {
    throw std::logic_error("KdTree::nearest on empty tree");
  }
  return result.front();
}

std::vector<std::size_t> KdTree::k_nearest(std::span<const double> query,
                                           std::size_t k) const {
  if (query.size() != dim_) {
    throw std::invalid_argument("KdTree::k_nearest: dimension mismatch");
  }
  std::vector<std::size_t> out;
  if (nodes_.empty() || k == 0) {
    return out;
  }
  // Max-heap on (distance, index): top is the worst of the current best k.
  using Entry = std::pair<double, std::size_t>;
  std::priority_queue<Entry> best;
  auto bound = [&] {
    return best.size() < k ? std::numeric_limits<double>::infinity()
                           : best.top().first;
  };

  // Explicit recursion: (node, lower bound on squared distance to its region).
  std::vector<std::pair<std::uint32_t, double>> work{{0u, 0.0}};
  while (!work.empty()) {
    const auto [cur, region_sq] = work.back();
    work.pop_back();
    if (region_sq > bound()) {
      continue;
    }
    const Entry entry{sq_distance(cur, query), cur};
    if (best.size() < k) {
      best.push(entry);
    } else if (entry < best.top()) {
      best.pop();
      best.push(entry);
    }
    const Node& node = nodes_[cur];
    const double diff = query[node.axis] - coords_[cur * dim_ + node.axis];
    const std::uint32_t near_child = diff < 0.0 ? node.left : node.right;
    const std::uint32_t far_child = diff < 0.0 ? node.right : node.left;
    // Far side first so the near side is popped next.
    if (far_child != kNone) {
      work.emplace_back(far_child, std::max(region_sq, diff * diff));
    }
    if (near_child != kNone) {
      work.emplace_back(near_child, region_sq);
    }
  }

  out.resize(best.size());
  for (std::size_t i = out.size(); i-- > 0;) {
    out[i] = best.top().second;
    best.pop();
  }
  return out;
}

}  // namespace mrdrrt
