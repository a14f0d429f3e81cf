#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "mrdrrt/kd_tree.hpp"

using mrdrrt::KdTree;

namespace {

double sq(std::span<const double> a, std::span<const double> b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    s += (a[i] - b[i]) * (a[i] - b[i]);
  }
  return s;
}

std::vector<std::size_t> brute_k_nearest(const std::vector<std::vector<double>>& pts,
                                         const std::vector<double>& q, std::size_t k) {
  std::vector<std::size_t> order(pts.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const double da = sq(pts[a], q), db = sq(pts[b], q);
    return da != db ? da < db : a < b;
  });
  order.resize(std::min(k, order.size()));
  return order;
}

}  // namespace

TEST_CASE("exact nearest neighbours match brute force") {
  for (const std::size_t dim : {2u, 4u, 8u}) {
    std::mt19937_64 rng(dim);
    std::uniform_real_distribution<double> u(0, 1);
    KdTree tree(dim);
    std::vector<std::vector<double>> pts;
    for (int i = 0; i < 600; ++i) {
      std::vector<double> p(dim);
      for (auto& x : p) {
        x = u(rng);
      }
      CHECK(tree.insert(p) == pts.size());
      pts.push_back(p);
    }
    for (int trial = 0; trial < 200; ++trial) {
      std::vector<double> q(dim);
      for (auto& x : q) {
        x = u(rng) * 1.2 - 0.1;
      }
      CHECK(tree.nearest(q) == brute_k_nearest(pts, q, 1).front());
      CHECK(tree.k_nearest(q, 7) == brute_k_nearest(pts, q, 7));
    }
  }
}

TEST_CASE("duplicate points break ties by insertion index") {
  KdTree tree(2);
  const std::vector<double> p{0.5, 0.5};
  tree.insert(std::vector<double>{0.9, 0.9});
  tree.insert(p);
  tree.insert(p);
  tree.insert(p);
  CHECK(tree.nearest(p) == 1);
  CHECK(tree.k_nearest(p, 3) == std::vector<std::size_t>{1, 2, 3});
  CHECK(tree.k_nearest(p, 10).size() == 4);
  CHECK(tree.k_nearest(p, 0).empty());
}

TEST_CASE("stored coordinates are returned unchanged") {
  KdTree tree(3);
  tree.insert(std::vector<double>{1, 2, 3});
  const auto pt = tree.point(0);
  CHECK(std::vector<double>(pt.begin(), pt.end()) == std::vector<double>{1, 2, 3});
  CHECK(tree.size() == 1);
  CHECK_FALSE(tree.empty());
}
