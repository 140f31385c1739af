#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "bibliorank/errors.hpp"
#include "bibliorank/textmine.hpp"

namespace bibliorank {

namespace detail {

// mt19937_64 output is pinned down by the standard, and the usual
// distribution adapters are not, so bounded draws are done by hand.
class DetRng {
 public:
  explicit DetRng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t below(std::uint64_t n) {
    // rejection keeps the draw unbiased
    std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t v;
    do { v = eng_(); } while (v >= limit);
    return v % n;
  }

 private:
  std::mt19937_64 eng_;
};

inline double sq_dist(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

inline std::vector<std::vector<double>> densify_normalized(const TermDocMatrix& m) {
  std::vector<std::vector<double>> points(m.docs(), std::vector<double>(m.vocab(), 0.0));
  for (std::size_t d = 0; d < m.rows.size(); ++d) {
    double norm2 = 0;
    for (const auto& [t, v] : m.rows[d]) norm2 += v * v;
    double inv = norm2 > 0 ? 1.0 / std::sqrt(norm2) : 0.0;  // zero rows stay at the origin
    for (const auto& [t, v] : m.rows[d]) points[d][t] = v * inv;
  }
  return points;
}

struct LloydResult {
  std::vector<std::uint32_t> assignments;
  std::vector<std::vector<double>> centroids;
  std::vector<double> sse_history;
  double sse = 0;
  std::size_t iterations = 0;
};

// Seeding: walk a seeded shuffle of the documents and take the first k
// pairwise-distinct vectors; if the data has fewer distinct points than k,
// fill up with whatever is left so every centroid starts on a document.
inline std::vector<std::vector<double>> seed_centroids(const std::vector<std::vector<double>>& points,
                                                       std::size_t k, DetRng& rng) {
  std::vector<std::size_t> order(points.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  for (std::size_t i = order.size(); i > 1; --i)
    std::swap(order[i - 1], order[rng.below(i)]);

  std::vector<std::vector<double>> centroids;
  std::vector<std::size_t> used;
  for (std::size_t idx : order) {
    if (centroids.size() == k) break;
    bool dup = false;
    for (const auto& c : centroids)
      if (c == points[idx]) { dup = true; break; }
    if (!dup) {
      centroids.push_back(points[idx]);
      used.push_back(idx);
    }
  }
  if (centroids.size() < k) {
    for (std::size_t idx : order) {
      if (centroids.size() == k) break;
      if (std::find(used.begin(), used.end(), idx) == used.end()) {
        centroids.push_back(points[idx]);
        used.push_back(idx);
      }
    }
  }
  return centroids;
}

inline LloydResult lloyd(const std::vector<std::vector<double>>& points, std::size_t k,
                         std::uint64_t seed, std::size_t max_iter) {
  DetRng rng(seed);
  LloydResult r;
  r.centroids = seed_centroids(points, k, rng);
  r.assignments.assign(points.size(), 0);

  std::vector<std::uint32_t> prev(points.size(), UINT32_MAX);
  for (std::size_t iter = 0; iter < max_iter; ++iter) {
    // assignment: nearest centroid, ties to the lowest index
    for (std::size_t i = 0; i < points.size(); ++i) {
      double best = std::numeric_limits<double>::infinity();
      std::uint32_t best_c = 0;
      for (std::size_t c = 0; c < k; ++c) {
        double d = sq_dist(points[i], r.centroids[c]);
        if (d < best) { best = d; best_c = static_cast<std::uint32_t>(c); }
      }
      r.assignments[i] = best_c;
    }
    r.iterations = iter + 1;
    bool stable = r.assignments == prev;

    // update: mean of members; an empty cluster keeps its centroid
    std::vector<std::vector<double>> sums(k, std::vector<double>(points.empty() ? 0 : points[0].size(), 0.0));
    std::vector<std::size_t> counts(k, 0);
    for (std::size_t i = 0; i < points.size(); ++i) {
      auto c = r.assignments[i];
      ++counts[c];
      for (std::size_t j = 0; j < points[i].size(); ++j) sums[c][j] += points[i][j];
    }
    for (std::size_t c = 0; c < k; ++c) {
      if (!counts[c]) continue;
      for (std::size_t j = 0; j < sums[c].size(); ++j) sums[c][j] /= static_cast<double>(counts[c]);
      r.centroids[c] = std::move(sums[c]);
    }

    double sse = 0;
    for (std::size_t i = 0; i < points.size(); ++i) sse += sq_dist(points[i], r.centroids[r.assignments[i]]);
    r.sse = sse;
    r.sse_history.push_back(sse);
    if (stable) break;
    prev = r.assignments;
  }
  return r;
}

}  // namespace detail

struct Clustering {
  std::size_t k = 0;
  std::uint64_t seed = 0;
  std::vector<std::uint32_t> assignments;         // per document, row order of the matrix
  std::vector<std::vector<double>> centroids;     // k x vocab
  double sse = 0;
  std::size_t iterations = 0;
  std::vector<double> sse_history;                // one entry per iteration, non-increasing
};

inline std::vector<std::size_t> cluster_sizes(const Clustering& c) {
  std::vector<std::size_t> sizes(c.k, 0);
  for (auto a : c.assignments) ++sizes[a];
  return sizes;
}

// Lloyd iterations over L2-normalized rows with squared Euclidean distance.
// Fully deterministic for a given (matrix, k, seed, max_iter).
inline Clustering kmeans(const TermDocMatrix& m, std::size_t k, std::uint64_t seed,
                         std::size_t max_iter = 100) {
  if (k < 1 || k > m.docs())
    throw ValidationError("kmeans: k must be between 1 and the number of documents (" +
                          std::to_string(m.docs()) + ")");
  if (max_iter < 1) throw ValidationError("kmeans: max_iter must be at least 1");

  auto points = detail::densify_normalized(m);
  auto r = detail::lloyd(points, k, seed, max_iter);
  Clustering c;
  c.k = k;
  c.seed = seed;
  c.assignments = std::move(r.assignments);
  c.centroids = std::move(r.centroids);
  c.sse = r.sse;
  c.iterations = r.iterations;
  c.sse_history = std::move(r.sse_history);
  return c;
}

// Binary split history of the bisecting variant. Node 0 is the root; leaves
// carry the final cluster id, internal nodes have cluster == -1.
struct SplitNode {
  int parent = -1;
  int left = -1;
  int right = -1;
  int cluster = -1;
};

struct SplitTree {
  std::vector<SplitNode> nodes;
};

struct BisectingResult {
  Clustering clustering;
  SplitTree tree;
};

// Repeatedly splits the cluster with the largest SSE (ties to the lowest
// cluster id) in two. The first split runs with the master seed, so k = 2
// reproduces plain kmeans with that seed; later splits use seed + step.
inline BisectingResult bisecting_kmeans(const TermDocMatrix& m, std::size_t k, std::uint64_t seed,
                                        std::size_t max_iter = 100) {
  if (k < 1 || k > m.docs())
    throw ValidationError("kmeans: k must be between 1 and the number of documents (" +
                          std::to_string(m.docs()) + ")");
  auto points = detail::densify_normalized(m);
  const std::size_t n = points.size();
  const std::size_t dim = n ? points[0].size() : 0;

  std::vector<std::uint32_t> assign(n, 0);
  std::vector<std::vector<double>> centroids;
  SplitTree tree;
  tree.nodes.push_back({-1, -1, -1, 0});
  std::vector<int> cluster_node = {0};  // cluster id -> tree node

  auto centroid_of = [&](std::uint32_t cluster) {
    std::vector<double> c(dim, 0.0);
    std::size_t count = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (assign[i] == cluster) {
        ++count;
        for (std::size_t j = 0; j < dim; ++j) c[j] += points[i][j];
      }
    if (count)
      for (double& v : c) v /= static_cast<double>(count);
    return c;
  };
  auto sse_of = [&](std::uint32_t cluster, const std::vector<double>& centroid) {
    double s = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (assign[i] == cluster) s += detail::sq_dist(points[i], centroid);
    return s;
  };

  centroids.push_back(centroid_of(0));
  std::size_t clusters = 1;

  for (std::size_t step = 0; clusters < k; ++step) {
    // victim: largest SSE among clusters with at least 2 members
    double worst = -1;
    int victim = -1;
    for (std::size_t c = 0; c < clusters; ++c) {
      std::size_t size = 0;
      for (auto a : assign) size += a == c;
      if (size < 2) continue;
      double s = sse_of(static_cast<std::uint32_t>(c), centroids[c]);
      if (s > worst) {  // strict: ties stay with the lowest cluster id
        worst = s;
        victim = static_cast<int>(c);
      }
    }
    if (victim == -1)
      throw std::logic_error("bisecting kmeans: no splittable cluster left");  // k <= docs rules this out

    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < n; ++i)
      if (assign[i] == static_cast<std::uint32_t>(victim)) members.push_back(i);
    std::vector<std::vector<double>> sub;
    sub.reserve(members.size());
    for (auto i : members) sub.push_back(points[i]);

    auto r = detail::lloyd(sub, 2, seed + step, max_iter);
    bool side_a = false, side_b = false;
    for (auto a : r.assignments) (a == 0 ? side_a : side_b) = true;
    if (!side_a || !side_b) {
      // identical points defeat the 2-means; peel off the first member
      for (std::size_t i = 0; i < r.assignments.size(); ++i) r.assignments[i] = i == 0 ? 0 : 1;
    }

    std::uint32_t fresh = static_cast<std::uint32_t>(clusters);
    for (std::size_t i = 0; i < members.size(); ++i)
      if (r.assignments[i] == 1) assign[members[i]] = fresh;
    ++clusters;

    int parent_node = cluster_node[victim];
    int left_node = static_cast<int>(tree.nodes.size());
    tree.nodes.push_back({parent_node, -1, -1, victim});
    int right_node = static_cast<int>(tree.nodes.size());
    tree.nodes.push_back({parent_node, -1, -1, static_cast<int>(fresh)});
    tree.nodes[parent_node].left = left_node;
    tree.nodes[parent_node].right = right_node;
    tree.nodes[parent_node].cluster = -1;
    cluster_node[victim] = left_node;
    cluster_node.push_back(right_node);

    centroids.resize(clusters, std::vector<double>(dim, 0.0));
    centroids[victim] = centroid_of(static_cast<std::uint32_t>(victim));
    centroids[fresh] = centroid_of(fresh);
  }

  BisectingResult out;
  out.clustering.k = k;
  out.clustering.seed = seed;
  out.clustering.assignments = std::move(assign);
  out.clustering.centroids = std::move(centroids);
  out.clustering.iterations = k ? k - 1 : 0;  // number of splits
  double total = 0;
  for (std::size_t i = 0; i < n; ++i)
    total += detail::sq_dist(points[i], out.clustering.centroids[out.clustering.assignments[i]]);
  out.clustering.sse = total;
  out.clustering.sse_history.push_back(total);
  out.tree = std::move(tree);
  return out;
}

}  // namespace bibliorank
