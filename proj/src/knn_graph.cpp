#include "gdl/knn_graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "gdl/errors.hpp"

namespace gdl {

namespace {

double bandwidth_from_rows(
    const std::vector<std::vector<std::pair<VertexId, double>>>& rows,
    std::size_t K, double a) {
  double total = 0.0;
  for (const auto& row : rows) {
    for (const auto& [j, d2] : row) {
      (void)j;
      total += d2;
    }
  }
  if (total == 0.0) {
    throw AllDistancesZeroError("bandwidth: every K-NN distance is zero");
  }
  return a * (total / static_cast<double>(rows.size() * K));
}

Partition components_from_undirected(std::size_t n,
                                     const std::vector<std::vector<VertexId>>& adj) {
  std::vector<ClusterId> assign(n, kNoCluster);
  std::vector<VertexId> stack;
  ClusterId next = 0;
  for (std::size_t v = 0; v < n; ++v) {
    if (assign[v] != kNoCluster) {
      continue;
    }
    assign[v] = next;
    stack.assign(1, static_cast<VertexId>(v));
    while (!stack.empty()) {
      const VertexId u = stack.back();
      stack.pop_back();
      for (VertexId t : adj[u]) {
        if (assign[t] == kNoCluster) {
          assign[t] = next;
          stack.push_back(t);
        }
      }
    }
    ++next;
  }
  return Partition::from_assignment(std::move(assign));
}

}  // namespace

std::vector<std::vector<std::pair<VertexId, double>>> knn_select(
    const Dataset& dataset, std::size_t K) {
  const std::size_t n = dataset.size();
  if (K < 1 || K >= n) {
    throw InvalidConfigError("knn_select: need 1 <= K < n, got K=" + std::to_string(K));
  }
  std::vector<std::vector<std::pair<VertexId, double>>> rows(n);
  std::vector<std::pair<double, VertexId>> cand;
  cand.reserve(n - 1);
  const auto closer = [](const std::pair<double, VertexId>& a,
                         const std::pair<double, VertexId>& b) {
    if (a.first != b.first) {
      return a.first < b.first;
    }
    return a.second < b.second;  // distance ties go to the smaller index
  };
  for (std::size_t i = 0; i < n; ++i) {
    cand.clear();
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) {
        cand.emplace_back(dataset.squared_distance(i, j),
                          static_cast<VertexId>(j));
      }
    }
    std::nth_element(cand.begin(), cand.begin() + (K - 1), cand.end(), closer);
    cand.resize(K);
    std::sort(cand.begin(), cand.end(),
              [](const auto& a, const auto& b) { return a.second < b.second; });
    auto& row = rows[i];
    row.reserve(K);
    for (const auto& [d2, j] : cand) {
      row.emplace_back(j, d2);
    }
  }
  return rows;
}

double compute_sigma_sq(const Dataset& dataset, std::size_t K, double a) {
  if (!(a > 0.0)) {
    throw InvalidConfigError("compute_sigma_sq: a must be > 0");
  }
  return bandwidth_from_rows(knn_select(dataset, K), K, a);
}

KnnGraph build_knn_graph(const Dataset& dataset, std::size_t K, double a) {
  if (!(a > 0.0)) {
    throw InvalidConfigError("build_knn_graph: a must be > 0");
  }
  const auto rows = knn_select(dataset, K);
  const double sigma_sq = bandwidth_from_rows(rows, K, a);
  std::vector<std::vector<std::pair<VertexId, double>>> edges(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    edges[i].reserve(K);
    for (const auto& [j, d2] : rows[i]) {
      // exp can underflow to 0 for extreme bandwidths; stored edges stay positive
      const double w = std::max(std::exp(-d2 / sigma_sq),
                                std::numeric_limits<double>::min());
      edges[i].emplace_back(j, w);
    }
  }
  return KnnGraph::from_edges(rows.size(), edges, K, sigma_sq);
}

KnnGraph KnnGraph::from_edges(
    std::size_t n, const std::vector<std::vector<std::pair<VertexId, double>>>& edges,
    std::size_t k, double sigma_sq) {
  if (n < 1) {
    throw InvalidConfigError("from_edges: empty graph");
  }
  if (edges.size() != n) {
    throw InvalidConfigError("from_edges: need one edge row per vertex");
  }
  KnnGraph g;
  g.n_ = n;
  g.k_ = k;
  g.sigma_sq_ = sigma_sq;
  g.out_offsets_.assign(n + 1, 0);
  std::size_t total = 0;
  for (const auto& row : edges) {
    total += row.size();
  }
  g.out_targets_.reserve(total);
  g.out_weights_.reserve(total);
  std::vector<std::pair<VertexId, double>> row;
  for (std::size_t i = 0; i < n; ++i) {
    row = edges[i];
    std::sort(row.begin(), row.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    VertexId prev = std::numeric_limits<VertexId>::max();
    for (const auto& [t, w] : row) {
      if (t >= n) {
        throw InvalidConfigError("from_edges: target out of range");
      }
      if (t == static_cast<VertexId>(i)) {
        throw InvalidConfigError("from_edges: self-loop at vertex " + std::to_string(i));
      }
      if (t == prev) {
        throw InvalidConfigError("from_edges: duplicate edge from vertex " + std::to_string(i));
      }
      if (!std::isfinite(w) || w <= 0.0) {
        throw InvalidConfigError("from_edges: edge weights must be finite and > 0");
      }
      g.out_targets_.push_back(t);
      g.out_weights_.push_back(w);
      prev = t;
    }
    g.out_offsets_[i + 1] = g.out_targets_.size();
  }
  g.build_transpose();
  return g;
}

void KnnGraph::build_transpose() {
  in_offsets_.assign(n_ + 1, 0);
  for (VertexId t : out_targets_) {
    ++in_offsets_[t + 1];
  }
  for (std::size_t i = 0; i < n_; ++i) {
    in_offsets_[i + 1] += in_offsets_[i];
  }
  in_sources_.resize(out_targets_.size());
  in_weights_.resize(out_targets_.size());
  std::vector<std::size_t> fill(in_offsets_.begin(), in_offsets_.end() - 1);
  // source-major scan fills each in-row in ascending source order
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t e = out_offsets_[i]; e < out_offsets_[i + 1]; ++e) {
      const VertexId t = out_targets_[e];
      in_sources_[fill[t]] = static_cast<VertexId>(i);
      in_weights_[fill[t]] = out_weights_[e];
      ++fill[t];
    }
  }
}

double KnnGraph::weight(VertexId i, VertexId j) const {
  const auto targets = out_neighbors(i);
  const auto it = std::lower_bound(targets.begin(), targets.end(), j);
  if (it == targets.end() || *it != j) {
    return 0.0;
  }
  return out_weights_[out_offsets_[i] + (it - targets.begin())];
}

Partition weakly_connected_components(const KnnGraph& graph) {
  const std::size_t n = graph.size();
  std::vector<std::vector<VertexId>> adj(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (VertexId t : graph.out_neighbors(static_cast<VertexId>(i))) {
      adj[i].push_back(t);
      adj[t].push_back(static_cast<VertexId>(i));
    }
  }
  return components_from_undirected(n, adj);
}

Partition seed_components(const Dataset& dataset, std::size_t K0) {
  const auto rows = knn_select(dataset, K0);
  const std::size_t n = rows.size();
  std::vector<std::vector<VertexId>> adj(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& [j, d2] : rows[i]) {
      (void)d2;
      adj[i].push_back(j);
      adj[j].push_back(static_cast<VertexId>(i));
    }
  }
  return components_from_undirected(n, adj);
}

}  // namespace gdl
