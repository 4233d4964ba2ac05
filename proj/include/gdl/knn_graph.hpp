#ifndef GDL_KNN_GRAPH_HPP
#define GDL_KNN_GRAPH_HPP

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "gdl/dataset.hpp"
#include "gdl/partition.hpp"

namespace gdl {

// Sparse directed graph with nonnegative edge weights, stored CSR in both
// directions. Graphs produced by build_knn_graph have exactly K out-edges per
// vertex, no self-loops, and weights in (0, 1]; hand-built graphs may have
// ragged rows.
class KnnGraph {
 public:
  // edges[i] lists (target, weight) pairs for vertex i; targets must be
  // distinct, in range, and != i, with weights > 0.
  static KnnGraph from_edges(
      std::size_t n, const std::vector<std::vector<std::pair<VertexId, double>>>& edges,
      std::size_t k = 0, double sigma_sq = 0.0);

  std::size_t size() const { return n_; }
  std::size_t k() const { return k_; }
  double sigma_sq() const { return sigma_sq_; }

  std::span<const VertexId> out_neighbors(VertexId i) const {
    return {out_targets_.data() + out_offsets_[i],
            out_offsets_[i + 1] - out_offsets_[i]};
  }
  std::span<const double> out_weights(VertexId i) const {
    return {out_weights_.data() + out_offsets_[i],
            out_offsets_[i + 1] - out_offsets_[i]};
  }
  std::span<const VertexId> in_sources(VertexId i) const {
    return {in_sources_.data() + in_offsets_[i],
            in_offsets_[i + 1] - in_offsets_[i]};
  }
  std::span<const double> in_weights(VertexId i) const {
    return {in_weights_.data() + in_offsets_[i],
            in_offsets_[i + 1] - in_offsets_[i]};
  }

  // w_ij, or 0 when the edge i->j is absent. Rows are sorted by target.
  double weight(VertexId i, VertexId j) const;

 private:
  KnnGraph() = default;
  void build_transpose();

  std::size_t n_ = 0;
  std::size_t k_ = 0;
  double sigma_sq_ = 0.0;
  std::vector<std::size_t> out_offsets_;
  std::vector<VertexId> out_targets_;  // sorted within each row
  std::vector<double> out_weights_;
  std::vector<std::size_t> in_offsets_;
  std::vector<VertexId> in_sources_;  // sorted within each row
  std::vector<double> in_weights_;
};

// K nearest neighbors per vertex, self excluded, ties on distance broken by
// smaller vertex index. Requires 1 <= K < n. Returns per-vertex neighbor ids
// paired with squared distances, each row sorted by neighbor id.
std::vector<std::vector<std::pair<VertexId, double>>> knn_select(
    const Dataset& dataset, std::size_t K);

// Kernel bandwidth: a * mean squared K-NN distance. Requires a > 0.
// Throws AllDistancesZeroError when every K-NN distance is zero.
double compute_sigma_sq(const Dataset& dataset, std::size_t K, double a);

// Directed K-NN graph with w_ij = exp(-d(i,j)^2 / sigma^2).
KnnGraph build_knn_graph(const Dataset& dataset, std::size_t K, double a);

// Weak connectivity: components of the graph with edge directions dropped.
// Cluster ids are assigned 0..m-1 in order of each component's smallest vertex.
Partition weakly_connected_components(const KnnGraph& graph);

// Seed partition for linkage: weak components of the unweighted K0-NN graph.
Partition seed_components(const Dataset& dataset, std::size_t K0);

}  // namespace gdl

#endif  // GDL_KNN_GRAPH_HPP
