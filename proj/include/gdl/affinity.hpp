#ifndef GDL_AFFINITY_HPP
#define GDL_AFFINITY_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "gdl/knn_graph.hpp"
#include "gdl/partition.hpp"

namespace gdl {

// Average indegree of vertex v from cluster: (1/|C|) * sum_{j in C} w_jv.
// Measures how densely the cluster points at v.
double avg_indegree(const KnnGraph& graph, VertexId v,
                    std::span<const VertexId> cluster);

// Average outdegree of vertex v into cluster: (1/|C|) * sum_{j in C} w_vj.
// Measures how similar v is to the cluster.
double avg_outdegree(const KnnGraph& graph, VertexId v,
                     std::span<const VertexId> cluster);

// Vertex-to-cluster affinity: avg_indegree * avg_outdegree. The product form
// discards vertices that only point at the cluster or are only pointed at.
double vertex_cluster_affinity(const KnnGraph& graph, VertexId v,
                               std::span<const VertexId> cluster);

// Reusable workspace for cluster-level affinities. All linkage engines share
// this evaluation path, which fixes the floating-point summation order:
// member vectors are iterated ascending, rows in stored target order.
class AffinityEvaluator {
 public:
  explicit AffinityEvaluator(const KnnGraph& graph);

  // Directed affinity of `from` toward `to`:
  //   sum_{i in from} avg_indegree(i, to) * avg_outdegree(i, to)
  // evaluated as two sparse matrix-vector products, never as a submatrix
  // product. Sets must be nonempty and disjoint.
  double asym(std::span<const VertexId> from, std::span<const VertexId> to);

  // Symmetric affinity: asym(hi, lo) + asym(lo, hi), where lo is the set with
  // the smaller minimum vertex. The canonical order makes sym(a, b) and
  // sym(b, a) bit-identical.
  double sym(std::span<const VertexId> a, std::span<const VertexId> b);

  // Average-linkage baseline, directed:
  //   (1/|from|) * sum_{i in from} (avg_indegree(i, to) + avg_outdegree(i, to)) / 2
  double glink_asym(std::span<const VertexId> from, std::span<const VertexId> to);

  // Baseline symmetrized like sym().
  double glink_sym(std::span<const VertexId> a, std::span<const VertexId> b);

 private:
  void mark_sets(std::span<const VertexId> from, std::span<const VertexId> to);
  void clear_marks(std::span<const VertexId> from, std::span<const VertexId> to);

  const KnnGraph* graph_;
  std::vector<std::uint8_t> mark_;  // 0 none, 1 from-set, 2 to-set
  std::vector<double> out_sum_;     // per from-vertex: total weight into `to`
};

// One-shot wrappers over AffinityEvaluator.
double asym_affinity(const KnnGraph& graph, std::span<const VertexId> from,
                     std::span<const VertexId> to);
double sym_affinity(const KnnGraph& graph, std::span<const VertexId> a,
                    std::span<const VertexId> b);
double glink_affinity(const KnnGraph& graph, std::span<const VertexId> from,
                      std::span<const VertexId> to);
double glink_sym_affinity(const KnnGraph& graph, std::span<const VertexId> a,
                          std::span<const VertexId> b);

}  // namespace gdl

#endif  // GDL_AFFINITY_HPP
