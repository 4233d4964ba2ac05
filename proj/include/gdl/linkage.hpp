#ifndef GDL_LINKAGE_HPP
#define GDL_LINKAGE_HPP

#include <cstddef>
#include <map>
#include <vector>

#include "gdl/affinity.hpp"
#include "gdl/knn_graph.hpp"
#include "gdl/partition.hpp"

namespace gdl {

struct MergeStep {
  ClusterId a = 0;       // smaller id of the merged pair
  ClusterId b = 0;       // larger id
  ClusterId merged = 0;  // fresh id of the union
  double affinity = 0.0;
  bool degenerate = false;  // stall-rule merge (AGDL only)
};

struct MergeTrace {
  std::vector<MergeStep> steps;  // exactly n_0 - target entries
  Partition final;
};

// All engines: agglomerate `seed` down to `target` clusters over `graph`.
// Ties on the maximum affinity break toward the lexicographically smallest
// (min id, max id) pair; zero affinity is a valid maximum. Merged clusters
// get fresh ids starting at max(seed id) + 1.
// Throws TargetExceedsSeedsError if target > seed.cluster_count(),
// InvalidConfigError if target < 1 or the seed partition is malformed.

// Reference engine: keeps the full symmetric affinity table over live
// clusters and rescans all of it for every merge. Cubic in cluster count.
MergeTrace gdl_cluster(const KnnGraph& graph, const Partition& seed,
                       std::size_t target);

// Table engine with incremental updates: outgoing affinities of a merged
// cluster are sums of its parents' rows, incoming ones are evaluated fresh;
// the maximum comes from a lazy max-heap. Quadratic, same merge sequence as
// gdl_cluster up to floating-point reassociation.
MergeTrace gdl_u_cluster(const KnnGraph& graph, const Partition& seed,
                         std::size_t target);

// Neighbor-set engine: each cluster tracks its kc best partners and merges
// are chosen among tracked pairs only. With kc >= seed count - 1 it degrades
// to the exact engines. Requires kc >= 1.
MergeTrace agdl_cluster(const KnnGraph& graph, const Partition& seed,
                        std::size_t target, std::size_t kc);

// Average-linkage baseline on the same directed graph (glink affinity in the
// reference table engine).
MergeTrace glink_cluster(const KnnGraph& graph, const Partition& seed,
                         std::size_t target);

// Step-wise AGDL with its neighbor-set state open for inspection.
class AgdlEngine {
 public:
  struct Neighbor {
    ClusterId id;
    double affinity;
  };

  AgdlEngine(const KnnGraph& graph, const Partition& seed, std::size_t target,
             std::size_t kc);

  bool done() const;
  void step();                   // one merge
  MergeTrace take_trace();       // valid once done()
  Partition current_partition() const;
  const std::map<ClusterId, std::vector<Neighbor>>& neighbor_sets() const {
    return sets_;
  }

 private:
  double fresh_sym(ClusterId a, ClusterId b);
  void insert_neighbor(std::vector<Neighbor>& set, Neighbor entry);

  const KnnGraph* graph_;
  AffinityEvaluator eval_;
  std::size_t target_;
  std::size_t kc_;
  ClusterId next_id_;
  std::map<ClusterId, std::vector<VertexId>> members_;
  std::map<ClusterId, std::vector<Neighbor>> sets_;
  std::vector<MergeStep> steps_;
};

}  // namespace gdl

#endif  // GDL_LINKAGE_HPP
