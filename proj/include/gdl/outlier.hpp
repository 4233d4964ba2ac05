#ifndef GDL_OUTLIER_HPP
#define GDL_OUTLIER_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "gdl/knn_graph.hpp"
#include "gdl/partition.hpp"

namespace gdl {

// Intra-cluster connectivity: sum over members of average indegree plus
// average outdegree restricted to the cluster. Singletons without self-loops
// score 0; loosely stitched clusters score near 0.
double connectivity_score(const KnnGraph& graph,
                          std::span<const VertexId> cluster);

struct ScoredClusters {
  struct Entry {
    ClusterId id;
    double score;
  };
  // Sorted by (score desc, id asc).
  std::vector<Entry> entries;
  // Clusters at [split_index, end) fall below the largest consecutive score
  // gap; 1 <= split_index < entries.size().
  std::size_t split_index = 0;
};

// Index of the first entry after the largest consecutive gap in a
// descending score sequence; earliest maximal gap wins ties.
std::size_t largest_gap_split(std::span<const double> descending_scores);

// Scores every cluster and locates the split. Requires >= 2 clusters.
ScoredClusters score_clusters(const KnnGraph& graph, const Partition& partition);

struct OutlierResult {
  // Surviving clusters; vertices of removed clusters are kNoCluster in
  // kept.assignment and are not reassigned.
  Partition kept;
  std::vector<ClusterId> removed;  // ascending
};

// Drops every cluster below the largest connectivity gap. Keeps at least one
// cluster and removes at least one. Throws TooFewClustersError for < 2.
OutlierResult eliminate_outliers(const KnnGraph& graph,
                                 const Partition& partition);

}  // namespace gdl

#endif  // GDL_OUTLIER_HPP
