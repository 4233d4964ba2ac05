#include "gdl/outlier.hpp"

#include <algorithm>
#include <cstdint>
#include <vector>

#include "gdl/errors.hpp"

namespace gdl {

double connectivity_score(const KnnGraph& graph,
                          std::span<const VertexId> cluster) {
  if (cluster.empty()) {
    throw EmptyClusterError("connectivity_score: empty cluster");
  }
  std::vector<std::uint8_t> member(graph.size(), 0);
  for (VertexId v : cluster) {
    if (v >= graph.size()) {
      throw InvalidConfigError("connectivity_score: vertex out of range");
    }
    member[v] = 1;
  }
  const double m = static_cast<double>(cluster.size());
  double score = 0.0;
  for (VertexId v : cluster) {
    const auto targets = graph.out_neighbors(v);
    const auto out_w = graph.out_weights(v);
    double out = 0.0;
    for (std::size_t e = 0; e < targets.size(); ++e) {
      if (member[targets[e]]) {
        out += out_w[e];
      }
    }
    const auto sources = graph.in_sources(v);
    const auto in_w = graph.in_weights(v);
    double in = 0.0;
    for (std::size_t e = 0; e < sources.size(); ++e) {
      if (member[sources[e]]) {
        in += in_w[e];
      }
    }
    score += in / m + out / m;
  }
  return score;
}

std::size_t largest_gap_split(std::span<const double> descending_scores) {
  if (descending_scores.size() < 2) {
    throw TooFewClustersError("largest_gap_split: need at least two scores");
  }
  std::size_t split = 1;
  double best_gap = descending_scores[0] - descending_scores[1];
  for (std::size_t k = 1; k + 1 < descending_scores.size(); ++k) {
    const double gap = descending_scores[k] - descending_scores[k + 1];
    if (gap > best_gap) {  // earliest maximal gap wins ties
      best_gap = gap;
      split = k + 1;
    }
  }
  return split;
}

ScoredClusters score_clusters(const KnnGraph& graph, const Partition& partition) {
  partition.check_valid();
  if (partition.cluster_count() < 2) {
    throw TooFewClustersError("score_clusters: need at least two clusters");
  }
  ScoredClusters scored;
  scored.entries.reserve(partition.cluster_count());
  for (const auto& [id, members] : partition.clusters) {
    scored.entries.push_back({id, connectivity_score(graph, members)});
  }
  std::sort(scored.entries.begin(), scored.entries.end(),
            [](const ScoredClusters::Entry& a, const ScoredClusters::Entry& b) {
              if (a.score != b.score) {
                return a.score > b.score;
              }
              return a.id < b.id;
            });
  std::vector<double> scores;
  scores.reserve(scored.entries.size());
  for (const auto& e : scored.entries) {
    scores.push_back(e.score);
  }
  scored.split_index = largest_gap_split(scores);
  return scored;
}

OutlierResult eliminate_outliers(const KnnGraph& graph,
                                 const Partition& partition) {
  const ScoredClusters scored = score_clusters(graph, partition);
  OutlierResult result;
  result.kept.assignment.assign(partition.assignment.size(), kNoCluster);
  for (std::size_t i = 0; i < scored.entries.size(); ++i) {
    const ClusterId id = scored.entries[i].id;
    if (i < scored.split_index) {
      const auto& members = partition.clusters.at(id);
      result.kept.clusters[id] = members;
      for (VertexId v : members) {
        result.kept.assignment[v] = id;
      }
    } else {
      result.removed.push_back(id);
    }
  }
  std::sort(result.removed.begin(), result.removed.end());
  return result;
}

}  // namespace gdl
