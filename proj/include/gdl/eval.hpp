#ifndef GDL_EVAL_HPP
#define GDL_EVAL_HPP

#include <span>
#include <vector>

#include "gdl/partition.hpp"

namespace gdl {

// Predicted cluster labels next to ground-truth class labels, aligned by
// position. Label values are arbitrary ints; only the grouping matters.
struct LabeledResult {
  std::vector<int> predicted;
  std::vector<int> truth;
};

// Normalized mutual information with sqrt normalization:
//   MI(P, T) / sqrt(H(P) * H(T)),  0 * log 0 = 0.
// If either labeling has a single label the normalizer vanishes; by
// convention the result is 1 when the labelings are identical as partitions
// and 0 otherwise. Identical partitions always return exactly 1.0.
double nmi(std::span<const int> predicted, std::span<const int> truth);
double nmi(const LabeledResult& result);

// 1 - accuracy of the best one-to-one matching between predicted clusters
// and true classes (optimal assignment over the contingency table; sides
// with fewer labels are padded). 0 iff the labelings are identical up to
// renaming.
double clustering_error(std::span<const int> predicted, std::span<const int> truth);
double clustering_error(const LabeledResult& result);

// F1 over inlier sets: harmonic mean of precision and recall of
// predicted_inliers against true_inliers; 0 when precision + recall == 0.
double f_score(std::span<const VertexId> predicted_inliers,
               std::span<const VertexId> true_inliers);

}  // namespace gdl

#endif  // GDL_EVAL_HPP
