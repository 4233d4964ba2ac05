#ifndef GDL_PARTITION_HPP
#define GDL_PARTITION_HPP

#include <cstdint>
#include <limits>
#include <map>
#include <vector>

namespace gdl {

using VertexId = std::uint32_t;
using ClusterId = std::uint32_t;

// Assignment value for vertices that belong to no cluster (removed outliers).
inline constexpr ClusterId kNoCluster = std::numeric_limits<ClusterId>::max();

// Disjoint grouping of vertices. Member vectors are kept sorted ascending.
// Engines never reuse a ClusterId: merged clusters receive fresh ids above
// every id seen so far.
struct Partition {
  std::map<ClusterId, std::vector<VertexId>> clusters;
  std::vector<ClusterId> assignment;  // size n; kNoCluster = unassigned

  std::size_t vertex_count() const { return assignment.size(); }
  std::size_t cluster_count() const { return clusters.size(); }

  // Builds clusters from an assignment vector (no kNoCluster entries).
  static Partition from_assignment(std::vector<ClusterId> assignment);

  // Compacts cluster ids to 0..k-1, ordered by smallest member vertex.
  // Unassigned vertices stay kNoCluster.
  std::vector<ClusterId> compact_labels() const;

  // Throws InvalidConfigError unless clusters are nonempty, disjoint, sorted,
  // consistent with assignment, and cover every assigned vertex.
  void check_valid() const;
};

}  // namespace gdl

#endif  // GDL_PARTITION_HPP
