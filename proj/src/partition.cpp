#include "gdl/partition.hpp"

#include <algorithm>
#include <string>

#include "gdl/errors.hpp"

namespace gdl {

Partition Partition::from_assignment(std::vector<ClusterId> assignment) {
  Partition p;
  for (std::size_t v = 0; v < assignment.size(); ++v) {
    const ClusterId c = assignment[v];
    if (c == kNoCluster) {
      throw InvalidConfigError("from_assignment: unassigned vertex " + std::to_string(v));
    }
    p.clusters[c].push_back(static_cast<VertexId>(v));
  }
  p.assignment = std::move(assignment);
  return p;
}

std::vector<ClusterId> Partition::compact_labels() const {
  std::vector<ClusterId> labels(assignment.size(), kNoCluster);
  ClusterId next = 0;
  // clusters is keyed by id; relabel in order of smallest member instead.
  std::vector<const std::vector<VertexId>*> by_min;
  by_min.reserve(clusters.size());
  for (const auto& [id, members] : clusters) {
    by_min.push_back(&members);
  }
  std::sort(by_min.begin(), by_min.end(),
            [](const auto* a, const auto* b) { return a->front() < b->front(); });
  for (const auto* members : by_min) {
    for (VertexId v : *members) {
      labels[v] = next;
    }
    ++next;
  }
  return labels;
}

void Partition::check_valid() const {
  std::size_t covered = 0;
  for (const auto& [id, members] : clusters) {
    if (members.empty()) {
      throw InvalidConfigError("partition: empty cluster " + std::to_string(id));
    }
    if (!std::is_sorted(members.begin(), members.end())) {
      throw InvalidConfigError("partition: unsorted members in cluster " + std::to_string(id));
    }
    VertexId prev = kNoCluster;
    for (VertexId v : members) {
      if (v >= assignment.size()) {
        throw InvalidConfigError("partition: vertex out of range in cluster " + std::to_string(id));
      }
      if (v == prev) {
        throw InvalidConfigError("partition: duplicate vertex in cluster " + std::to_string(id));
      }
      if (assignment[v] != id) {
        throw InvalidConfigError("partition: assignment disagrees for vertex " + std::to_string(v));
      }
      prev = v;
    }
    covered += members.size();
  }
  std::size_t assigned = 0;
  for (ClusterId c : assignment) {
    if (c != kNoCluster) {
      ++assigned;
      if (clusters.find(c) == clusters.end()) {
        throw InvalidConfigError("partition: assignment references unknown cluster " + std::to_string(c));
      }
    }
  }
  if (covered != assigned) {
    throw InvalidConfigError("partition: clusters do not cover assigned vertices exactly");
  }
}

}  // namespace gdl
