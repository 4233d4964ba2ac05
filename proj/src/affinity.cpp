#include "gdl/affinity.hpp"

#include <string>

#include "gdl/errors.hpp"

namespace gdl {

namespace {

void check_vertex(const KnnGraph& graph, VertexId v) {
  if (v >= graph.size()) {
    throw InvalidConfigError("affinity: vertex " + std::to_string(v) + " out of range");
  }
}

void check_nonempty(std::span<const VertexId> cluster) {
  if (cluster.empty()) {
    throw EmptyClusterError("affinity: empty vertex set");
  }
}

}  // namespace

double avg_indegree(const KnnGraph& graph, VertexId v,
                    std::span<const VertexId> cluster) {
  check_vertex(graph, v);
  check_nonempty(cluster);
  double sum = 0.0;
  for (VertexId j : cluster) {
    check_vertex(graph, j);
    sum += graph.weight(j, v);
  }
  return sum / static_cast<double>(cluster.size());
}

double avg_outdegree(const KnnGraph& graph, VertexId v,
                     std::span<const VertexId> cluster) {
  check_vertex(graph, v);
  check_nonempty(cluster);
  double sum = 0.0;
  for (VertexId j : cluster) {
    check_vertex(graph, j);
    sum += graph.weight(v, j);
  }
  return sum / static_cast<double>(cluster.size());
}

double vertex_cluster_affinity(const KnnGraph& graph, VertexId v,
                               std::span<const VertexId> cluster) {
  return avg_indegree(graph, v, cluster) * avg_outdegree(graph, v, cluster);
}

AffinityEvaluator::AffinityEvaluator(const KnnGraph& graph)
    : graph_(&graph), mark_(graph.size(), 0), out_sum_(graph.size(), 0.0) {}

void AffinityEvaluator::mark_sets(std::span<const VertexId> from,
                                  std::span<const VertexId> to) {
  check_nonempty(from);
  check_nonempty(to);
  std::size_t marked = 0;
  try {
    for (VertexId v : from) {
      check_vertex(*graph_, v);
      if (mark_[v] != 0) {
        throw InvalidConfigError("affinity: duplicate vertex " + std::to_string(v) +
                                 " in a set");
      }
      mark_[v] = 1;
      ++marked;
    }
    for (VertexId v : to) {
      check_vertex(*graph_, v);
      if (mark_[v] == 1) {
        throw OverlappingClustersError("affinity: vertex " + std::to_string(v) +
                                       " is in both sets");
      }
      if (mark_[v] != 0) {
        throw InvalidConfigError("affinity: duplicate vertex " + std::to_string(v) +
                                 " in a set");
      }
      mark_[v] = 2;
      ++marked;
    }
  } catch (...) {
    for (VertexId v : from) {
      if (marked == 0) break;
      mark_[v] = 0;
      --marked;
    }
    for (VertexId v : to) {
      if (marked == 0) break;
      mark_[v] = 0;
      --marked;
    }
    throw;
  }
}

void AffinityEvaluator::clear_marks(std::span<const VertexId> from,
                                    std::span<const VertexId> to) {
  for (VertexId v : from) {
    mark_[v] = 0;
  }
  for (VertexId v : to) {
    mark_[v] = 0;
  }
}

double AffinityEvaluator::asym(std::span<const VertexId> from,
                               std::span<const VertexId> to) {
  mark_sets(from, to);
  // u_i = weight of i's out-edges landing in `to`, for each i in `from`
  for (VertexId i : from) {
    const auto targets = graph_->out_neighbors(i);
    const auto weights = graph_->out_weights(i);
    double s = 0.0;
    for (std::size_t e = 0; e < targets.size(); ++e) {
      if (mark_[targets[e]] == 2) {
        s += weights[e];
      }
    }
    out_sum_[i] = s;
  }
  // acc = sum over edges `to` -> `from` of w * u, i.e. 1^T W_{to,from} u
  double acc = 0.0;
  for (VertexId i : to) {
    const auto targets = graph_->out_neighbors(i);
    const auto weights = graph_->out_weights(i);
    for (std::size_t e = 0; e < targets.size(); ++e) {
      if (mark_[targets[e]] == 1) {
        acc += weights[e] * out_sum_[targets[e]];
      }
    }
  }
  clear_marks(from, to);
  const double m = static_cast<double>(to.size());
  return acc / (m * m);
}

double AffinityEvaluator::sym(std::span<const VertexId> a,
                              std::span<const VertexId> b) {
  check_nonempty(a);
  check_nonempty(b);
  // canonical order keyed on the smaller minimum vertex; disjoint sorted sets
  // cannot share their front element
  const bool a_low = a.front() < b.front();
  const auto lo = a_low ? a : b;
  const auto hi = a_low ? b : a;
  return asym(hi, lo) + asym(lo, hi);
}

double AffinityEvaluator::glink_asym(std::span<const VertexId> from,
                                     std::span<const VertexId> to) {
  mark_sets(from, to);
  const double m = static_cast<double>(to.size());
  double acc = 0.0;
  for (VertexId i : from) {
    const auto targets = graph_->out_neighbors(i);
    const auto out_w = graph_->out_weights(i);
    double out = 0.0;
    for (std::size_t e = 0; e < targets.size(); ++e) {
      if (mark_[targets[e]] == 2) {
        out += out_w[e];
      }
    }
    const auto sources = graph_->in_sources(i);
    const auto in_w = graph_->in_weights(i);
    double in = 0.0;
    for (std::size_t e = 0; e < sources.size(); ++e) {
      if (mark_[sources[e]] == 2) {
        in += in_w[e];
      }
    }
    acc += (in / m + out / m) / 2.0;
  }
  clear_marks(from, to);
  return acc / static_cast<double>(from.size());
}

double AffinityEvaluator::glink_sym(std::span<const VertexId> a,
                                    std::span<const VertexId> b) {
  check_nonempty(a);
  check_nonempty(b);
  const bool a_low = a.front() < b.front();
  const auto lo = a_low ? a : b;
  const auto hi = a_low ? b : a;
  return glink_asym(hi, lo) + glink_asym(lo, hi);
}

double asym_affinity(const KnnGraph& graph, std::span<const VertexId> from,
                     std::span<const VertexId> to) {
  AffinityEvaluator eval(graph);
  return eval.asym(from, to);
}

double sym_affinity(const KnnGraph& graph, std::span<const VertexId> a,
                    std::span<const VertexId> b) {
  AffinityEvaluator eval(graph);
  return eval.sym(a, b);
}

double glink_affinity(const KnnGraph& graph, std::span<const VertexId> from,
                      std::span<const VertexId> to) {
  AffinityEvaluator eval(graph);
  return eval.glink_asym(from, to);
}

double glink_sym_affinity(const KnnGraph& graph, std::span<const VertexId> a,
                          std::span<const VertexId> b) {
  AffinityEvaluator eval(graph);
  return eval.glink_sym(a, b);
}

}  // namespace gdl
