#include "gdl/eval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <unordered_map>
#include <vector>

#include "gdl/errors.hpp"

namespace gdl {

namespace {

void check_pair(std::span<const int> predicted, std::span<const int> truth) {
  if (predicted.empty() || predicted.size() != truth.size()) {
    throw InvalidConfigError("eval: labelings must be nonempty and equally sized");
  }
}

// First-occurrence relabeling; two labelings describe the same partition iff
// their canonical forms match.
std::vector<int> canonical_labels(std::span<const int> labels) {
  std::unordered_map<int, int> remap;
  std::vector<int> out;
  out.reserve(labels.size());
  for (int v : labels) {
    const auto [it, inserted] = remap.emplace(v, static_cast<int>(remap.size()));
    (void)inserted;
    out.push_back(it->second);
  }
  return out;
}

bool same_partition(std::span<const int> a, std::span<const int> b) {
  return canonical_labels(a) == canonical_labels(b);
}

// Minimum-cost perfect matching on a square cost matrix
// (shortest augmenting paths with potentials).
double hungarian_min(const std::vector<std::vector<double>>& cost) {
  const int n = static_cast<int>(cost.size());
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<int> match(n + 1, 0), way(n + 1, 0);
  for (int i = 1; i <= n; ++i) {
    match[0] = i;
    int j0 = 0;
    std::vector<double> minv(n + 1, inf);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      const int i0 = match[j0];
      int j1 = -1;
      double delta = inf;
      for (int j = 1; j <= n; ++j) {
        if (!used[j]) {
          const double cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
          if (cur < minv[j]) {
            minv[j] = cur;
            way[j] = j0;
          }
          if (minv[j] < delta) {
            delta = minv[j];
            j1 = j;
          }
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[match[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (match[j0] != 0);
    do {
      const int j1 = way[j0];
      match[j0] = match[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  double total = 0.0;
  for (int j = 1; j <= n; ++j) {
    if (match[j] != 0) {
      total += cost[match[j] - 1][j - 1];
    }
  }
  return total;
}

}  // namespace

double nmi(std::span<const int> predicted, std::span<const int> truth) {
  check_pair(predicted, truth);
  if (same_partition(predicted, truth)) {
    return 1.0;  // exact by definition, the float path can land an ulp off
  }
  const double n = static_cast<double>(predicted.size());
  std::map<std::pair<int, int>, double> cells;
  std::map<int, double> pred_count, true_count;
  for (std::size_t i = 0; i < predicted.size(); ++i) {
    cells[{predicted[i], truth[i]}] += 1.0;
    pred_count[predicted[i]] += 1.0;
    true_count[truth[i]] += 1.0;
  }
  double hp = 0.0;
  for (const auto& [label, c] : pred_count) {
    (void)label;
    const double p = c / n;
    hp -= p * std::log(p);  // p > 0 here; 0 log 0 terms never materialize
  }
  double ht = 0.0;
  for (const auto& [label, c] : true_count) {
    (void)label;
    const double p = c / n;
    ht -= p * std::log(p);
  }
  if (hp == 0.0 || ht == 0.0) {
    // single-label degenerate case; identical partitions returned 1.0 above
    return 0.0;
  }
  double mi = 0.0;
  for (const auto& [cell, c] : cells) {
    const double joint = c / n;
    mi += joint * std::log(c * n / (pred_count[cell.first] * true_count[cell.second]));
  }
  const double norm = (hp == ht) ? hp : std::sqrt(hp * ht);
  return std::clamp(mi / norm, 0.0, 1.0);
}

double nmi(const LabeledResult& result) {
  return nmi(std::span<const int>(result.predicted), std::span<const int>(result.truth));
}

double clustering_error(std::span<const int> predicted, std::span<const int> truth) {
  check_pair(predicted, truth);
  std::map<int, int> pred_index, true_index;
  for (int v : predicted) {
    pred_index.emplace(v, static_cast<int>(pred_index.size()));
  }
  for (int v : truth) {
    true_index.emplace(v, static_cast<int>(true_index.size()));
  }
  const std::size_t dim = std::max(pred_index.size(), true_index.size());
  // counts are negated: the best one-to-one matching maximizes agreement
  std::vector<std::vector<double>> cost(dim, std::vector<double>(dim, 0.0));
  for (std::size_t i = 0; i < predicted.size(); ++i) {
    cost[pred_index[predicted[i]]][true_index[truth[i]]] -= 1.0;
  }
  const double matched = -hungarian_min(cost);
  return 1.0 - matched / static_cast<double>(predicted.size());
}

double clustering_error(const LabeledResult& result) {
  return clustering_error(std::span<const int>(result.predicted),
                          std::span<const int>(result.truth));
}

double f_score(std::span<const VertexId> predicted_inliers,
               std::span<const VertexId> true_inliers) {
  std::vector<VertexId> pred(predicted_inliers.begin(), predicted_inliers.end());
  std::vector<VertexId> real(true_inliers.begin(), true_inliers.end());
  std::sort(pred.begin(), pred.end());
  pred.erase(std::unique(pred.begin(), pred.end()), pred.end());
  std::sort(real.begin(), real.end());
  real.erase(std::unique(real.begin(), real.end()), real.end());
  std::vector<VertexId> both;
  std::set_intersection(pred.begin(), pred.end(), real.begin(), real.end(),
                        std::back_inserter(both));
  const double tp = static_cast<double>(both.size());
  const double precision = pred.empty() ? 0.0 : tp / static_cast<double>(pred.size());
  const double recall = real.empty() ? 0.0 : tp / static_cast<double>(real.size());
  if (precision + recall == 0.0) {
    return 0.0;
  }
  return 2.0 * precision * recall / (precision + recall);
}

}  // namespace gdl
