#ifndef GDL_DATASET_HPP
#define GDL_DATASET_HPP

#include <cstddef>
#include <span>
#include <vector>

namespace gdl {

enum class Metric {
  kEuclidean,
  kChiSquare,
  kPrecomputed,
};

// Immutable sample collection. Holds either an n x d feature matrix together
// with a metric, or an n x n precomputed distance matrix. Labels, when
// present, are arbitrary integer class ids aligned with row order.
class Dataset {
 public:
  // points: row-major n x dim, n = points.size() / dim.
  // Requires n >= 2, dim >= 1; chi-square requires all features >= 0.
  static Dataset from_points(std::vector<double> points, std::size_t dim,
                             Metric metric, std::vector<int> labels = {});

  // distances: row-major n x n, symmetric, zero diagonal, entries >= 0.
  static Dataset from_distances(std::vector<double> distances, std::size_t n,
                                std::vector<int> labels = {});

  std::size_t size() const { return n_; }
  std::size_t dim() const { return dim_; }
  Metric metric() const { return metric_; }

  bool has_labels() const { return !labels_.empty(); }
  const std::vector<int>& labels() const { return labels_; }

  std::span<const double> point(std::size_t i) const {
    return {data_.data() + i * dim_, dim_};
  }

  // Squared distance under the dataset's metric. Precomputed entries are
  // distances, so they get squared here.
  double squared_distance(std::size_t i, std::size_t j) const;

  // Raw stored distance; only valid for precomputed datasets.
  double stored_distance(std::size_t i, std::size_t j) const {
    return data_[i * n_ + j];
  }

 private:
  Dataset() = default;

  std::size_t n_ = 0;
  std::size_t dim_ = 0;  // 0 for precomputed
  Metric metric_ = Metric::kEuclidean;
  std::vector<double> data_;  // points (n*dim) or distance matrix (n*n)
  std::vector<int> labels_;
};

}  // namespace gdl

#endif  // GDL_DATASET_HPP
