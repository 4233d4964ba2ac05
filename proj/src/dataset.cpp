#include "gdl/dataset.hpp"

#include <cmath>
#include <string>

#include "gdl/errors.hpp"

namespace gdl {

Dataset Dataset::from_points(std::vector<double> points, std::size_t dim,
                             Metric metric, std::vector<int> labels) {
  if (metric == Metric::kPrecomputed) {
    throw InvalidConfigError("from_points: precomputed metric needs a distance matrix");
  }
  if (dim == 0) {
    throw InvalidConfigError("from_points: dimension must be >= 1");
  }
  if (points.size() % dim != 0) {
    throw InvalidConfigError("from_points: point buffer size is not a multiple of dim");
  }
  const std::size_t n = points.size() / dim;
  if (n < 2) {
    throw InvalidConfigError("from_points: need at least 2 samples");
  }
  if (!labels.empty() && labels.size() != n) {
    throw InvalidConfigError("from_points: label count does not match sample count");
  }
  for (double v : points) {
    if (!std::isfinite(v)) {
      throw InvalidConfigError("from_points: non-finite feature value");
    }
    if (metric == Metric::kChiSquare && v < 0.0) {
      throw InvalidConfigError("from_points: chi-square metric requires features >= 0");
    }
  }
  Dataset d;
  d.n_ = n;
  d.dim_ = dim;
  d.metric_ = metric;
  d.data_ = std::move(points);
  d.labels_ = std::move(labels);
  return d;
}

Dataset Dataset::from_distances(std::vector<double> distances, std::size_t n,
                                std::vector<int> labels) {
  if (n < 2) {
    throw InvalidConfigError("from_distances: need at least 2 samples");
  }
  if (distances.size() != n * n) {
    throw InvalidConfigError("from_distances: matrix size is not n*n");
  }
  if (!labels.empty() && labels.size() != n) {
    throw InvalidConfigError("from_distances: label count does not match sample count");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (distances[i * n + i] != 0.0) {
      throw InvalidConfigError("from_distances: nonzero diagonal at row " + std::to_string(i));
    }
    for (std::size_t j = 0; j < n; ++j) {
      const double v = distances[i * n + j];
      if (!std::isfinite(v) || v < 0.0) {
        throw InvalidConfigError("from_distances: entries must be finite and >= 0");
      }
      if (distances[j * n + i] != v) {
        throw InvalidConfigError("from_distances: matrix is not symmetric");
      }
    }
  }
  Dataset d;
  d.n_ = n;
  d.dim_ = 0;
  d.metric_ = Metric::kPrecomputed;
  d.data_ = std::move(distances);
  d.labels_ = std::move(labels);
  return d;
}

double Dataset::squared_distance(std::size_t i, std::size_t j) const {
  switch (metric_) {
    case Metric::kPrecomputed: {
      const double v = data_[i * n_ + j];
      return v * v;
    }
    case Metric::kEuclidean: {
      const double* a = data_.data() + i * dim_;
      const double* b = data_.data() + j * dim_;
      double acc = 0.0;
      for (std::size_t k = 0; k < dim_; ++k) {
        const double diff = a[k] - b[k];
        acc += diff * diff;
      }
      return acc;
    }
    case Metric::kChiSquare: {
      const double* a = data_.data() + i * dim_;
      const double* b = data_.data() + j * dim_;
      double acc = 0.0;
      for (std::size_t k = 0; k < dim_; ++k) {
        const double sum = a[k] + b[k];
        if (sum > 0.0) {
          const double diff = a[k] - b[k];
          acc += diff * diff / sum;
        }
      }
      return 0.5 * acc;
    }
  }
  return 0.0;
}

}  // namespace gdl
