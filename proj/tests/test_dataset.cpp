#include <cmath>
#include <vector>

#include <doctest.h>

#include "gdl/dataset.hpp"
#include "gdl/errors.hpp"

using gdl::Dataset;
using gdl::Metric;

TEST_CASE("points dataset exposes size, dim and exact squared distances") {
  const Dataset d = Dataset::from_points({0.0, 0.0, 3.0, 4.0, 1.0, 1.0}, 2,
                                         Metric::kEuclidean);
  CHECK(d.size() == 3);
  CHECK(d.dim() == 2);
  CHECK(!d.has_labels());
  CHECK(d.squared_distance(0, 1) == 25.0);
  CHECK(d.squared_distance(1, 0) == 25.0);
  CHECK(d.squared_distance(0, 2) == 2.0);
  CHECK(d.squared_distance(0, 0) == 0.0);
}

TEST_CASE("labels ride along when provided and must match the sample count") {
  const Dataset d = Dataset::from_points({0.0, 1.0, 2.0, 3.0}, 2,
                                         Metric::kEuclidean, {7, 9});
  REQUIRE(d.has_labels());
  CHECK(d.labels() == std::vector<int>{7, 9});
  CHECK_THROWS_AS(Dataset::from_points({0.0, 1.0, 2.0, 3.0}, 2,
                                       Metric::kEuclidean, {7}),
                  gdl::InvalidConfigError);
}

TEST_CASE("point construction validates shape and finiteness") {
  CHECK_THROWS_AS(Dataset::from_points({1.0, 2.0, 3.0}, 2, Metric::kEuclidean),
                  gdl::InvalidConfigError);  // not a multiple of dim
  CHECK_THROWS_AS(Dataset::from_points({1.0, 2.0}, 2, Metric::kEuclidean),
                  gdl::InvalidConfigError);  // single sample
  CHECK_THROWS_AS(Dataset::from_points({}, 3, Metric::kEuclidean),
                  gdl::InvalidConfigError);
  CHECK_THROWS_AS(Dataset::from_points({1.0, 2.0}, 0, Metric::kEuclidean),
                  gdl::InvalidConfigError);  // zero dimension
}

TEST_CASE("non-finite features are rejected") {
  CHECK_THROWS_AS(Dataset::from_points({0.0, std::nan(""), 1.0, 2.0}, 2,
                                       Metric::kEuclidean),
                  gdl::InvalidConfigError);
  CHECK_THROWS_AS(Dataset::from_points({0.0, 1.0, INFINITY, 2.0}, 2,
                                       Metric::kEuclidean),
                  gdl::InvalidConfigError);
}

TEST_CASE("chi-square metric requires nonnegative features") {
  CHECK_THROWS_AS(Dataset::from_points({0.5, -0.1, 0.2, 0.3}, 2,
                                       Metric::kChiSquare),
                  gdl::InvalidConfigError);
  const Dataset d = Dataset::from_points({0.5, 0.1, 0.2, 0.3}, 2,
                                         Metric::kChiSquare);
  // 0.5 * ((0.3^2 / 0.7) + (0.2^2 / 0.4))
  CHECK(d.squared_distance(0, 1) ==
        doctest::Approx(0.5 * (0.09 / 0.7 + 0.04 / 0.4)).epsilon(1e-15));
}

TEST_CASE("chi-square treats 0/0 coordinates as contributing nothing") {
  const Dataset d = Dataset::from_points({0.0, 1.0, 0.0, 3.0}, 2,
                                         Metric::kChiSquare);
  // first coordinate is 0 on both sides; only the second contributes
  CHECK(d.squared_distance(0, 1) == doctest::Approx(0.5 * 4.0 / 4.0).epsilon(1e-15));
}

TEST_CASE("from_points refuses the precomputed metric") {
  CHECK_THROWS_AS(Dataset::from_points({0.0, 1.0, 2.0, 3.0}, 2,
                                       Metric::kPrecomputed),
                  gdl::InvalidConfigError);
}

TEST_CASE("precomputed distances square the stored entry") {
  const Dataset d = Dataset::from_distances({0.0, 2.0, 2.0, 0.0}, 2);
  CHECK(d.metric() == Metric::kPrecomputed);
  CHECK(d.squared_distance(0, 1) == 4.0);
  CHECK(d.stored_distance(0, 1) == 2.0);
}

TEST_CASE("distance matrices must be square, symmetric, zero-diagonal, nonnegative") {
  CHECK_THROWS_AS(Dataset::from_distances({0.0, 1.0, 1.0}, 2),
                  gdl::InvalidConfigError);
  CHECK_THROWS_AS(Dataset::from_distances({0.0, 1.0, 2.0, 0.0}, 2),
                  gdl::InvalidConfigError);  // asymmetric
  CHECK_THROWS_AS(Dataset::from_distances({0.5, 1.0, 1.0, 0.0}, 2),
                  gdl::InvalidConfigError);  // nonzero diagonal
  CHECK_THROWS_AS(Dataset::from_distances({0.0, -1.0, -1.0, 0.0}, 2),
                  gdl::InvalidConfigError);  // negative entry
}
