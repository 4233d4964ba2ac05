#include <utility>
#include <vector>

#include <doctest.h>

#include "gdl/errors.hpp"
#include "gdl/knn_graph.hpp"
#include "gdl/outlier.hpp"
#include "gdl/partition.hpp"
#include "support/generators.hpp"

using gdl::ClusterId;
using gdl::KnnGraph;
using gdl::Partition;
using gdl::VertexId;
using Row = std::vector<std::pair<VertexId, double>>;
using Ids = std::vector<VertexId>;

TEST_CASE("connectivity sums average within-cluster degrees") {
  // 0 <-> 1 at 0.5 each way, 2 dangling off 1, 3 isolated
  const std::vector<Row> edges = {
      {{1, 0.5}},
      {{0, 0.5}, {2, 0.2}},
      {},
      {},
  };
  const KnnGraph g = KnnGraph::from_edges(4, edges);

  // a singleton has no internal edges at all
  CHECK(gdl::connectivity_score(g, Ids{3}) == 0.0);
  // {0,1}: each member has avg in 0.25 and avg out 0.25
  CHECK(gdl::connectivity_score(g, Ids{0, 1}) == doctest::Approx(1.0).epsilon(1e-15));
  // {1,2}: only 1 -> 2 inside, in 0.1 + out 0.1
  CHECK(gdl::connectivity_score(g, Ids{1, 2}) == doctest::Approx(0.2).epsilon(1e-15));
  // edges leaving the cluster are invisible to it
  CHECK(gdl::connectivity_score(g, Ids{0, 1}) ==
        gdl::connectivity_score(KnnGraph::from_edges(
                                    2, std::vector<Row>{{{1, 0.5}}, {{0, 0.5}}}),
                                Ids{0, 1}));
}

TEST_CASE("a dense block outscores a sparse one") {
  // block {0,1,2} fully mutually connected at 0.8; block {3,4} weakly tied
  const std::vector<Row> edges = {
      {{1, 0.8}, {2, 0.8}},
      {{0, 0.8}, {2, 0.8}},
      {{0, 0.8}, {1, 0.8}},
      {{4, 0.05}},
      {{3, 0.05}},
  };
  const KnnGraph g = KnnGraph::from_edges(5, edges);
  CHECK(gdl::connectivity_score(g, Ids{0, 1, 2}) >
        gdl::connectivity_score(g, Ids{3, 4}));
}

TEST_CASE("the largest descending gap picks the split point") {
  CHECK(gdl::largest_gap_split(std::vector<double>{10.0, 9.5, 0.2, 0.1}) == 2);
  CHECK(gdl::largest_gap_split(std::vector<double>{5.0, 1.0}) == 1);
  // ties on the gap go to the earliest split
  CHECK(gdl::largest_gap_split(std::vector<double>{4.0, 2.0, 0.0}) == 1);
  // equal scores leave only zero gaps; the earliest split still wins
  CHECK(gdl::largest_gap_split(std::vector<double>{3.0, 3.0, 3.0}) == 1);
  CHECK_THROWS_AS(gdl::largest_gap_split(std::vector<double>{1.0}),
                  gdl::TooFewClustersError);
  CHECK_THROWS_AS(gdl::largest_gap_split(std::vector<double>{}),
                  gdl::TooFewClustersError);
}

TEST_CASE("score_clusters orders by score then id and is relabel-invariant") {
  const std::vector<Row> edges = {
      {{1, 0.9}}, {{0, 0.9}},   // tight pair
      {{3, 0.1}}, {{2, 0.1}},   // loose pair
      {},                        // singleton
  };
  const KnnGraph g = KnnGraph::from_edges(5, edges);
  const Partition p = Partition::from_assignment({0, 0, 1, 1, 2});
  const auto scored = gdl::score_clusters(g, p);
  REQUIRE(scored.entries.size() == 3);
  CHECK(scored.entries[0].id == 0);
  CHECK(scored.entries[1].id == 1);
  CHECK(scored.entries[2].id == 2);
  CHECK(scored.entries[0].score == doctest::Approx(1.8).epsilon(1e-15));
  CHECK(scored.entries[2].score == 0.0);
  // the big drop sits right after the tight pair
  CHECK(scored.split_index == 1);

  SUBCASE("renaming clusters permutes ids but not scores or the split") {
    const Partition q = Partition::from_assignment({7, 7, 3, 3, 5});
    const auto rescored = gdl::score_clusters(g, q);
    REQUIRE(rescored.entries.size() == 3);
    CHECK(rescored.entries[0].id == 7);
    CHECK(rescored.entries[0].score == scored.entries[0].score);
    CHECK(rescored.split_index == scored.split_index);
  }

  SUBCASE("fewer than two clusters cannot be split") {
    const Partition one = Partition::from_assignment({0, 0, 0, 0, 0});
    CHECK_THROWS_AS(gdl::score_clusters(g, one), gdl::TooFewClustersError);
    CHECK_THROWS_AS(gdl::eliminate_outliers(g, one), gdl::TooFewClustersError);
  }
}

TEST_CASE("eliminate_outliers drops everything below the gap") {
  // two strong blocks and two junk clusters
  const std::vector<Row> edges = {
      {{1, 0.9}}, {{0, 0.9}},
      {{3, 0.8}}, {{2, 0.8}},
      {{5, 0.01}}, {{4, 0.01}},
      {},
  };
  const KnnGraph g = KnnGraph::from_edges(7, edges);
  const Partition p = Partition::from_assignment({0, 0, 1, 1, 2, 2, 3});
  const auto result = gdl::eliminate_outliers(g, p);

  CHECK(result.removed == std::vector<ClusterId>{2, 3});
  CHECK(result.kept.clusters.count(0) == 1);
  CHECK(result.kept.clusters.count(1) == 1);
  CHECK(result.kept.clusters.count(2) == 0);
  // removed vertices stay unassigned rather than being redistributed
  CHECK(result.kept.assignment[4] == gdl::kNoCluster);
  CHECK(result.kept.assignment[5] == gdl::kNoCluster);
  CHECK(result.kept.assignment[6] == gdl::kNoCluster);
  CHECK(result.kept.assignment[0] == 0);
  CHECK_NOTHROW(result.kept.check_valid());
}

TEST_CASE("elimination keeps at least one cluster and removes at least one") {
  testgen::Rng rng(2718);
  for (int rep = 0; rep < 10; ++rep) {
    const std::size_t n = 30 + rng.pick(0, 30);
    const KnnGraph g = testgen::random_graph(rng, n, 3);
    // random partition into 4..8 clusters by vertex stripes
    const std::size_t m = 4 + rng.pick(0, 4);
    std::vector<ClusterId> assign(n);
    for (std::size_t v = 0; v < n; ++v) {
      assign[v] = static_cast<ClusterId>(v % m);
    }
    const Partition p = Partition::from_assignment(std::move(assign));
    const auto result = gdl::eliminate_outliers(g, p);
    CAPTURE(rep);
    CHECK(result.removed.size() >= 1);
    CHECK(result.removed.size() < m);
    CHECK(result.kept.cluster_count() + result.removed.size() == m);
    CHECK_NOTHROW(result.kept.check_valid());
    // removed ids are ascending and disjoint from kept ids
    for (std::size_t i = 1; i < result.removed.size(); ++i) {
      CHECK(result.removed[i - 1] < result.removed[i]);
    }
    for (const ClusterId c : result.removed) {
      CHECK(result.kept.clusters.count(c) == 0);
    }
  }
}
