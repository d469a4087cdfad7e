#include "doctest.h"

#include "oracle.hpp"
#include "spatent/error.hpp"
#include "spatent/lattice.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

using namespace spatent;

TEST_SUITE("lattice") {

TEST_CASE("grid construction validates shape and codes") {
  CHECK_THROWS_AS(CategoricalGrid(2, 2, 2, {1, 2, 1}), InputError);
  CHECK_THROWS_AS(CategoricalGrid(2, 2, 2, {1, 2, 3, 1}), InputError);
  CHECK_THROWS_AS(CategoricalGrid(2, 2, 2, {1, 0, 2, 1}), InputError);
  CHECK_THROWS_AS(CategoricalGrid(0, 2, 2, {}), InputError);
  CHECK_THROWS_AS(CategoricalGrid(1, 1, 0, {1}), InputError);

  const CategoricalGrid g(2, 3, 3, {1, 2, 2, 1, 1, 1});
  CHECK(g.size() == 6);
  CHECK(g.at(1, 2) == 1);
  CHECK(g.at(0, 1) == 2);
  CHECK(g.category_counts() == std::vector<Index>{4, 2, 0});
}

TEST_CASE("absent categories still count towards I") {
  const auto g = CategoricalGrid::filled(3, 3, 5, 2);
  CHECK(g.num_categories() == 5);
  CHECK(g.category_counts() == std::vector<Index>{0, 9, 0, 0, 0});
}

TEST_CASE("pixel distance between centroids") {
  const auto g = CategoricalGrid::filled(50, 50, 2, 1);
  CHECK(pixel_distance(0, 1, g) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(pixel_distance(0, 51, g) == doctest::Approx(1.41421356).epsilon(1e-8));
  CHECK(pixel_distance(0, 49 * 50 + 49, g) == doctest::Approx(69.29646456).epsilon(1e-9));
  CHECK(pixel_distance(7, 7, g) == 0.0);
  CHECK_THROWS_AS(pixel_distance(0, 2500, g), InputError);
  CHECK_THROWS_AS(pixel_distance(-1, 3, g), InputError);
  CHECK(g.max_pair_distance() == doctest::Approx(49.0 * std::sqrt(2.0)));
}

TEST_CASE("centroids sit at half-integer coordinates") {
  const auto g = CategoricalGrid::filled(3, 4, 2, 1);
  CHECK(g.centroid(0).isApprox(Eigen::Vector2d(0.5, 0.5)));
  CHECK(g.centroid(6).isApprox(Eigen::Vector2d(1.5, 2.5)));
}

TEST_CASE("pixel distance is a metric on random triples") {
  Rng rng(11);
  const auto g = CategoricalGrid::filled(17, 23, 2, 1);
  for (int t = 0; t < 500; ++t) {
    const auto u = static_cast<Index>(rng.below(static_cast<std::uint64_t>(g.size())));
    const auto v = static_cast<Index>(rng.below(static_cast<std::uint64_t>(g.size())));
    const auto w = static_cast<Index>(rng.below(static_cast<std::uint64_t>(g.size())));
    CHECK(pixel_distance(u, v, g) == pixel_distance(v, u, g));
    CHECK(pixel_distance(u, w, g) <= pixel_distance(u, v, g) + pixel_distance(v, w, g) + 1e-12);
    CHECK((pixel_distance(u, v, g) == 0.0) == (u == v));
  }
}

TEST_CASE("pairwise distance multiset is invariant under transposition") {
  Rng rng(5);
  const auto g = oracle::random_grid(rng, 4, 7, 3);
  const auto t = g.transposed();
  CHECK(t.rows() == 7);
  CHECK(t.cols() == 4);
  CHECK(t.transposed() == g);
  std::multiset<long long> a, b;
  for (Index u = 0; u < g.size(); ++u) {
    for (Index v = u + 1; v < g.size(); ++v) {
      a.insert(std::llround(pixel_distance(u, v, g) * 1e9));
      b.insert(std::llround(pixel_distance(u, v, t) * 1e9));
    }
  }
  CHECK(a == b);
}

TEST_CASE("uniform window partition") {
  const auto g = CategoricalGrid::filled(50, 50, 2, 1);
  const auto p = partition_window(g, 100, kUniformPartition);
  CHECK(p.num_areas() == 100);
  CHECK((p.sizes().array() == 25.0).all());

  const auto small = partition_window(CategoricalGrid::filled(4, 4, 2, 1), 4, kUniformPartition);
  Eigen::MatrixX2d expected(4, 2);
  expected << 1, 1, 1, 3, 3, 1, 3, 3;
  CHECK(small.centroids().isApprox(expected));
}

TEST_CASE("random window partition covers every pixel once") {
  const auto g = CategoricalGrid::filled(50, 50, 2, 1);
  for (std::uint64_t seed : {7u, 8u, 9u}) {
    const auto p = partition_window(g, 100, seed);
    CHECK(p.total_size() == 2500.0);
    CHECK(p.sizes().minCoeff() >= 1.0);
    std::vector<Index> tally(101, 0);
    for (Index u = 0; u < g.size(); ++u) ++tally[static_cast<std::size_t>(p.area_of(u))];
    CHECK(std::count(tally.begin() + 1, tally.end(), 0) == 0);
    for (Index a = 1; a <= 100; ++a) CHECK(tally[static_cast<std::size_t>(a)] == p.sizes()(a - 1));
  }
  // areas differ in size for a random mosaic
  const auto p = partition_window(g, 100, 7);
  CHECK(p.sizes().maxCoeff() > p.sizes().minCoeff());
  CHECK(partition_window(g, 100, 7).assignment() == p.assignment());
}

TEST_CASE("partition errors") {
  const auto g = CategoricalGrid::filled(6, 6, 2, 1);
  CHECK_THROWS_AS(partition_window(g, 10, 1), UnsupportedPartition);
  CHECK_THROWS_AS(partition_window(g, 49, 1), InputError);
  CHECK_THROWS_AS(partition_window(g, 16, kUniformPartition), InputError);
  CHECK_THROWS_AS(AreaPartition(2, 2, 2, {1, 1, 1, 1}), InputError);
  CHECK_THROWS_AS(AreaPartition(2, 2, 2, {1, 1, 3, 2}), InputError);
}

TEST_CASE("grid and partition text round trip") {
  Rng rng(3);
  const auto g = oracle::random_grid(rng, 5, 6, 4);
  std::stringstream ss;
  write_grid(ss, g);
  CHECK(read_grid(ss) == g);

  const auto p = partition_window(g, 4, 2);
  std::stringstream ps;
  write_partition(ps, p);
  const auto q = read_partition(ps, 5, 6);
  CHECK(q.assignment() == p.assignment());

  std::stringstream first;
  write_grid(first, g);
  CHECK(first.str().substr(0, 6) == "5 6 4\n");
}

TEST_CASE("malformed grid files are rejected") {
  std::istringstream zero("2 2 2\n1 0\n2 1\n");
  CHECK_THROWS_AS(read_grid(zero), InputError);
  std::istringstream short_data("2 2 2\n1 2\n2\n");
  CHECK_THROWS_AS(read_grid(short_data), InputError);
  std::istringstream junk("2 x 2\n");
  CHECK_THROWS_AS(read_grid(junk), InputError);
  CHECK_THROWS_AS(load_grid("/nonexistent/grid.txt"), InputError);
}

}  // TEST_SUITE
