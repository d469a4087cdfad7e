#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace spatent {

using Category = std::int32_t;
using Index = std::int64_t;

/// Categorical variable observed on a rows x cols lattice of unit pixels.
///
/// Values are stored row-major and coded 1..I. Pixel u has centroid
/// (row(u) + 0.5, col(u) + 0.5), so edge-sharing pixels are at distance 1.
/// Categories that never occur are still counted in I.
class CategoricalGrid {
 public:
  CategoricalGrid(Index rows, Index cols, Category num_categories,
                  std::vector<Category> values);

  /// Grid of the given shape filled with a single category.
  static CategoricalGrid filled(Index rows, Index cols,
                                Category num_categories, Category value);

  Index rows() const noexcept { return rows_; }
  Index cols() const noexcept { return cols_; }
  Index size() const noexcept { return rows_ * cols_; }
  Category num_categories() const noexcept { return num_categories_; }

  Category at(Index u) const { return values_[static_cast<std::size_t>(u)]; }
  Category at(Index r, Index c) const { return at(r * cols_ + c); }
  const std::vector<Category>& values() const noexcept { return values_; }

  Index row_of(Index u) const noexcept { return u / cols_; }
  Index col_of(Index u) const noexcept { return u % cols_; }
  Eigen::Vector2d centroid(Index u) const noexcept {
    return {static_cast<double>(row_of(u)) + 0.5,
            static_cast<double>(col_of(u)) + 0.5};
  }

  /// Per-category pixel counts, index i-1 for category i.
  std::vector<Index> category_counts() const;

  CategoricalGrid transposed() const;

  /// Largest centroid distance between two pixels of this grid.
  double max_pair_distance() const noexcept;

  bool operator==(const CategoricalGrid&) const = default;

 private:
  Index rows_;
  Index cols_;
  Category num_categories_;
  std::vector<Category> values_;
};

/// Euclidean distance between the centroids of pixels u and v.
double pixel_distance(Index u, Index v, const CategoricalGrid& grid);

/// Partition of the pixels of a grid into G areas, ids 1..G.
class AreaPartition {
 public:
  AreaPartition(Index rows, Index cols, Index num_areas,
                std::vector<Index> assignment);

  Index num_areas() const noexcept { return num_areas_; }
  Index rows() const noexcept { return rows_; }
  Index cols() const noexcept { return cols_; }
  const std::vector<Index>& assignment() const noexcept { return assignment_; }
  Index area_of(Index u) const { return assignment_[static_cast<std::size_t>(u)]; }

  /// T_g, index g-1 for area g.
  const Eigen::VectorXd& sizes() const noexcept { return sizes_; }
  double total_size() const noexcept { return sizes_.sum(); }
  /// G x 2 matrix of mean pixel-centroid coordinates.
  const Eigen::MatrixX2d& centroids() const noexcept { return centroids_; }

 private:
  Index rows_;
  Index cols_;
  Index num_areas_;
  std::vector<Index> assignment_;
  Eigen::VectorXd sizes_;
  Eigen::MatrixX2d centroids_;
};

/// Seed value requesting the equal-size partition instead of random cuts.
inline constexpr std::optional<std::uint64_t> kUniformPartition = std::nullopt;

/// g0 x g0 rectangular mosaic with G = g0^2 areas. With a seed, g0-1 distinct
/// horizontal and g0-1 distinct vertical cuts are drawn at random pixel
/// boundaries; without one, the window is cut into equal blocks.
AreaPartition partition_window(const CategoricalGrid& grid, Index num_areas,
                               std::optional<std::uint64_t> seed);

CategoricalGrid read_grid(std::istream& in);
void write_grid(std::ostream& out, const CategoricalGrid& grid);
CategoricalGrid load_grid(const std::string& path);
void save_grid(const std::string& path, const CategoricalGrid& grid);

AreaPartition read_partition(std::istream& in, Index rows, Index cols);
void write_partition(std::ostream& out, const AreaPartition& partition);

}  // namespace spatent
