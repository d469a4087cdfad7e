#include "spatent/lattice.hpp"

#include "spatent/error.hpp"
#include "spatent/random.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>

namespace spatent {

CategoricalGrid::CategoricalGrid(Index rows, Index cols, Category num_categories,
                                 std::vector<Category> values)
    : rows_(rows), cols_(cols), num_categories_(num_categories),
      values_(std::move(values)) {
  if (rows_ <= 0 || cols_ <= 0) throw InputError("grid dimensions must be positive");
  if (num_categories_ <= 0) throw InputError("number of categories must be positive");
  if (static_cast<Index>(values_.size()) != rows_ * cols_) {
    throw InputError("grid has " + std::to_string(values_.size()) + " values, expected " +
                     std::to_string(rows_ * cols_));
  }
  for (std::size_t u = 0; u < values_.size(); ++u) {
    if (values_[u] < 1 || values_[u] > num_categories_) {
      throw InputError("pixel " + std::to_string(u) + " has category " +
                       std::to_string(values_[u]) + " outside 1.." +
                       std::to_string(num_categories_));
    }
  }
}

CategoricalGrid CategoricalGrid::filled(Index rows, Index cols, Category num_categories,
                                        Category value) {
  return CategoricalGrid(rows, cols, num_categories,
                         std::vector<Category>(static_cast<std::size_t>(rows * cols), value));
}

std::vector<Index> CategoricalGrid::category_counts() const {
  std::vector<Index> counts(static_cast<std::size_t>(num_categories_), 0);
  for (Category v : values_) ++counts[static_cast<std::size_t>(v - 1)];
  return counts;
}

CategoricalGrid CategoricalGrid::transposed() const {
  std::vector<Category> t(values_.size());
  for (Index r = 0; r < rows_; ++r)
    for (Index c = 0; c < cols_; ++c)
      t[static_cast<std::size_t>(c * rows_ + r)] = at(r, c);
  return CategoricalGrid(cols_, rows_, num_categories_, std::move(t));
}

double CategoricalGrid::max_pair_distance() const noexcept {
  return std::hypot(static_cast<double>(rows_ - 1), static_cast<double>(cols_ - 1));
}

double pixel_distance(Index u, Index v, const CategoricalGrid& grid) {
  if (u < 0 || v < 0 || u >= grid.size() || v >= grid.size()) {
    throw InputError("pixel index out of range");
  }
  return (grid.centroid(u) - grid.centroid(v)).norm();
}

AreaPartition::AreaPartition(Index rows, Index cols, Index num_areas,
                             std::vector<Index> assignment)
    : rows_(rows), cols_(cols), num_areas_(num_areas), assignment_(std::move(assignment)) {
  if (num_areas_ <= 0) throw InputError("number of areas must be positive");
  if (static_cast<Index>(assignment_.size()) != rows_ * cols_) {
    throw InputError("partition size does not match the grid");
  }
  sizes_ = Eigen::VectorXd::Zero(num_areas_);
  centroids_ = Eigen::MatrixX2d::Zero(num_areas_, 2);
  for (Index u = 0; u < rows_ * cols_; ++u) {
    const Index g = assignment_[static_cast<std::size_t>(u)];
    if (g < 1 || g > num_areas_) throw InputError("area id outside 1..G");
    sizes_(g - 1) += 1.0;
    centroids_(g - 1, 0) += static_cast<double>(u / cols_) + 0.5;
    centroids_(g - 1, 1) += static_cast<double>(u % cols_) + 0.5;
  }
  if ((sizes_.array() < 1.0).any()) throw InputError("every area must contain a pixel");
  centroids_.array().colwise() /= sizes_.array();
}

namespace {

// Sorted strip boundaries 0 = b_0 < b_1 < ... < b_parts = extent.
std::vector<Index> random_cuts(Index extent, Index parts, Rng& rng) {
  std::vector<Index> interior(static_cast<std::size_t>(extent - 1));
  std::iota(interior.begin(), interior.end(), Index{1});
  // partial Fisher-Yates: first parts-1 slots become the sample
  for (Index i = 0; i < parts - 1; ++i) {
    const auto j = i + static_cast<Index>(rng.below(static_cast<std::uint64_t>(extent - 1 - i)));
    std::swap(interior[static_cast<std::size_t>(i)], interior[static_cast<std::size_t>(j)]);
  }
  std::vector<Index> cuts(interior.begin(), interior.begin() + (parts - 1));
  std::sort(cuts.begin(), cuts.end());
  cuts.insert(cuts.begin(), 0);
  cuts.push_back(extent);
  return cuts;
}

std::vector<Index> even_cuts(Index extent, Index parts) {
  std::vector<Index> cuts;
  for (Index i = 0; i <= parts; ++i) cuts.push_back(i * (extent / parts));
  return cuts;
}

std::vector<Index> strip_of(const std::vector<Index>& cuts, Index extent) {
  std::vector<Index> strip(static_cast<std::size_t>(extent));
  for (std::size_t s = 0; s + 1 < cuts.size(); ++s)
    for (Index p = cuts[s]; p < cuts[s + 1]; ++p) strip[static_cast<std::size_t>(p)] = static_cast<Index>(s);
  return strip;
}

}  // namespace

AreaPartition partition_window(const CategoricalGrid& grid, Index num_areas,
                               std::optional<std::uint64_t> seed) {
  if (num_areas <= 0) throw InputError("number of areas must be positive");
  const auto side = static_cast<Index>(std::llround(std::sqrt(static_cast<double>(num_areas))));
  if (side * side != num_areas) {
    throw UnsupportedPartition("number of areas " + std::to_string(num_areas) +
                               " is not a perfect square");
  }
  if (num_areas > grid.size() || side > grid.rows() || side > grid.cols()) {
    throw InputError("cannot cut a " + std::to_string(grid.rows()) + "x" +
                     std::to_string(grid.cols()) + " window into " + std::to_string(num_areas) +
                     " areas");
  }

  std::vector<Index> row_cuts;
  std::vector<Index> col_cuts;
  if (!seed) {
    if (grid.rows() % side != 0 || grid.cols() % side != 0) {
      throw InputError("equal-size partition requires " + std::to_string(side) +
                       " to divide both grid dimensions");
    }
    row_cuts = even_cuts(grid.rows(), side);
    col_cuts = even_cuts(grid.cols(), side);
  } else {
    Rng rng(*seed);
    row_cuts = random_cuts(grid.rows(), side, rng);
    col_cuts = random_cuts(grid.cols(), side, rng);
  }

  const auto row_strip = strip_of(row_cuts, grid.rows());
  const auto col_strip = strip_of(col_cuts, grid.cols());
  std::vector<Index> assignment(static_cast<std::size_t>(grid.size()));
  for (Index u = 0; u < grid.size(); ++u) {
    assignment[static_cast<std::size_t>(u)] =
        row_strip[static_cast<std::size_t>(grid.row_of(u))] * side +
        col_strip[static_cast<std::size_t>(grid.col_of(u))] + 1;
  }
  return AreaPartition(grid.rows(), grid.cols(), num_areas, std::move(assignment));
}

CategoricalGrid read_grid(std::istream& in) {
  Index rows = 0;
  Index cols = 0;
  Category categories = 0;
  if (!(in >> rows >> cols >> categories)) throw InputError("grid header must be 'rows cols I'");
  if (rows <= 0 || cols <= 0) throw InputError("grid dimensions must be positive");
  std::vector<Category> values;
  values.reserve(static_cast<std::size_t>(rows * cols));
  for (Index i = 0; i < rows * cols; ++i) {
    Category v = 0;
    if (!(in >> v)) throw InputError("grid body truncated after " + std::to_string(i) + " values");
    values.push_back(v);
  }
  Category extra = 0;
  if (in >> extra) throw InputError("grid body has more than rows*cols values");
  return CategoricalGrid(rows, cols, categories, std::move(values));
}

void write_grid(std::ostream& out, const CategoricalGrid& grid) {
  out << grid.rows() << ' ' << grid.cols() << ' ' << grid.num_categories() << '\n';
  for (Index r = 0; r < grid.rows(); ++r) {
    for (Index c = 0; c < grid.cols(); ++c) {
      if (c) out << ' ';
      out << grid.at(r, c);
    }
    out << '\n';
  }
}

CategoricalGrid load_grid(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open grid file " + path);
  return read_grid(in);
}

void save_grid(const std::string& path, const CategoricalGrid& grid) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write grid file " + path);
  write_grid(out, grid);
}

AreaPartition read_partition(std::istream& in, Index rows, Index cols) {
  Index areas = 0;
  if (!(in >> areas)) throw InputError("partition header must be 'G'");
  std::vector<Index> ids(static_cast<std::size_t>(rows * cols));
  for (auto& id : ids) {
    if (!(in >> id)) throw InputError("partition body truncated");
  }
  return AreaPartition(rows, cols, areas, std::move(ids));
}

void write_partition(std::ostream& out, const AreaPartition& partition) {
  out << partition.num_areas() << '\n';
  const auto& ids = partition.assignment();
  for (std::size_t u = 0; u < ids.size(); ++u) {
    if (u) out << ' ';
    out << ids[u];
  }
  out << '\n';
}

}  // namespace spatent
