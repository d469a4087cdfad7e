#include "spatent/simgen.hpp"

#include "spatent/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace spatent {

std::string to_string(Scenario s) {
  switch (s) {
    case Scenario::Compact: return "compact";
    case Scenario::Repulsive: return "repulsive";
    case Scenario::Multicluster: return "multicluster";
    case Scenario::Random: return "random";
  }
  return "unknown";
}

Scenario parse_scenario(const std::string& name) {
  for (auto s : {Scenario::Compact, Scenario::Repulsive, Scenario::Multicluster, Scenario::Random}) {
    if (to_string(s) == name) return s;
  }
  throw InputError("unknown scenario '" + name + "'");
}

void validate(const ScenarioSpec& spec) {
  if (spec.rows <= 0 || spec.cols <= 0) throw InputError("grid dimensions must be positive");
  if (spec.num_categories < 2) throw InputError("scenarios need at least two categories");
  if ((spec.kind == Scenario::Repulsive || spec.kind == Scenario::Multicluster) &&
      spec.num_categories != 2) {
    throw InputError(to_string(spec.kind) + " scenario is defined for two categories only");
  }
  if (spec.pmf == PmfSource::Uniform && (spec.rows * spec.cols) % spec.num_categories != 0) {
    throw InputError("uniform pmf needs I to divide N");
  }
  if (!(spec.repulsive_noise >= 0.0 && spec.repulsive_noise <= 1.0)) {
    throw InputError("repulsive noise must lie in [0, 1]");
  }
  if (spec.kind == Scenario::Multicluster) {
    const auto side = static_cast<Index>(std::llround(std::sqrt(static_cast<double>(spec.clusters))));
    if (spec.clusters <= 0 || side * side != spec.clusters) {
      throw InputError("cluster count must be a positive perfect square");
    }
    if (side > spec.rows || side > spec.cols) throw InputError("more cluster blocks than pixels per side");
  }
}

std::vector<Index> draw_counts(const ScenarioSpec& spec, Rng& rng) {
  validate(spec);
  const Index n = spec.rows * spec.cols;
  const auto categories = static_cast<std::size_t>(spec.num_categories);
  if (spec.pmf == PmfSource::Uniform) {
    return std::vector<Index>(categories, n / spec.num_categories);
  }
  // flat Dirichlet as normalised unit exponentials
  std::vector<double> cdf(categories);
  for (auto& w : cdf) w = rng.exponential();
  std::partial_sum(cdf.begin(), cdf.end(), cdf.begin());
  const double total = cdf.back();
  for (auto& c : cdf) c /= total;

  std::vector<Index> counts(categories, 0);
  for (Index i = 0; i < n; ++i) {
    const double u = rng.uniform();
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    if (it == cdf.end()) --it;
    ++counts[static_cast<std::size_t>(it - cdf.begin())];
  }
  return counts;
}

namespace {

std::vector<Category> sorted_values(std::span<const Index> counts) {
  std::vector<Category> values;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    values.insert(values.end(), static_cast<std::size_t>(counts[i]), static_cast<Category>(i + 1));
  }
  return values;
}

CategoricalGrid arrange_random(const ScenarioSpec& spec, std::span<const Index> counts, Rng& rng) {
  auto values = sorted_values(counts);
  rng.shuffle(std::span<Category>(values));
  return CategoricalGrid(spec.rows, spec.cols, spec.num_categories, std::move(values));
}

// Sorted categories written along a serpentine row path.
CategoricalGrid arrange_compact(const ScenarioSpec& spec, std::span<const Index> counts) {
  const auto path = sorted_values(counts);
  std::vector<Category> values(path.size());
  std::size_t step = 0;
  for (Index r = 0; r < spec.rows; ++r) {
    for (Index i = 0; i < spec.cols; ++i) {
      const Index c = r % 2 == 0 ? i : spec.cols - 1 - i;
      values[static_cast<std::size_t>(r * spec.cols + c)] = path[step++];
    }
  }
  return CategoricalGrid(spec.rows, spec.cols, spec.num_categories, std::move(values));
}

// Minority values go to the odd-parity cells met along the serpentine path
// until they run out; the majority fills everything else. Equal counts give
// the exact chessboard with category 1 at the origin.
CategoricalGrid arrange_repulsive(const ScenarioSpec& spec, std::span<const Index> counts, Rng& rng) {
  const Category minority = counts[0] < counts[1] ? 1 : 2;
  const Category majority = 3 - minority;
  Index left = counts[static_cast<std::size_t>(minority - 1)];
  std::vector<Category> values(static_cast<std::size_t>(spec.rows * spec.cols), majority);
  for (Index r = 0; r < spec.rows && left > 0; ++r) {
    for (Index i = 0; i < spec.cols && left > 0; ++i) {
      const Index c = r % 2 == 0 ? i : spec.cols - 1 - i;
      if ((r + c) % 2 == 1) {
        values[static_cast<std::size_t>(r * spec.cols + c)] = minority;
        --left;
      }
    }
  }
  // odd-parity cells exhausted: remaining minority values take even cells in path order
  for (Index r = 0; r < spec.rows && left > 0; ++r) {
    for (Index i = 0; i < spec.cols && left > 0; ++i) {
      const Index c = r % 2 == 0 ? i : spec.cols - 1 - i;
      auto& v = values[static_cast<std::size_t>(r * spec.cols + c)];
      if (v == majority) {
        v = minority;
        --left;
      }
    }
  }

  if (spec.pmf != PmfSource::Uniform && spec.repulsive_noise > 0.0) {
    const auto n = values.size();
    const auto picked = static_cast<std::size_t>(std::llround(spec.repulsive_noise * static_cast<double>(n)));
    std::vector<std::size_t> cells(n);
    std::iota(cells.begin(), cells.end(), std::size_t{0});
    rng.shuffle(std::span<std::size_t>(cells));
    std::vector<Category> moved;
    for (std::size_t i = 0; i < picked; ++i) moved.push_back(values[cells[i]]);
    rng.shuffle(std::span<Category>(moved));
    for (std::size_t i = 0; i < picked; ++i) values[cells[i]] = moved[i];
  }
  return CategoricalGrid(spec.rows, spec.cols, spec.num_categories, std::move(values));
}

CategoricalGrid arrange_multicluster(const ScenarioSpec& spec, std::span<const Index> counts,
                                     Rng& rng) {
  const auto side = static_cast<Index>(std::llround(std::sqrt(static_cast<double>(spec.clusters))));
  const Index blocks = side * side;
  const auto edge = [side](Index extent, Index i) { return i * extent / side; };

  // quota per block: count / blocks, the remainder one per block, capped at
  // block capacity with any overflow passed to later blocks
  std::vector<Index> capacity(static_cast<std::size_t>(blocks));
  for (Index b = 0; b < blocks; ++b) {
    const Index br = b / side;
    const Index bc = b % side;
    capacity[static_cast<std::size_t>(b)] = (edge(spec.rows, br + 1) - edge(spec.rows, br)) *
                                            (edge(spec.cols, bc + 1) - edge(spec.cols, bc));
  }
  std::vector<Index> quota(static_cast<std::size_t>(blocks));
  Index overflow = 0;
  for (Index b = 0; b < blocks; ++b) {
    const Index want = counts[0] / blocks + (b < counts[0] % blocks ? 1 : 0);
    quota[static_cast<std::size_t>(b)] = std::min(want, capacity[static_cast<std::size_t>(b)]);
    overflow += want - quota[static_cast<std::size_t>(b)];
  }
  for (Index b = 0; b < blocks && overflow > 0; ++b) {
    const Index extra = std::min(overflow, capacity[static_cast<std::size_t>(b)] - quota[static_cast<std::size_t>(b)]);
    quota[static_cast<std::size_t>(b)] += extra;
    overflow -= extra;
  }

  std::vector<Category> values(static_cast<std::size_t>(spec.rows * spec.cols), 2);
  std::vector<std::pair<double, Index>> order;
  for (Index b = 0; b < blocks; ++b) {
    const Index r0 = edge(spec.rows, b / side);
    const Index r1 = edge(spec.rows, b / side + 1);
    const Index c0 = edge(spec.cols, b % side);
    const Index c1 = edge(spec.cols, b % side + 1);
    double cr = 0.5 * static_cast<double>(r0 + r1);
    double cc = 0.5 * static_cast<double>(c0 + c1);
    if (spec.pmf != PmfSource::Uniform) {
      cr = rng.uniform(static_cast<double>(r0), static_cast<double>(r1));
      cc = rng.uniform(static_cast<double>(c0), static_cast<double>(c1));
    }
    order.clear();
    for (Index r = r0; r < r1; ++r) {
      for (Index c = c0; c < c1; ++c) {
        const double dr = static_cast<double>(r) + 0.5 - cr;
        const double dc = static_cast<double>(c) + 0.5 - cc;
        order.emplace_back(dr * dr + dc * dc, r * spec.cols + c);
      }
    }
    std::sort(order.begin(), order.end());
    for (Index i = 0; i < quota[static_cast<std::size_t>(b)]; ++i) {
      values[static_cast<std::size_t>(order[static_cast<std::size_t>(i)].second)] = 1;
    }
  }
  return CategoricalGrid(spec.rows, spec.cols, spec.num_categories, std::move(values));
}

}  // namespace

CategoricalGrid arrange(const ScenarioSpec& spec, std::span<const Index> counts, Rng& rng) {
  validate(spec);
  if (static_cast<Index>(counts.size()) != spec.num_categories) {
    throw InputError("one count per category expected");
  }
  if (std::any_of(counts.begin(), counts.end(), [](Index c) { return c < 0; }) ||
      std::accumulate(counts.begin(), counts.end(), Index{0}) != spec.rows * spec.cols) {
    throw InputError("counts must be nonnegative and sum to rows * cols");
  }
  switch (spec.kind) {
    case Scenario::Compact: return arrange_compact(spec, counts);
    case Scenario::Repulsive: return arrange_repulsive(spec, counts, rng);
    case Scenario::Multicluster: return arrange_multicluster(spec, counts, rng);
    case Scenario::Random: return arrange_random(spec, counts, rng);
  }
  throw InputError("unknown scenario");
}

CategoricalGrid generate(const ScenarioSpec& spec) {
  Rng rng(spec.seed);
  const auto counts = draw_counts(spec, rng);
  return arrange(spec, counts, rng);
}

CategoricalGrid generate_replicate(const ScenarioSpec& spec, std::uint64_t master,
                                   std::uint64_t replicate) {
  constexpr std::uint64_t kCountStream = 0x636f756e7473ULL;
  const auto categories = static_cast<std::uint64_t>(spec.num_categories);
  Rng count_rng(derive_seed(master, kCountStream ^ categories, replicate));
  const auto counts = draw_counts(spec, count_rng);
  const auto scenario = (static_cast<std::uint64_t>(spec.kind) + 1) << 32 | categories;
  Rng place_rng(derive_seed(master, scenario, replicate));
  return arrange(spec, counts, place_rng);
}

}  // namespace spatent
