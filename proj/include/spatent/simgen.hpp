#pragma once

#include "spatent/lattice.hpp"
#include "spatent/random.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace spatent {

/// Spatial arrangement applied to a multiset of category values.
enum class Scenario {
  Compact,       ///< one contiguous block per category
  Repulsive,     ///< alternating chessboard fill, lightly shuffled (I = 2)
  Multicluster,  ///< discs of category 1 on a mosaic of blocks (I = 2)
  Random,        ///< uniformly random permutation
};

enum class PmfSource {
  Dirichlet,  ///< p_X ~ Dirichlet(1, ..., 1), counts ~ Multinomial(N, p_X)
  Uniform,    ///< exact equal split N / I
};

std::string to_string(Scenario s);
Scenario parse_scenario(const std::string& name);

struct ScenarioSpec {
  Scenario kind = Scenario::Random;
  Category num_categories = 2;
  Index rows = 50;
  Index cols = 50;
  PmfSource pmf = PmfSource::Dirichlet;
  std::uint64_t seed = 0;
  /// Number of multicluster discs; must be a perfect square.
  Index clusters = 25;
  /// Fraction of pixels whose values are permuted after the repulsive fill.
  /// Not applied with a uniform pmf, which yields the exact chessboard.
  double repulsive_noise = 0.15;
};

/// Throws InputError for inconsistent specs.
void validate(const ScenarioSpec& spec);

/// Category counts (index i-1 for category i) summing to rows * cols.
std::vector<Index> draw_counts(const ScenarioSpec& spec, Rng& rng);

/// Places the given counts on the lattice according to spec.kind.
CategoricalGrid arrange(const ScenarioSpec& spec, std::span<const Index> counts, Rng& rng);

/// draw_counts then arrange, both driven by Rng(spec.seed).
CategoricalGrid generate(const ScenarioSpec& spec);

/// Replicate `replicate` of an ensemble under `master` (spec.seed is ignored).
/// Counts come from a stream keyed on (I, replicate) only, so every scenario
/// with the same number of categories arranges the same simulated values;
/// placement draws from a stream keyed on (scenario, I, replicate).
CategoricalGrid generate_replicate(const ScenarioSpec& spec, std::uint64_t master,
                                   std::uint64_t replicate);

}  // namespace spatent
