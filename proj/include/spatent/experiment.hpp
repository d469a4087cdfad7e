#pragma once

#include "spatent/cooccur.hpp"
#include "spatent/decomp.hpp"
#include "spatent/lattice.hpp"
#include "spatent/simgen.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace spatent {

enum class Measure {
  ShannonX,
  ShannonZ,
  Batty,
  Karlstrom,
  ONeill,
  Leibovici,
  RelativeContagion,
  ParresolEdwards,
  Decomposition,
};

std::string to_string(Measure m);
Measure parse_measure(const std::string& name);
/// Comma-separated measure names; "all" selects every measure.
std::set<Measure> parse_measures(const std::string& list);
std::set<Measure> all_measures();

/// One scenario of an ensemble; `spec.seed` is ignored in favour of the plan's master seed.
struct ScenarioRun {
  ScenarioSpec spec;
  Index replicates = 100;
  /// Also evaluate the uniform-pmf special case as replicate index `replicates`.
  bool uniform_case = true;

  /// e.g. "X2-compact".
  std::string name() const;
};

struct ExperimentPlan {
  std::vector<ScenarioRun> scenarios;
  std::set<Measure> measures;
  std::uint64_t master_seed = 1;
  /// Empty means DistanceClassification::standard_for(grid).
  std::optional<DistanceClassification> bands;
  /// Areas of the fixed window partition used by Batty and Karlstrom.
  Index partition_areas = 100;
  std::vector<double> karlstrom_radii{0.0, 2.0, 5.0, 10.0};
  double leibovici_distance = 2.0;
  /// Co-occurrence order for O'Neill, Leibovici, RC and Parresol-Edwards.
  bool ordered_classic = true;
  unsigned threads = 1;
  /// When set, results.csv, summary.csv and errors.log are written here.
  std::optional<std::filesystem::path> output_dir;

  /// The comparative design: X2 under all four scenarios, X5 and X20 under
  /// compact and random, each on 50 x 50 with the uniform special case.
  static ExperimentPlan standard(Index replicates, std::uint64_t master_seed);

  /// Throws InputError when no scenario or no measure is selected.
  void validate() const;
};

/// One long-format result row.
struct ResultRow {
  std::string scenario;
  Index replicate = 0;
  bool uniform = false;
  std::string measure;
  std::string band;
  double value = 0.0;
};

/// Five-number summary of one measure (and band) over a scenario's replicates.
struct SummaryRow {
  std::string scenario;
  std::string measure;
  std::string band;
  Index count = 0;
  double min = 0.0;
  double q1 = 0.0;
  double median = 0.0;
  double q3 = 0.0;
  double max = 0.0;
  std::optional<double> uniform_value;
};

struct ExperimentResult {
  std::vector<ResultRow> rows;
  std::vector<SummaryRow> summary;
  /// Replicates aborted by an error; their rows are absent.
  std::vector<std::string> errors;
  /// Measures skipped for a replicate whose other rows were kept.
  std::vector<std::string> notes;
};

/// Linear-interpolation quantile (R type 7) of unsorted values.
double quantile(std::vector<double> values, double prob);

/// All selected measures of one grid as (measure, band, value) rows.
/// Batty and Karlstrom need a partition and at least one pixel of category 1;
/// otherwise they are skipped and the reason is appended to `skipped`.
std::vector<ResultRow> measure_grid(const CategoricalGrid& grid, const ExperimentPlan& plan,
                                    const AreaPartition* partition,
                                    std::vector<std::string>* skipped = nullptr);

ExperimentResult run_experiment(const ExperimentPlan& plan);

void write_results_csv(std::ostream& out, const std::vector<ResultRow>& rows);
void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows);

// ---------------------------------------------------------------------------

struct IdentityCheck {
  std::string name;
  double residual = 0.0;
  bool passed = false;
  std::string detail;
};

struct IdentityReport {
  std::vector<IdentityCheck> checks;
  bool all_passed() const;
  void print(std::ostream& out) const;
};

/// Runs the identity suite on one grid: additive decomposition, the three MI
/// routes, mixture consistency of p_Z, pair totals, ordered/unordered
/// agreement, and (for N <= 64) agreement with the brute-force enumerator.
IdentityReport verify(const CategoricalGrid& grid, const DistanceClassification& bands);

/// As verify(), after loading the grid; a file that fails to load yields a
/// failed "grid_valid" check instead of an exception.
IdentityReport verify_file(const std::string& path,
                           const std::optional<DistanceClassification>& bands);

}  // namespace spatent
