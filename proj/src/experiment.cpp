#include "spatent/experiment.hpp"

#include "spatent/classic.hpp"
#include "spatent/error.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>
#include <thread>

namespace spatent {

namespace {

constexpr std::pair<Measure, const char*> kMeasureNames[] = {
    {Measure::ShannonX, "shannon_x"},
    {Measure::ShannonZ, "shannon_z"},
    {Measure::Batty, "batty"},
    {Measure::Karlstrom, "karlstrom"},
    {Measure::ONeill, "oneill"},
    {Measure::Leibovici, "leibovici"},
    {Measure::RelativeContagion, "rc"},
    {Measure::ParresolEdwards, "parresol"},
    {Measure::Decomposition, "decomposition"},
};

std::string format_number(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

std::string format_short(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

}  // namespace

std::string to_string(Measure m) {
  for (const auto& [measure, name] : kMeasureNames) {
    if (measure == m) return name;
  }
  return "unknown";
}

Measure parse_measure(const std::string& name) {
  for (const auto& [measure, n] : kMeasureNames) {
    if (name == n) return measure;
  }
  throw InputError("unknown measure '" + name + "'");
}

std::set<Measure> all_measures() {
  std::set<Measure> out;
  for (const auto& entry : kMeasureNames) out.insert(entry.first);
  return out;
}

std::set<Measure> parse_measures(const std::string& list) {
  std::set<Measure> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    if (item == "all") {
      out = all_measures();
      continue;
    }
    out.insert(parse_measure(item));
  }
  return out;
}

std::string ScenarioRun::name() const {
  return "X" + std::to_string(spec.num_categories) + "-" + to_string(spec.kind);
}

ExperimentPlan ExperimentPlan::standard(Index replicates, std::uint64_t master_seed) {
  ExperimentPlan plan;
  plan.master_seed = master_seed;
  plan.measures = all_measures();
  const auto add = [&](Scenario kind, Category categories) {
    ScenarioRun run;
    run.spec.kind = kind;
    run.spec.num_categories = categories;
    run.replicates = replicates;
    plan.scenarios.push_back(run);
  };
  for (auto kind : {Scenario::Compact, Scenario::Repulsive, Scenario::Multicluster, Scenario::Random}) {
    add(kind, 2);
  }
  for (Category categories : {5, 20}) {
    add(Scenario::Compact, categories);
    add(Scenario::Random, categories);
  }
  return plan;
}

void ExperimentPlan::validate() const {
  if (scenarios.empty()) throw InputError("experiment plan has no scenarios");
  if (measures.empty()) throw InputError("experiment plan selects no measures");
  for (const auto& run : scenarios) {
    if (run.replicates < 1) throw InputError("replicate count must be at least 1");
    spatent::validate(run.spec);
  }
}

double quantile(std::vector<double> values, double prob) {
  if (values.empty()) throw InputError("quantile of an empty sample");
  std::sort(values.begin(), values.end());
  const double h = (static_cast<double>(values.size()) - 1.0) * prob;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const auto hi = std::min(lo + 1, values.size() - 1);
  return values[lo] + (h - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

std::vector<ResultRow> measure_grid(const CategoricalGrid& grid, const ExperimentPlan& plan,
                                    const AreaPartition* partition,
                                    std::vector<std::string>* skipped) {
  std::vector<ResultRow> rows;
  const auto emit = [&rows](std::string measure, std::string band, double value) {
    rows.push_back({"", 0, false, std::move(measure), std::move(band), value});
  };
  const auto& m = plan.measures;
  const auto bands = plan.bands ? *plan.bands : DistanceClassification::standard_for(grid);

  if (m.contains(Measure::ShannonX)) {
    Eigen::VectorXd counts(grid.num_categories());
    const auto c = grid.category_counts();
    for (Index i = 0; i < counts.size(); ++i) counts(i) = static_cast<double>(c[static_cast<std::size_t>(i)]);
    emit("shannon_x", "", entropy_of(counts / counts.sum()));
  }
  if (m.contains(Measure::ShannonZ) || m.contains(Measure::Decomposition)) {
    const auto d = decompose(grid, bands);
    if (m.contains(Measure::ShannonZ)) emit("shannon_z", "", d.marginal);
    if (m.contains(Measure::Decomposition)) {
      emit("marginal", "", d.marginal);
      emit("residual_global", "", d.residual_global);
      emit("mutual_information", "", d.mutual_information);
      emit("mi_proportional", "", d.mi_proportional);
      for (const auto& b : d.bands) {
        emit("p_w", b.label, b.p_w);
        emit("residual_partial", b.label, b.residual_partial);
        emit("info_partial", b.label, b.info_partial);
      }
    }
  }
  const bool areal = m.contains(Measure::Batty) || m.contains(Measure::Karlstrom);
  std::optional<AreaProbabilities> areas;
  if (areal && !partition) {
    if (skipped) skipped->push_back("batty/karlstrom skipped: no partition");
  } else if (areal) {
    try {
      areas = estimate_area_probs(grid, *partition, 1);
    } catch (const UndefinedPhenomenon& e) {
      if (skipped) skipped->push_back(std::string("batty/karlstrom skipped: ") + e.what());
    }
  }
  if (areas) {
    if (m.contains(Measure::Batty)) emit("batty", "", batty_entropy(*areas));
    if (m.contains(Measure::Karlstrom)) {
      for (double radius : plan.karlstrom_radii) {
        emit("karlstrom", "d=" + format_short(radius),
             karlstrom_entropy(*areas, AreaNeighbourhood::within(*partition, radius)));
      }
    }
  }
  const bool contiguity = m.contains(Measure::ONeill) || m.contains(Measure::RelativeContagion) ||
                          m.contains(Measure::ParresolEdwards);
  if (contiguity) {
    const double h = oneill_entropy(grid, plan.ordered_classic);
    if (m.contains(Measure::ONeill)) emit("oneill", "", h);
    if (m.contains(Measure::RelativeContagion)) {
      const auto r = count_categories({grid.num_categories(), plan.ordered_classic});
      emit("rc", "", 1.0 - h / std::log(static_cast<double>(r)));
    }
    if (m.contains(Measure::ParresolEdwards)) emit("parresol", "", -h);
  }
  if (m.contains(Measure::Leibovici)) {
    emit("leibovici", "d=" + format_short(plan.leibovici_distance),
         leibovici_entropy(grid, plan.leibovici_distance, plan.ordered_classic));
  }
  return rows;
}

ExperimentResult run_experiment(const ExperimentPlan& plan) {
  plan.validate();

  struct Task {
    std::size_t scenario;
    Index replicate;
    bool uniform;
  };
  std::vector<Task> tasks;
  for (std::size_t s = 0; s < plan.scenarios.size(); ++s) {
    const auto& run = plan.scenarios[s];
    for (Index r = 0; r < run.replicates; ++r) tasks.push_back({s, r, false});
    if (run.uniform_case) tasks.push_back({s, run.replicates, true});
  }

  // One fixed partition per grid shape, shared by every replicate.
  std::map<std::pair<Index, Index>, AreaPartition> partitions;
  const bool needs_partition =
      plan.measures.contains(Measure::Batty) || plan.measures.contains(Measure::Karlstrom);
  std::vector<std::string> setup_errors;
  if (needs_partition) {
    for (const auto& run : plan.scenarios) {
      const auto key = std::make_pair(run.spec.rows, run.spec.cols);
      if (partitions.contains(key)) continue;
      try {
        const auto blank = CategoricalGrid::filled(run.spec.rows, run.spec.cols, 1, 1);
        partitions.emplace(key, partition_window(blank, plan.partition_areas,
                                                 derive_seed(plan.master_seed, 0x70617274ULL, 0)));
      } catch (const Error& e) {
        setup_errors.push_back(run.name() + ": partition: " + e.what());
      }
    }
  }

  std::vector<std::vector<ResultRow>> task_rows(tasks.size());
  std::vector<std::string> task_errors(tasks.size());
  std::vector<std::vector<std::string>> task_notes(tasks.size());
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      const auto& task = tasks[i];
      const auto& run = plan.scenarios[task.scenario];
      try {
        ScenarioSpec spec = run.spec;
        if (task.uniform) spec.pmf = PmfSource::Uniform;
        const auto grid = generate_replicate(spec, plan.master_seed,
                                             static_cast<std::uint64_t>(task.replicate));
        const auto it = partitions.find({spec.rows, spec.cols});
        auto rows = measure_grid(grid, plan, it == partitions.end() ? nullptr : &it->second,
                                 &task_notes[i]);
        for (auto& row : rows) {
          row.scenario = run.name();
          row.replicate = task.replicate;
          row.uniform = task.uniform;
        }
        task_rows[i] = std::move(rows);
      } catch (const Error& e) {
        task_errors[i] = run.name() + " replicate " + std::to_string(task.replicate) + ": " + e.what();
      }
    }
  };
  const unsigned threads = std::max(1u, plan.threads);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  ExperimentResult result;
  result.errors = std::move(setup_errors);
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    if (!task_errors[i].empty()) result.errors.push_back(std::move(task_errors[i]));
    for (auto& note : task_notes[i]) {
      result.notes.push_back(plan.scenarios[tasks[i].scenario].name() + " replicate " +
                             std::to_string(tasks[i].replicate) + ": " + note);
    }
    for (auto& row : task_rows[i]) result.rows.push_back(std::move(row));
  }

  // Summaries keyed by first appearance so output order follows the plan.
  std::vector<SummaryRow> summary;
  std::map<std::tuple<std::string, std::string, std::string>, std::size_t> slot;
  std::vector<std::vector<double>> samples;
  for (const auto& row : result.rows) {
    const auto key = std::make_tuple(row.scenario, row.measure, row.band);
    auto [it, inserted] = slot.emplace(key, summary.size());
    if (inserted) {
      SummaryRow fresh;
      fresh.scenario = row.scenario;
      fresh.measure = row.measure;
      fresh.band = row.band;
      summary.push_back(std::move(fresh));
      samples.emplace_back();
    }
    if (row.uniform) {
      summary[it->second].uniform_value = row.value;
    } else {
      samples[it->second].push_back(row.value);
    }
  }
  for (std::size_t i = 0; i < summary.size(); ++i) {
    auto& s = summary[i];
    s.count = static_cast<Index>(samples[i].size());
    if (samples[i].empty()) continue;
    s.min = *std::min_element(samples[i].begin(), samples[i].end());
    s.max = *std::max_element(samples[i].begin(), samples[i].end());
    s.q1 = quantile(samples[i], 0.25);
    s.median = quantile(samples[i], 0.5);
    s.q3 = quantile(samples[i], 0.75);
  }
  result.summary = std::move(summary);

  if (plan.output_dir) {
    std::error_code ec;
    std::filesystem::create_directories(*plan.output_dir, ec);
    const auto open = [&](const char* name) {
      std::ofstream out(*plan.output_dir / name);
      if (!out) throw InputError("cannot write " + (*plan.output_dir / name).string());
      return out;
    };
    auto results_out = open("results.csv");
    write_results_csv(results_out, result.rows);
    auto summary_out = open("summary.csv");
    write_summary_csv(summary_out, result.summary);
    auto errors_out = open("errors.log");
    for (const auto& e : result.errors) errors_out << "error: " << e << '\n';
    for (const auto& n : result.notes) errors_out << "note: " << n << '\n';
    if (!results_out || !summary_out || !errors_out) throw InputError("failed writing experiment output");
  }
  return result;
}

void write_results_csv(std::ostream& out, const std::vector<ResultRow>& rows) {
  out << "scenario,replicate,uniform_flag,measure,band,value\n";
  for (const auto& r : rows) {
    out << r.scenario << ',' << r.replicate << ',' << (r.uniform ? 1 : 0) << ',' << r.measure
        << ",\"" << r.band << "\"," << format_number(r.value) << '\n';
  }
}

void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows) {
  out << "scenario,measure,band,count,min,q1,median,q3,max,uniform_value\n";
  for (const auto& s : rows) {
    out << s.scenario << ',' << s.measure << ",\"" << s.band << "\"," << s.count << ','
        << format_number(s.min) << ',' << format_number(s.q1) << ',' << format_number(s.median)
        << ',' << format_number(s.q3) << ',' << format_number(s.max) << ','
        << (s.uniform_value ? format_number(*s.uniform_value) : "") << '\n';
  }
}

// ---------------------------------------------------------------------------

bool IdentityReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
}

void IdentityReport::print(std::ostream& out) const {
  for (const auto& c : checks) {
    out << (c.passed ? "PASS " : "FAIL ") << c.name << "  residual=" << std::setprecision(3)
        << c.residual;
    if (!c.detail.empty()) out << "  " << c.detail;
    out << '\n';
  }
  out << (all_passed() ? "all identities hold" : "identity failures present") << '\n';
}

IdentityReport verify(const CategoricalGrid& grid, const DistanceClassification& bands) {
  IdentityReport report;
  const auto add = [&report](std::string name, double residual, double tolerance, std::string detail = {}) {
    report.checks.push_back({std::move(name), residual, residual <= tolerance, std::move(detail)});
  };
  const auto fail = [&report](std::string name, std::string detail) {
    report.checks.push_back({std::move(name), std::nan(""), false, std::move(detail)});
  };
  if (grid.size() < 2) {
    fail("grid_valid", "grid needs at least two pixels");
    return report;
  }

  const CooccurrenceScheme unordered{grid.num_categories(), false};
  const CooccurrenceScheme ordered{grid.num_categories(), true};
  try {
    const auto sample = enumerate_pairs(grid, bands, unordered);
    const auto n = grid.size();
    add("pair_total", std::abs(static_cast<double>(sample.total() - n * (n - 1) / 2)), 0.0,
        "Q=" + std::to_string(sample.total()));

    const auto estimate = conditional_pmfs(sample);
    const Eigen::VectorXd mixture = estimate.conditionals * estimate.p_w.probs();
    add("mixture_consistency", (mixture - estimate.p_z.probs()).cwiseAbs().maxCoeff(), kIdentityTolerance);

    const double h_z = shannon(estimate.p_z);
    const double residual = global_residual(estimate.p_w, estimate.conditionals);
    const double residual_joint = conditional_entropy(estimate.joint, Margin::Cols).value;
    const double mi_kl = mutual_information(estimate.joint);
    double mi_partial = 0.0;
    double min_partial = 0.0;
    for (Index k = 0; k < estimate.p_w.size(); ++k) {
      if (estimate.empty_band[static_cast<std::size_t>(k)]) continue;
      const double pi = kl_divergence(estimate.conditional(k), estimate.p_z);
      mi_partial += estimate.p_w[k] * pi;
      min_partial = std::min(min_partial, pi);
    }
    add("entropy_decomposition", std::abs(h_z - (mi_kl + residual)), kIdentityTolerance);
    add("residual_additivity", std::abs(residual - residual_joint), kIdentityTolerance);
    add("mi_joint_vs_partial", std::abs(mi_kl - mi_partial), kIdentityTolerance);
    add("mi_joint_vs_marginal", std::abs(mi_kl - (h_z - residual)), kIdentityTolerance);
    add("nonnegativity", std::max(0.0, -std::min(mi_kl, min_partial)), 1e-12);

    const auto ordered_sample = enumerate_pairs(grid, bands, ordered);
    add("ordered_merge", ordered_sample.unordered() == sample ? 0.0 : 1.0, 0.0);

    if (n <= 64) {
      const auto reference = enumerate_pairs_reference(grid, bands, unordered);
      const double diff = static_cast<double>((reference.counts() - sample.counts()).cwiseAbs().sum());
      add("bruteforce_oracle", diff, 0.0);
    }
  } catch (const Error& e) {
    fail("evaluation", e.what());
  }
  return report;
}

IdentityReport verify_file(const std::string& path,
                           const std::optional<DistanceClassification>& bands) {
  std::optional<CategoricalGrid> grid;
  try {
    grid = load_grid(path);
  } catch (const Error& e) {
    IdentityReport report;
    report.checks.push_back({"grid_valid", std::nan(""), false, e.what()});
    return report;
  }
  IdentityReport report = verify(*grid, bands ? *bands : DistanceClassification::standard_for(*grid));
  report.checks.insert(report.checks.begin(), {"grid_valid", 0.0, true, {}});
  return report;
}

}  // namespace spatent
