// spatent: spatial entropy measures for categorical lattices.
//
//   spatent generate   --scenario compact --categories 2 --replicates 10 --out grids/
//   spatent measure    grid.txt --measures oneill,decomposition
//   spatent decompose  grid.txt --format json --pairs pairs.csv
//   spatent experiment --replicates 100 --out results/
//   spatent verify     grid.txt

#include "spatent/classic.hpp"
#include "spatent/cooccur.hpp"
#include "spatent/decomp.hpp"
#include "spatent/error.hpp"
#include "spatent/experiment.hpp"
#include "spatent/lattice.hpp"
#include "spatent/simgen.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <thread>

namespace fs = std::filesystem;
using namespace spatent;

namespace {

// Salt for the fixed window partition; shared with the experiment harness so
// `measure` on a generated grid reproduces the experiment's Batty values.
constexpr std::uint64_t kPartitionStream = 0x70617274ULL;

struct Options {
  Index rows = 50;
  Index cols = 50;
  std::vector<Category> categories;
  std::vector<std::string> scenarios;
  Index replicates = 0;
  std::uint64_t seed = 1;
  std::string bands;
  std::string measures = "all";
  std::string out;
  bool ordered = true;
  bool uniform_pmf = false;
  bool full = false;
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  Index areas = 100;
  std::string format = "json";
  std::string pairs;
  std::vector<std::string> files;
};

std::optional<DistanceClassification> parse_bands(const std::string& text) {
  if (text.empty()) return std::nullopt;
  return DistanceClassification::parse(text);
}

DistanceClassification bands_for(const Options& o, const CategoricalGrid& grid) {
  auto bands = parse_bands(o.bands);
  return bands ? *bands : DistanceClassification::standard_for(grid);
}

std::string slug(const ScenarioSpec& spec) {
  return "X" + std::to_string(spec.num_categories) + "-" + to_string(spec.kind);
}

int run_generate(const Options& o) {
  if (o.out.empty()) throw InputError("generate needs --out DIR");
  fs::create_directories(o.out);
  const auto names = o.scenarios.empty() ? std::vector<std::string>{"random"} : o.scenarios;
  const auto categories = o.categories.empty() ? std::vector<Category>{2} : o.categories;
  const Index replicates = o.replicates > 0 ? o.replicates : 1;

  nlohmann::json manifest;
  manifest["master_seed"] = o.seed;
  manifest["files"] = nlohmann::json::array();
  for (const auto& name : names) {
    for (Category c : categories) {
      ScenarioSpec spec;
      spec.kind = parse_scenario(name);
      spec.num_categories = c;
      spec.rows = o.rows;
      spec.cols = o.cols;
      spec.pmf = o.uniform_pmf ? PmfSource::Uniform : PmfSource::Dirichlet;
      validate(spec);
      for (Index r = 0; r < replicates; ++r) {
        std::ostringstream file;
        file << slug(spec) << (o.uniform_pmf ? "-uniform" : "") << "_r" << std::setw(4)
             << std::setfill('0') << r << ".grid";
        const auto grid = generate_replicate(spec, o.seed, static_cast<std::uint64_t>(r));
        save_grid((fs::path(o.out) / file.str()).string(), grid);
        manifest["files"].push_back({
            {"file", file.str()},
            {"scenario", to_string(spec.kind)},
            {"categories", spec.num_categories},
            {"rows", spec.rows},
            {"cols", spec.cols},
            {"pmf", spec.pmf == PmfSource::Uniform ? "uniform" : "dirichlet"},
            {"repulsive_noise", spec.repulsive_noise},
            {"clusters", spec.clusters},
            {"master_seed", o.seed},
            {"replicate", r},
            {"counts", grid.category_counts()},
        });
      }
    }
  }
  std::ofstream out(fs::path(o.out) / "manifest.json");
  out << manifest.dump(2) << '\n';
  if (!out) throw InputError("cannot write manifest.json");
  std::cerr << manifest["files"].size() << " grids written to " << o.out << '\n';
  return 0;
}

int run_measure(const Options& o) {
  ExperimentPlan plan;
  plan.measures = parse_measures(o.measures);
  plan.bands = parse_bands(o.bands);
  plan.ordered_classic = o.ordered;
  plan.partition_areas = o.areas;
  if (plan.measures.empty()) throw InputError("no measures selected");

  int status = 0;
  std::cout << "file,measure,band,value\n" << std::setprecision(17);
  for (const auto& path : o.files) {
    try {
      const auto grid = load_grid(path);
      std::optional<AreaPartition> partition;
      std::vector<std::string> skipped;
      const bool areal = plan.measures.contains(Measure::Batty) || plan.measures.contains(Measure::Karlstrom);
      try {
        if (areal) partition = partition_window(grid, plan.partition_areas, derive_seed(o.seed, kPartitionStream, 0));
      } catch (const Error& e) {
        skipped.push_back(std::string("no partition: ") + e.what());
      }
      for (const auto& row : measure_grid(grid, plan, partition ? &*partition : nullptr, &skipped)) {
        std::cout << path << ',' << row.measure << ",\"" << row.band << "\"," << row.value << '\n';
      }
      for (const auto& note : skipped) std::cerr << path << ": " << note << '\n';
    } catch (const Error& e) {
      std::cerr << path << ": " << e.what() << '\n';
      status = 1;
    }
  }
  return status;
}

int run_decompose(const Options& o) {
  if (o.files.size() != 1) throw InputError("decompose takes exactly one grid file");
  const auto grid = load_grid(o.files.front());
  const auto bands = bands_for(o, grid);
  const auto sample = enumerate_pairs(grid, bands, {grid.num_categories(), false}, o.threads);
  if (!o.pairs.empty()) {
    std::ofstream out(o.pairs);
    if (o.ordered) {
      enumerate_pairs(grid, bands, {grid.num_categories(), true}, o.threads).write_csv(out);
    } else {
      sample.write_csv(out);
    }
    if (!out) throw InputError("cannot write " + o.pairs);
  }
  const auto d = decompose(sample);
  if (o.format == "csv") {
    std::cout << csv_header(bands.num_bands()) << '\n' << csv_row(d) << '\n';
  } else {
    std::cout << to_json(d).dump(2) << '\n';
  }
  return 0;
}

ExperimentPlan experiment_plan(const Options& o) {
  const Index replicates = o.replicates > 0 ? o.replicates : (o.full ? 1000 : 100);
  auto plan = ExperimentPlan::standard(replicates, o.seed);
  if (!o.scenarios.empty() || !o.categories.empty()) {
    plan.scenarios.clear();
    const auto categories = o.categories.empty() ? std::vector<Category>{2} : o.categories;
    for (Category c : categories) {
      std::vector<std::string> names = o.scenarios;
      if (names.empty()) {
        names = c == 2 ? std::vector<std::string>{"compact", "repulsive", "multicluster", "random"}
                       : std::vector<std::string>{"compact", "random"};
      }
      for (const auto& name : names) {
        ScenarioRun run;
        run.spec.kind = parse_scenario(name);
        run.spec.num_categories = c;
        run.replicates = replicates;
        plan.scenarios.push_back(run);
      }
    }
  }
  for (auto& run : plan.scenarios) {
    run.spec.rows = o.rows;
    run.spec.cols = o.cols;
  }
  plan.measures = parse_measures(o.measures);
  plan.bands = parse_bands(o.bands);
  plan.ordered_classic = o.ordered;
  plan.partition_areas = o.areas;
  plan.threads = o.threads;
  if (!o.out.empty()) plan.output_dir = o.out;
  return plan;
}

int run_experiment_cmd(const Options& o) {
  const auto plan = experiment_plan(o);
  const auto result = run_experiment(plan);
  if (plan.output_dir) {
    std::cerr << result.rows.size() << " rows, " << result.summary.size() << " summary lines written to "
              << plan.output_dir->string() << '\n';
  } else {
    write_summary_csv(std::cout, result.summary);
  }
  for (const auto& e : result.errors) std::cerr << "error: " << e << '\n';
  if (!result.notes.empty()) std::cerr << result.notes.size() << " measure(s) skipped, see errors.log\n";
  return result.errors.empty() ? 0 : 1;
}

int run_verify(const Options& o) {
  bool ok = true;
  for (const auto& path : o.files) {
    IdentityReport report;
    try {
      report = verify_file(path, parse_bands(o.bands));
    } catch (const Error& e) {
      report.checks.push_back({"bands_valid", 0.0, false, e.what()});
    }
    std::cout << "== " << path << '\n';
    report.print(std::cout);
    ok = ok && report.all_passed();
  }
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spatial entropy measures for categorical lattice data"};
  app.require_subcommand(1);
  Options o;

  const auto shape = [&o](CLI::App* cmd) {
    cmd->add_option("--rows", o.rows, "Lattice rows")->check(CLI::PositiveNumber);
    cmd->add_option("--cols", o.cols, "Lattice columns")->check(CLI::PositiveNumber);
    cmd->add_option("--categories", o.categories, "Number(s) of categories I")->delimiter(',');
    cmd->add_option("--scenario", o.scenarios, "compact, repulsive, multicluster, random")->delimiter(',');
    cmd->add_option("--replicates", o.replicates, "Replicates per scenario")->check(CLI::PositiveNumber);
    cmd->add_option("--seed", o.seed, "Master seed");
  };
  const auto measuring = [&o](CLI::App* cmd) {
    cmd->add_option("--bands", o.bands, "Distance breaks, e.g. 0,1,2,5,10,20,30,70.711");
    cmd->add_flag("--ordered,!--unordered", o.ordered, "Ordered pairs for the contiguity measures");
    cmd->add_option("--threads", o.threads, "Worker threads")->check(CLI::PositiveNumber);
  };

  auto* generate = app.add_subcommand("generate", "Write simulated grids and a manifest");
  shape(generate);
  generate->add_flag("--uniform-pmf", o.uniform_pmf, "Equal category counts instead of a Dirichlet draw");
  generate->add_option("--out", o.out, "Output directory")->required();

  auto* measure = app.add_subcommand("measure", "Compute measures on grid files");
  measuring(measure);
  measure->add_option("--measures", o.measures, "Comma-separated measures or 'all'");
  measure->add_option("--seed", o.seed, "Seed of the window partition");
  measure->add_option("--areas", o.areas, "Areas of the window partition");
  measure->add_option("files", o.files, "Grid files")->required()->check(CLI::ExistingFile);

  auto* decompose_cmd = app.add_subcommand("decompose", "Entropy decomposition of one grid");
  measuring(decompose_cmd);
  decompose_cmd->add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  decompose_cmd->add_option("--pairs", o.pairs, "Also write the pair counts CSV here");
  decompose_cmd->add_option("file", o.files, "Grid file")->required()->check(CLI::ExistingFile);

  auto* experiment = app.add_subcommand("experiment", "Run the scenario ensemble");
  shape(experiment);
  measuring(experiment);
  experiment->add_option("--measures", o.measures, "Comma-separated measures or 'all'");
  experiment->add_option("--out", o.out, "Output directory for results.csv, summary.csv, errors.log");
  experiment->add_option("--areas", o.areas, "Areas of the window partition");
  experiment->add_flag("--full", o.full, "1000 replicates per scenario");

  auto* verify_cmd = app.add_subcommand("verify", "Check the identity suite on grid files");
  verify_cmd->add_option("--bands", o.bands, "Distance breaks");
  verify_cmd->add_option("files", o.files, "Grid files")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*generate) return run_generate(o);
    if (*measure) return run_measure(o);
    if (*decompose_cmd) return run_decompose(o);
    if (*experiment) return run_experiment_cmd(o);
    if (*verify_cmd) return run_verify(o);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
