// Command-line front end: generate, inspect, validate, evaluate, stats.
//
// Exit codes: 0 ok, 2 spec or data violation, 3 I/O failure, 4 bad flags or
// malformed user input.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>

#include "algotrace/commands.hpp"
#include "algotrace/dataset_io.hpp"
#include "algotrace/eval.hpp"
#include "algotrace/spec_registry.hpp"

namespace fs = std::filesystem;
using namespace algotrace;

namespace {

constexpr int kOk = 0;
constexpr int kViolation = 2;
constexpr int kIo = 3;
constexpr int kBadFlags = 4;

int exit_code(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::Io: return kIo;
    case ErrorKind::InvalidConfig:
    case ErrorKind::Parse:
    case ErrorKind::UnknownAlgorithm:
    case ErrorKind::IndexOutOfRange:
    case ErrorKind::SingleModel: return kBadFlags;
    default: return kViolation;
  }
}

struct GenerateFlags {
  std::vector<std::string> algorithms{"all"};
  std::string out = "dataset";
  std::uint64_t seed = 0;
  std::optional<std::size_t> train, val, test;
  std::optional<int> train_nodes, test_nodes;
  SamplerKnobs knobs;
  unsigned jobs = 1;
  bool f32 = false;
  bool quiet = false;
};

int run_generate(const GenerateFlags& f) {
  GenerateOptions options;
  options.algorithms = f.algorithms;
  options.out = f.out;
  options.seed = f.seed;
  options.overrides = {f.train, f.val, f.test, f.train_nodes, f.test_nodes};
  options.knobs = f.knobs;
  options.jobs = f.jobs;
  options.f32_scalars = f.f32;
  const auto summaries = generate_dataset(options, f.quiet ? nullptr : &std::cerr);
  std::size_t violations = 0;
  for (const auto& s : summaries) violations += s.violations;
  if (violations > 0) {
    std::cerr << violations << " trajectories violate their spec\n";
    return kViolation;
  }
  return kOk;
}

int run_inspect(const std::string& file, std::uint64_t index) {
  std::cout << render_trajectory(read_record(file, index));
  return kOk;
}

int run_validate(const std::string& path, unsigned jobs, const std::string& report_path) {
  const ValidateReport report = validate_dataset(path, jobs);
  const std::string json = report.to_json().dump(2);
  if (report_path.empty()) {
    std::cout << json << '\n';
  } else {
    std::ofstream out(report_path);
    if (!out) throw Error(ErrorKind::Io, "cannot write " + report_path);
    out << json << '\n';
    std::cerr << (report.clean() ? "clean" : "violations found") << ": " << report.records_checked
              << " records checked, " << report.violations.size() << " violations\n";
  }
  return report.clean() ? kOk : kViolation;
}

/// Either a .traj file, or an algorithm directory whose `split` file is used.
fs::path resolve_traj(const fs::path& path, const std::string& split) {
  if (fs::is_directory(path)) return path / (split + ".traj");
  return path;
}

int run_evaluate(const std::string& truth, const std::string& pred, const std::string& split,
                 const std::vector<std::string>& score_files, const std::string& model,
                 const std::string& csv_out) {
  if (!truth.empty() || !pred.empty()) {
    if (truth.empty() || pred.empty()) {
      throw Error(ErrorKind::InvalidConfig, "--truth and --pred go together");
    }
    const auto truth_records = read_traj(resolve_traj(truth, split));
    const auto pred_records = read_traj(resolve_traj(pred, split));
    const double f1 = micro_f1(truth_records, pred_records);
    const std::string algorithm =
        truth_records.empty() ? std::string("?") : truth_records.front().algorithm_id;
    std::cout << algorithm << " micro_f1 " << f1 << '\n';
    if (!csv_out.empty()) {
      ScoreTable table{{{model, algorithm, f1, 0.0}}};
      std::ofstream out(csv_out);
      if (!out) throw Error(ErrorKind::Io, "cannot write " + csv_out);
      write_score_csv(out, table);
    }
  }
  if (!score_files.empty()) {
    ScoreTable merged;
    for (const auto& file : score_files) {
      const ScoreTable t = read_score_csv(file);
      merged.rows.insert(merged.rows.end(), t.rows.begin(), t.rows.end());
    }
    const WtlResult result = win_tie_loss(merged);
    std::cout << "algorithm";
    for (const auto& m : result.models) std::cout << ',' << m;
    std::cout << '\n';
    for (const auto& a : result.algorithms) {
      std::cout << a;
      for (const auto& m : result.models) {
        const auto it = result.labels.find({a, m});
        std::cout << ',' << (it == result.labels.end() ? '-' : to_char(it->second));
      }
      std::cout << '\n';
    }
    std::cout << "counts";
    for (const auto& m : result.models) {
      const auto& c = result.counts.at(m);
      std::cout << ',' << c.wins << '/' << c.ties << '/' << c.losses;
    }
    std::cout << '\n';
  }
  if (truth.empty() && score_files.empty()) {
    throw Error(ErrorKind::InvalidConfig, "evaluate needs --truth/--pred or --scores");
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Trajectory generator and evaluation harness for instrumented classical algorithms"};
  app.require_subcommand(1);

  GenerateFlags gen;
  auto* generate = app.add_subcommand("generate", "Sample, run and write dataset splits");
  generate->add_option("--algorithms", gen.algorithms, "Algorithm ids or 'all'")->delimiter(',');
  generate->add_option("--out", gen.out, "Output root directory");
  generate->add_option("--seed", gen.seed, "Generator seed");
  generate->add_option("--train", gen.train, "Train count (before the graph-output multiplier)");
  generate->add_option("--val", gen.val, "Validation count (before the multiplier)");
  generate->add_option("--test", gen.test, "Test count (before the multiplier)");
  generate->add_option("--train-nodes", gen.train_nodes, "Node count for train and validation")
      ->check(CLI::PositiveNumber);
  generate->add_option("--test-nodes", gen.test_nodes, "Node count for test")
      ->check(CLI::PositiveNumber);
  generate->add_option("--er-edge-prob", gen.knobs.er_edge_prob, "Erdos-Renyi edge probability");
  generate->add_option("--alphabet-size", gen.knobs.alphabet_size, "String alphabet size (2-4)");
  generate->add_option("--needle-fraction", gen.knobs.needle_fraction, "Needle length / n");
  generate->add_option("--intersect-fraction", gen.knobs.intersect_fraction,
                       "Share of intersecting segment pairs");
  generate->add_option("--jobs", gen.jobs, "Worker threads")->check(CLI::PositiveNumber);
  generate->add_flag("--f32", gen.f32, "Store scalars as 32-bit floats");
  generate->add_flag("--quiet", gen.quiet, "No progress output");

  std::string inspect_file;
  std::uint64_t inspect_index = 0;
  auto* inspect = app.add_subcommand("inspect", "Render one trajectory as text");
  inspect->add_option("file", inspect_file, ".traj file")->required();
  inspect->add_option("--index", inspect_index, "Record index");

  std::string validate_path, validate_report;
  unsigned validate_jobs = 1;
  auto* validate = app.add_subcommand("validate", "Check digests, counts, specs and replay");
  validate->add_option("path", validate_path, "Dataset root or algorithm directory")->required();
  validate->add_option("--jobs", validate_jobs, "Worker threads")->check(CLI::PositiveNumber);
  validate->add_option("--report", validate_report, "Write the JSON report here instead of stdout");

  std::string truth, pred, split = "test", model = "model", csv_out;
  std::vector<std::string> scores;
  auto* evaluate = app.add_subcommand("evaluate", "Score predictions or compare models");
  evaluate->add_option("--truth", truth, "Ground-truth .traj file or algorithm directory");
  evaluate->add_option("--pred", pred, "Prediction .traj file or directory");
  evaluate->add_option("--split", split, "Split used when a directory is given")
      ->check(CLI::IsMember({"train", "val", "test"}));
  evaluate->add_option("--scores", scores, "Score CSV files (model,algorithm,mean,std)");
  evaluate->add_option("--model", model, "Model name for --csv");
  evaluate->add_option("--csv", csv_out, "Write the score as a one-row CSV");

  std::string stats_path;
  auto* stats = app.add_subcommand("stats", "Hint-length distribution and byte sizes");
  stats->add_option("path", stats_path, "Dataset root or algorithm directory")->required();

  auto* specs = app.add_subcommand("specs", "Print specs.json");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kBadFlags;
  }

  try {
    if (generate->parsed()) return run_generate(gen);
    if (inspect->parsed()) return run_inspect(inspect_file, inspect_index);
    if (validate->parsed()) return run_validate(validate_path, validate_jobs, validate_report);
    if (evaluate->parsed()) return run_evaluate(truth, pred, split, scores, model, csv_out);
    if (stats->parsed()) {
      print_stats(std::cout, dataset_stats(stats_path));
      return kOk;
    }
    if (specs->parsed()) {
      std::cout << export_specs().dump(2) << '\n';
      return kOk;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code(e);
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIo;
  }
  return kBadFlags;
}
