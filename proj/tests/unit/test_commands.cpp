#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "../support.hpp"
#include "algotrace/algorithms/graph.hpp"
#include "algotrace/commands.hpp"
#include "algotrace/dataset_io.hpp"
#include "algotrace/spec_registry.hpp"

using namespace algotrace;
using testing::error_kind;
namespace fs = std::filesystem;

namespace {

GenerateOptions small_options(const fs::path& out, std::vector<std::string> algorithms) {
  GenerateOptions o;
  o.algorithms = std::move(algorithms);
  o.out = out;
  o.seed = 3;
  o.overrides = {6, 3, 2, 6, 9};
  return o;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

void dump(const fs::path& p, const std::string& bytes) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  out << bytes;
}

/// Byte offset one past the end of record `index` of a .traj file.
std::size_t record_end(const fs::path& file, std::uint64_t index) {
  TrajReader reader(file);
  std::vector<std::size_t> sizes;
  while (auto p = reader.next_payload()) sizes.push_back(8 + p->size());
  std::size_t total = 0;
  for (auto s : sizes) total += s;
  std::size_t end = fs::file_size(file) - total;
  for (std::uint64_t k = 0; k <= index; ++k) end += sizes[k];
  return end;
}

int run_cli(const std::string& args, const fs::path& stdout_file = "/dev/null") {
  const std::string cmd = std::string(ALGOTRACE_CLI) + " " + args + " > " + stdout_file.string() +
                          " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_SUITE("commands") {

TEST_CASE("generate writes every algorithm and validate finds it clean") {
  testing::TempDir dir("gen");
  const auto summaries = generate_dataset(small_options(dir.path(), {"all"}), nullptr);
  CHECK(summaries.size() == 30);
  for (const auto& s : summaries) CHECK(s.violations == 0);
  CHECK(fs::exists(dir / "specs.json"));
  const Manifest m = read_manifest(dir / "bfs");
  CHECK(m.splits.at(Split::Train).count == 6);
  CHECK(m.splits.at(Split::Val).count == 3);
  CHECK(m.splits.at(Split::Test).count == 2);
  CHECK(m.splits.at(Split::Test).n == 9);
  CHECK(m.spec_sha256 == spec_digest("bfs"));
  CHECK(read_manifest(dir / "segments_intersect").splits.at(Split::Train).count == 6 * 64);

  const ValidateReport report = validate_dataset(dir.path(), 2);
  CHECK(report.clean());
  CHECK(report.records_checked == 29 * 11 + 11 * 64);
  CHECK(report.to_json().at("clean") == true);
}

TEST_CASE("default counts: 1000/32/32, and x64 for graph-level outputs") {
  testing::TempDir dir("defaults");
  GenerateOptions o;
  o.algorithms = {"minimum", "segments_intersect"};
  o.out = dir.path();
  generate_dataset(o, nullptr);
  const Manifest plain = read_manifest(dir / "minimum");
  CHECK(plain.splits.at(Split::Train).count == 1000);
  CHECK(plain.splits.at(Split::Val).count == 32);
  CHECK(plain.splits.at(Split::Test).count == 32);
  CHECK(plain.splits.at(Split::Train).n == 16);
  CHECK(plain.splits.at(Split::Test).n == 64);
  const Manifest graph_level = read_manifest(dir / "segments_intersect");
  CHECK(graph_level.splits.at(Split::Train).count == 64000);
  CHECK(graph_level.splits.at(Split::Val).count == 2048);
  CHECK(graph_level.splits.at(Split::Test).count == 2048);
  CHECK(validate_dataset(dir.path()).clean());
}

TEST_CASE("generation is byte-identical across runs and thread counts") {
  testing::TempDir a("det-a"), b("det-b");
  auto oa = small_options(a.path(), {"quicksort", "dijkstra", "lcs_length"});
  auto ob = small_options(b.path(), {"quicksort", "dijkstra", "lcs_length"});
  oa.jobs = 1;
  ob.jobs = 3;
  generate_dataset(oa, nullptr);
  generate_dataset(ob, nullptr);
  for (const char* alg : {"quicksort", "dijkstra", "lcs_length"}) {
    for (const char* file : {"train.traj", "val.traj", "test.traj", "manifest.json"}) {
      CAPTURE(alg);
      CAPTURE(file);
      CHECK(slurp(a / alg / file) == slurp(b / alg / file));
    }
  }
  // A different seed changes the data.
  testing::TempDir c("det-c");
  auto oc = small_options(c.path(), {"quicksort"});
  oc.seed = 4;
  generate_dataset(oc, nullptr);
  CHECK(slurp(a / "quicksort" / "train.traj") != slurp(c / "quicksort" / "train.traj"));
}

TEST_CASE("a single flipped pointer byte yields exactly one violation at that record") {
  testing::TempDir dir("flip");
  generate_dataset(small_options(dir.path(), {"bfs"}), nullptr);
  const fs::path file = dir / "bfs" / "val.traj";
  // pi is the last probe of a bfs record: flip the low byte of its last entry.
  const std::size_t at = record_end(file, 1) - 4;
  std::string bytes = slurp(file);
  bytes[at] ^= 1;
  dump(file, bytes);

  const ValidateReport report = validate_dataset(dir.path());
  REQUIRE(report.violations.size() == 1);
  CHECK(report.violations[0].split == "val");
  CHECK(report.violations[0].record == 1);
  CHECK(report.digest_mismatches.size() == 1);
}

TEST_CASE("a wrong split count is a count violation") {
  testing::TempDir dir("count");
  generate_dataset(small_options(dir.path(), {"minimum"}), nullptr);
  Manifest m = read_manifest(dir / "minimum");
  m.splits[Split::Test].count = 5;
  write_manifest(dir / "minimum", m);
  const ValidateReport report = validate_dataset(dir.path());
  REQUIRE_FALSE(report.clean());
  bool found = false;
  for (const auto& v : report.violations) {
    for (const auto& msg : v.messages) found = found || msg.find("CountMismatch") != std::string::npos;
  }
  CHECK(found);
}

TEST_CASE("validate notices a stale spec digest and a missing split") {
  testing::TempDir dir("stale");
  generate_dataset(small_options(dir.path(), {"minimum"}), nullptr);
  Manifest m = read_manifest(dir / "minimum");
  m.spec_sha256 = std::string(64, '0');
  write_manifest(dir / "minimum", m);
  CHECK_FALSE(validate_dataset(dir.path()).clean());

  m.spec_sha256 = spec_digest("minimum");
  write_manifest(dir / "minimum", m);
  CHECK(validate_dataset(dir.path()).clean());
  fs::remove(dir / "minimum" / "train.traj");
  CHECK_FALSE(validate_dataset(dir.path()).clean());
}

TEST_CASE("inspect") {
  testing::TempDir dir("inspect");
  generate_dataset(small_options(dir.path(), {"insertion_sort"}), nullptr);
  // 32-record file.
  std::vector<Trajectory> records;
  for (const auto& cfg : testing::random_configs("bellman_ford", 32, 3, 6, 1)) {
    records.push_back(generate_trajectory(cfg));
  }
  write_traj(dir / "bf.traj", get_spec("bellman_ford"), records);
  CHECK(read_record(dir / "bf.traj", 31) == records[31]);
  CHECK(error_kind([&] { read_record(dir / "bf.traj", 99); }) == ErrorKind::IndexOutOfRange);

  const Trajectory single =
      graph_trajectory(GraphAlgorithm::BellmanFord, {1, {0}, {0.0}, 0, 0});
  const std::string text = render_trajectory(single);
  CHECK(text.find("pi: 0→0") != std::string::npos);

  const std::string sorted =
      render_trajectory(read_record(dir / "insertion_sort" / "train.traj", 0));
  CHECK(sorted.find("list:") != std::string::npos);
  CHECK(sorted.find("hint frame 0:") != std::string::npos);
}

TEST_CASE("stats") {
  testing::TempDir dir("stats");
  generate_dataset(small_options(dir.path(), {"minimum", "bubble_sort"}), nullptr);
  const auto stats = dataset_stats(dir.path());
  REQUIRE(stats.size() == 6);
  for (const auto& s : stats) {
    if (s.algorithm_id == "minimum") {
      // Minimum runs exactly n frames.
      CHECK(s.min_length == static_cast<std::size_t>(s.n));
      CHECK(s.max_length == static_cast<std::size_t>(s.n));
    }
  }
  std::ostringstream out;
  print_stats(out, stats);
  CHECK(out.str().find("total bytes") != std::string::npos);
}

TEST_CASE("unknown algorithms are rejected") {
  CHECK(error_kind([] { resolve_algorithms({"bogo_sort"}); }) == ErrorKind::UnknownAlgorithm);
  CHECK(resolve_algorithms({}).size() == 30);
  CHECK(resolve_algorithms({"all"}).size() == 30);
}

}  // TEST_SUITE

TEST_SUITE("cli") {

TEST_CASE("exit codes") {
  testing::TempDir dir("cli");
  const std::string out = (dir / "ds").string();
  REQUIRE(run_cli("generate --algorithms minimum,bfs --train 4 --val 2 --test 2 --quiet --out " +
                  out) == 0);
  CHECK(run_cli("validate " + out) == 0);
  CHECK(run_cli("inspect " + out + "/bfs/val.traj --index 1") == 0);
  CHECK(run_cli("inspect " + out + "/bfs/val.traj --index 99") == 4);
  CHECK(run_cli("stats " + out) == 0);
  CHECK(run_cli("specs") == 0);

  CHECK(run_cli("generate --algorithms bogo_sort --out " + out) == 4);
  CHECK(run_cli("generate --alphabet-size 9 --algorithms lcs_length --out " + out) == 4);
  CHECK(run_cli("generate --no-such-flag") == 4);
  CHECK(run_cli("") == 4);
  CHECK(run_cli("validate " + (dir / "absent").string()) == 3);

  // Corrupt one byte: validate reports a violation.
  const fs::path val = dir / "ds" / "minimum" / "val.traj";
  std::string bytes = slurp(val);
  bytes[bytes.size() - 1] ^= 1;
  dump(val, bytes);
  CHECK(run_cli("validate " + out + " --report " + (dir / "r.json").string()) == 2);
  CHECK(fs::exists(dir / "r.json"));
}

TEST_CASE("evaluate") {
  testing::TempDir dir("eval");
  const std::string fixtures = std::string(ALGOTRACE_SOURCE_DIR) + "/tests/fixtures/";
  const fs::path out = dir / "out.txt";
  REQUIRE(run_cli("evaluate --scores " + fixtures + "published_test_scores.csv", out) == 0);
  CHECK(slurp(out).find("counts,0/3/27,1/5/24,4/2/24,8/3/19,8/6/16") != std::string::npos);

  dump(dir / "bad.csv", "model,algorithm,mean,std\nA,x,not-a-number,1\n");
  CHECK(run_cli("evaluate --scores " + (dir / "bad.csv").string()) == 4);
  dump(dir / "one.csv", "model,algorithm,mean,std\nA,x,50,1\n");
  CHECK(run_cli("evaluate --scores " + (dir / "one.csv").string()) == 4);

  REQUIRE(run_cli("generate --algorithms bfs --train 2 --val 2 --test 3 --quiet --out " +
                  (dir / "ds").string()) == 0);
  const std::string truth = (dir / "ds" / "bfs").string();
  REQUIRE(run_cli("evaluate --truth " + truth + " --pred " + truth + " --csv " +
                      (dir / "self.csv").string(),
                  out) == 0);
  CHECK(slurp(out).find("bfs micro_f1 100") != std::string::npos);
  CHECK(slurp(dir / "self.csv").find("model,bfs,100") != std::string::npos);
}

}  // TEST_SUITE
