#include <doctest.h>

#include <fstream>
#include <sstream>

#include "../support.hpp"
#include "algotrace/eval.hpp"

using namespace algotrace;
using testing::error_kind;
using Ints = std::vector<std::int32_t>;

namespace {

const std::string kFixtures = std::string(ALGOTRACE_SOURCE_DIR) + "/tests/fixtures/";

Trajectory with_outputs(const char* id, int n, Frame outputs) {
  Trajectory t;
  t.algorithm_id = id;
  t.n = n;
  t.outputs = std::move(outputs);
  return t;
}

ScoreTable table_from(const std::string& csv) {
  std::istringstream in(csv);
  return read_score_csv(in);
}

}  // namespace

TEST_SUITE("eval") {

TEST_CASE("micro-F1 worked examples") {
  SUBCASE("identical predictions score 100") {
    std::vector<Trajectory> truth;
    for (const auto& cfg : testing::random_configs("bfs", 20, 2, 10, 1)) {
      truth.push_back(generate_trajectory(cfg));
    }
    CHECK(micro_f1(truth, truth) == 100.0);
  }
  SUBCASE("every pointer shifted scores 0") {
    const std::vector<Trajectory> truth{with_outputs("bfs", 4, {{"pi", Ints{0, 0, 1, 2}}})};
    const std::vector<Trajectory> pred{with_outputs("bfs", 4, {{"pi", Ints{1, 1, 2, 3}}})};
    CHECK(micro_f1(truth, pred) == 0.0);
  }
  SUBCASE("mask truth [1,0,0,1] against [1,1,0,0] scores 50") {
    const std::vector<Trajectory> truth{
        with_outputs("articulation_points", 4, {{"is_cut", Ints{1, 0, 0, 1}}})};
    const std::vector<Trajectory> pred{
        with_outputs("articulation_points", 4, {{"is_cut", Ints{1, 1, 0, 0}}})};
    CHECK(micro_f1(truth, pred) == doctest::Approx(50.0));
  }
  SUBCASE("all-zero masks on both sides count as perfect") {
    const std::vector<Trajectory> truth{
        with_outputs("articulation_points", 3, {{"is_cut", Ints{0, 0, 0}}})};
    CHECK(micro_f1(truth, truth) == 100.0);
  }
}

TEST_CASE("confusion bookkeeping") {
  const Trajectory t = with_outputs("find_maximum_subarray", 3,
                                    {{"start", Ints{0, 1, 0}}, {"end", Ints{0, 0, 1}}});
  const Trajectory p = with_outputs("find_maximum_subarray", 3,
                                    {{"start", Ints{0, 1, 0}}, {"end", Ints{0, 1, 0}}});
  const Confusion c = output_confusion(t, p);
  CHECK(c.tp == 1);
  CHECK(c.fp == 1);
  CHECK(c.fn == 1);
  CHECK(f1_percent({}) == 100.0);
  CHECK(f1_percent({0, 3, 0}) == 0.0);
}

TEST_CASE("schema and count mismatches") {
  const std::vector<Trajectory> one{with_outputs("bfs", 2, {{"pi", Ints{0, 0}}})};
  const std::vector<Trajectory> two{one[0], one[0]};
  CHECK(error_kind([&] { micro_f1(one, two); }) == ErrorKind::CountMismatch);
  const std::vector<Trajectory> other_n{with_outputs("bfs", 3, {{"pi", Ints{0, 0, 0}}})};
  CHECK(error_kind([&] { micro_f1(one, other_n); }) == ErrorKind::SchemaMismatch);
  const std::vector<Trajectory> other_alg{with_outputs("dfs", 2, {{"pi", Ints{0, 0}}})};
  CHECK(error_kind([&] { micro_f1(one, other_alg); }) == ErrorKind::SchemaMismatch);
  const std::vector<Trajectory> missing{with_outputs("bfs", 2, {})};
  CHECK(error_kind([&] { micro_f1(one, missing); }) == ErrorKind::SchemaMismatch);
}

TEST_CASE("score CSV parsing") {
  const ScoreTable t = table_from("model,algorithm,mean,std\nA,x,50,1\nB,x,40.5,0\n");
  REQUIRE(t.rows.size() == 2);
  CHECK(t.rows[1].mean == 40.5);
  CHECK(t.models() == std::vector<std::string>{"A", "B"});
  CHECK(t.algorithms() == std::vector<std::string>{"x"});

  std::ostringstream out;
  write_score_csv(out, t);
  CHECK(table_from(out.str()).rows.size() == 2);

  for (const char* bad : {
           "model,algorithm,mean\nA,x,50\n",                // wrong header
           "model,algorithm,mean,std\nA,x,50\n",            // short row
           "model,algorithm,mean,std\nA,x,fifty,1\n",       // not a number
           "model,algorithm,mean,std\nA,x,150,1\n",         // mean above 100
           "model,algorithm,mean,std\nA,x,50,-1\n",         // negative std
           "model,algorithm,mean,std\nA,x,50,1\nA,x,40,1\n" // duplicate
       }) {
    CAPTURE(bad);
    CHECK(error_kind([&] { table_from(bad); }) == ErrorKind::Parse);
  }
}

TEST_CASE("win/tie/loss rules") {
  SUBCASE("identical means with positive spread tie everywhere") {
    const WtlResult r = win_tie_loss(table_from(
        "model,algorithm,mean,std\nA,x,50,2\nB,x,50,2\nC,x,50,2\n"));
    for (const auto& m : r.models) CHECK(r.labels.at({"x", m}) == Wtl::Tie);
  }
  SUBCASE("exact boundary is not an outperformance") {
    // 60 - 10 = 50 is not > 50, so neither outperforms the other.
    const WtlResult r = win_tie_loss(table_from("model,algorithm,mean,std\nA,x,60,10\nB,x,50,0\n"));
    CHECK(r.labels.at({"x", "A"}) == Wtl::Tie);
    CHECK(r.labels.at({"x", "B"}) == Wtl::Tie);
  }
  SUBCASE("a clear winner") {
    const WtlResult r = win_tie_loss(table_from("model,algorithm,mean,std\nA,x,90,1\nB,x,50,0\n"));
    CHECK(r.labels.at({"x", "A"}) == Wtl::Win);
    CHECK(r.labels.at({"x", "B"}) == Wtl::Loss);
    CHECK(r.counts.at("A") == WtlCounts{1, 0, 0});
  }
  SUBCASE("a single model cannot be compared") {
    CHECK(error_kind([&] { win_tie_loss(table_from("model,algorithm,mean,std\nA,x,90,1\n")); }) ==
          ErrorKind::SingleModel);
  }
}

TEST_CASE("published score fixture reproduces the published counts and labels") {
  const WtlResult r = win_tie_loss(read_score_csv(kFixtures + "published_test_scores.csv"));
  REQUIRE(r.models == std::vector<std::string>{"Deep Sets", "GAT", "Memnet", "MPNN", "PGN"});
  CHECK(r.algorithms.size() == 30);
  CHECK(r.counts.at("Deep Sets") == WtlCounts{0, 3, 27});
  CHECK(r.counts.at("GAT") == WtlCounts{1, 5, 24});
  CHECK(r.counts.at("Memnet") == WtlCounts{4, 2, 24});
  CHECK(r.counts.at("MPNN") == WtlCounts{8, 3, 19});
  CHECK(r.counts.at("PGN") == WtlCounts{8, 6, 16});

  CHECK(r.labels.at({"Activity Selector", "MPNN"}) == Wtl::Win);
  for (const char* m : {"Deep Sets", "GAT", "Memnet", "PGN"}) {
    CHECK(r.labels.at({"Activity Selector", m}) == Wtl::Loss);
  }

  std::ifstream labels(kFixtures + "published_wtl_labels.csv");
  std::string line;
  std::getline(labels, line);
  int rows = 0;
  while (std::getline(labels, line)) {
    if (line.empty()) continue;
    const auto a = line.find(',');
    const auto b = line.rfind(',');
    const std::string algorithm = line.substr(0, a);
    const std::string model = line.substr(a + 1, b - a - 1);
    CAPTURE(line);
    CHECK(to_char(r.labels.at({algorithm, model})) == line.substr(b + 1)[0]);
    ++rows;
  }
  CHECK(rows == 150);
}

}  // TEST_SUITE
