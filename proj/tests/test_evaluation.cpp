#include <gtest/gtest.h>

#include <numeric>

#include "eegscore/evaluation.hpp"
#include "support/fixtures.hpp"
#include "support/oracle.hpp"

namespace eegscore {
namespace {

constexpr double kTol = 1e-12;

TEST(Manifest, ExcludesGeneralizedAndFocalLabels) {
  auto m = parse_manifest("record_id,path,label\nr1,a.txt,ABSZ\nr2,b.txt,CPSZ\nr3,c.txt,NONE\nr4,d.txt,GNSZ\n",
                          Task::Seizure);
  ASSERT_EQ(m.entries.size(), 3u);
  EXPECT_EQ(m.excluded_count, 1u);
  EXPECT_EQ(m.entries[0].gold, label_index(SeizureType::Absence));
  EXPECT_EQ(m.entries[1].gold, label_index(SeizureType::ComplexPartial));
  EXPECT_EQ(m.entries[2].gold, label_index(SeizureType::None));
}

TEST(Manifest, HeaderOnlyIsEmpty) {
  auto m = parse_manifest("record_id,path,label\n", Task::Seizure);
  EXPECT_TRUE(m.entries.empty());
  EXPECT_EQ(m.excluded_count, 0u);
}

TEST(Manifest, UnknownLabelReportsLine) {
  try {
    parse_manifest("record_id,path,label\nr1,a.txt,ABSZ\nr2,b.txt,BANANA\n", Task::Seizure);
    FAIL() << "expected UnknownLabel";
  } catch (const UnknownLabel& e) {
    EXPECT_EQ(e.line(), 3u);
    EXPECT_NE(std::string(e.what()).find("BANANA"), std::string::npos);
  }
}

TEST(Manifest, StructuralErrors) {
  EXPECT_THROW(parse_manifest("", Task::Seizure), ParseError);
  EXPECT_THROW(parse_manifest("id,file,gold\n", Task::Seizure), ParseError);
  EXPECT_THROW(parse_manifest("record_id,path,label\nr1,a.txt\n", Task::Seizure), ParseError);
  EXPECT_THROW(parse_manifest("record_id,path,label\nr1,a.txt,ABSZ\nr1,b.txt,NONE\n", Task::Seizure),
               ParseError);
}

TEST(Manifest, OtherTasksAndCrlf) {
  auto n = parse_manifest("record_id,path,label\r\nr1,a.txt,normal\r\nr2,b.txt,Abnormal\r\n", Task::Normality);
  ASSERT_EQ(n.entries.size(), 2u);
  EXPECT_EQ(n.entries[1].gold, label_index(Normality::Abnormal));
  auto e = parse_manifest("record_id,path,label\nr1,a.txt,epilepsy\nr2,b.txt,no_epilepsy\n", Task::Epilepsy);
  EXPECT_EQ(e.entries[1].gold, label_index(EpilepsyStatus::NoEpilepsy));
  EXPECT_THROW(parse_manifest("record_id,path,label\nr1,a.txt,ABSZ\n", Task::Normality), UnknownLabel);
}

TEST(Manifest, LoadKeepsUnknownLabelType) {
  auto dir = testing::scratch_dir("manifest");
  std::ofstream(dir / "m.csv") << "record_id,path,label\nr1,a.txt,BANANA\n";
  EXPECT_THROW(load_manifest(dir / "m.csv", Task::Seizure), UnknownLabel);
  EXPECT_THROW(load_manifest(dir / "missing.csv", Task::Seizure), IoError);
}

Manifest manifest_of(Task task, std::vector<std::pair<std::string, std::size_t>> gold) {
  Manifest m{task, {}, 0};
  for (auto& [id, g] : gold) m.entries.push_back({id, id + ".txt", g});
  return m;
}

TEST(Confusion, PerfectPredictionsAreDiagonal) {
  auto m = manifest_of(Task::Normality, {{"a", 0}, {"b", 1}, {"c", 1}});
  auto cm = confusion({{"a", 0}, {"b", 1}, {"c", 1}}, m);
  EXPECT_EQ(cm, (ConfusionMatrix{{1, 0}, {0, 2}}));
  auto met = metrics(cm);
  EXPECT_DOUBLE_EQ(met.weighted.f1, 1.0);
}

TEST(Confusion, CellIsGoldByPredicted) {
  auto m = manifest_of(Task::Normality, {{"a", 0}, {"b", 1}});
  auto cm = confusion({{"a", 1}, {"b", 1}}, m);
  EXPECT_EQ(cm, (ConfusionMatrix{{0, 1}, {0, 1}}));
  auto met = metrics(cm);
  EXPECT_DOUBLE_EQ(met.per_class[0].precision, 0.0);
  EXPECT_DOUBLE_EQ(met.per_class[0].f1, 0.0);
  EXPECT_DOUBLE_EQ(met.per_class[1].precision, 0.5);
  EXPECT_DOUBLE_EQ(met.per_class[1].recall, 1.0);
}

TEST(Confusion, MissingPredictionNamesRecord) {
  auto m = manifest_of(Task::Normality, {{"a", 0}, {"b", 1}});
  try {
    confusion({{"a", 0}}, m);
    FAIL() << "expected MissingPrediction";
  } catch (const MissingPrediction& e) {
    EXPECT_NE(std::string(e.what()).find("b"), std::string::npos);
  }
}

TEST(Metrics, WorkedBinaryCase) {
  ConfusionMatrix cm{{8, 2}, {1, 9}};
  auto met = metrics(cm);
  EXPECT_NEAR(met.per_class[0].precision, 8.0 / 9.0, kTol);
  EXPECT_NEAR(met.per_class[0].recall, 0.8, kTol);
  EXPECT_NEAR(met.per_class[0].f1, 16.0 / 19.0, kTol);
  EXPECT_NEAR(met.per_class[0].f1, 0.8421, 5e-5);
  EXPECT_NEAR(met.per_class[1].precision, 9.0 / 11.0, kTol);
  EXPECT_NEAR(met.per_class[1].recall, 0.9, kTol);
  EXPECT_EQ(met.weighted.support, 20u);
}

TEST(Metrics, AbsentClassScoresZero) {
  ConfusionMatrix cm{{3, 0, 0}, {0, 2, 0}, {0, 0, 0}};
  auto met = metrics(cm);
  EXPECT_EQ(met.per_class[2].support, 0u);
  EXPECT_DOUBLE_EQ(met.per_class[2].precision, 0.0);
  EXPECT_DOUBLE_EQ(met.per_class[2].recall, 0.0);
  EXPECT_DOUBLE_EQ(met.per_class[2].f1, 0.0);
  EXPECT_DOUBLE_EQ(met.weighted.f1, 1.0);
}

TEST(Metrics, EmptyMatrixIsAllZero) {
  auto met = metrics(ConfusionMatrix{{0, 0}, {0, 0}});
  EXPECT_EQ(met.weighted.support, 0u);
  EXPECT_DOUBLE_EQ(met.weighted.precision, 0.0);
  EXPECT_DOUBLE_EQ(met.weighted.f1, 0.0);
}

TEST(MetricsProperty, MatchesPerRecordOracle) {
  std::mt19937_64 rng(20261015);
  double worst = 0;
  for (int i = 0; i < 1000; ++i) worst = std::max(worst, testing::oracle_error(testing::random_matrix(rng)));
  EXPECT_LE(worst, kTol);
}

TEST(MetricsProperty, LabelPermutationInvariance) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 300; ++i) {
    auto m = testing::random_matrix(rng);
    std::vector<std::size_t> perm(m.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    ConfusionMatrix p(m.size(), std::vector<std::uint64_t>(m.size()));
    for (std::size_t g = 0; g < m.size(); ++g)
      for (std::size_t q = 0; q < m.size(); ++q) p[perm[g]][perm[q]] = m[g][q];
    auto a = metrics(m), b = metrics(p);
    for (std::size_t c = 0; c < m.size(); ++c) {
      EXPECT_NEAR(a.per_class[c].f1, b.per_class[perm[c]].f1, kTol);
      EXPECT_EQ(a.per_class[c].support, b.per_class[perm[c]].support);
    }
    EXPECT_NEAR(a.weighted.f1, b.weighted.f1, kTol);
    EXPECT_NEAR(a.weighted.precision, b.weighted.precision, kTol);
  }
}

TEST(MetricsProperty, WeightedRecallIsAccuracy) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 300; ++i) {
    auto m = testing::random_matrix(rng);
    std::uint64_t diag = 0, total = 0;
    for (std::size_t g = 0; g < m.size(); ++g)
      for (std::size_t p = 0; p < m.size(); ++p) {
        total += m[g][p];
        if (g == p) diag += m[g][p];
      }
    auto met = metrics(m);
    EXPECT_NEAR(met.weighted.recall, safe_div(double(diag), double(total)), kTol);
    for (const auto& c : met.per_class) {
      EXPECT_GE(c.f1, 0.0);
      EXPECT_LE(c.f1, 1.0);
      EXPECT_LE(c.f1, std::max(c.precision, c.recall) + kTol);
    }
  }
}

TEST(Table, FixedLayout) {
  auto r = make_report(Task::Normality, {{8, 2}, {1, 9}}, 0);
  EXPECT_EQ(format_table(r),
            "Task       Precision   Recall  F1-score  Support\n"
            "Abnormal        0.85     0.85      0.85       20\n");
}

TEST(Table, JsonCarriesConfusionAndCounts) {
  auto r = make_report(Task::Seizure, ConfusionMatrix(6, std::vector<std::uint64_t>(6, 0)), 4);
  auto j = to_json(r);
  EXPECT_EQ(j["task"], "seizure");
  EXPECT_EQ(j["excluded_count"], 4);
  EXPECT_EQ(j["labels"].size(), 6u);
  EXPECT_EQ(j["per_class"].size(), 6u);
}

class FixtureEvaluation : public ::testing::Test {
 protected:
  Pipeline pipeline_{PipelineConfig{}};
  EvalReport run(const std::string& manifest, Task task) {
    return evaluate(testing::corpus_dir(), load_manifest(testing::fixture_dir() / manifest, task), pipeline_);
  }
};

TEST_F(FixtureEvaluation, PerfectOnAllTasks) {
  auto s = run("seizure.csv", Task::Seizure);
  EXPECT_DOUBLE_EQ(s.weighted.f1, 1.0);
  EXPECT_EQ(s.weighted.support, 13u);
  EXPECT_EQ(s.excluded_count, 1u);
  auto n = run("abnormal.csv", Task::Normality);
  EXPECT_DOUBLE_EQ(n.weighted.f1, 1.0);
  auto e = run("epilepsy.csv", Task::Epilepsy);
  EXPECT_DOUBLE_EQ(e.weighted.f1, 1.0);
}

TEST_F(FixtureEvaluation, ContradictoryGoldLowersScore) {
  auto s = run("seizure_contradictory.csv", Task::Seizure);
  EXPECT_LT(s.weighted.f1, 1.0);
  EXPECT_EQ(s.confusion[label_index(SeizureType::ComplexPartial)][label_index(SeizureType::None)], 1u);
}

TEST_F(FixtureEvaluation, EmptyManifestScoresZero) {
  auto r = evaluate(testing::corpus_dir(), parse_manifest("record_id,path,label\n", Task::Seizure), pipeline_);
  EXPECT_EQ(r.weighted.support, 0u);
  EXPECT_DOUBLE_EQ(r.weighted.f1, 0.0);
}

TEST_F(FixtureEvaluation, Deterministic) {
  auto a = to_json(run("seizure.csv", Task::Seizure)).dump();
  auto b = to_json(run("seizure.csv", Task::Seizure)).dump();
  EXPECT_EQ(a, b);
}

TEST_F(FixtureEvaluation, MissingReportIsIoError) {
  auto m = parse_manifest("record_id,path,label\nghost,ghost.txt,ABSZ\n", Task::Seizure);
  EXPECT_THROW(evaluate(testing::corpus_dir(), m, pipeline_), IoError);
}

}  // namespace
}  // namespace eegscore
