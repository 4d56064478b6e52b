#include <gtest/gtest.h>

#include "ringsched/files.hpp"
#include "ringsched/report.hpp"

namespace ringsched {
namespace {

std::vector<RunResult> small_runs(std::uint64_t seed) {
  const std::vector<ContentionLevel> levels{{"light", 2000.0, 6}};
  return run_contention_sweep(SimConfig{}, seed, levels, {Strategy::precompute(), Strategy::fixed(4)}, false);
}

TEST(Report, RenderIsByteStable) {
  const auto a = render_report(SimConfig{}, Json{{"source", "test"}}, small_runs(3));
  const auto b = render_report(SimConfig{}, Json{{"source", "test"}}, small_runs(3));
  EXPECT_EQ(a, b);
}

TEST(Report, SweepIsOrderedAndParallelMatchesSerial) {
  const std::vector<ContentionLevel> levels{{"a", 1500.0, 5}, {"b", 800.0, 5}};
  const auto strategies = all_strategies();
  const auto serial = run_contention_sweep(SimConfig{}, 4, levels, strategies, false);
  const auto parallel = run_contention_sweep(SimConfig{}, 4, levels, strategies, true);
  ASSERT_EQ(serial.size(), levels.size() * strategies.size());
  for (std::size_t i = 0; i < serial.size(); ++i) {
    EXPECT_EQ(serial[i].contention, levels[i / strategies.size()].name);
    EXPECT_EQ(serial[i].report.strategy, strategies[i % strategies.size()].name());
    EXPECT_EQ(serial[i].report.jobs, parallel[i].report.jobs);
  }
}

TEST(Report, ParseRoundTrip) {
  const auto runs = small_runs(1);
  const auto rows = parse_report(render_report(SimConfig{}, Json::object(), runs));
  ASSERT_EQ(rows.size(), runs.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(rows[i].strategy, runs[i].report.strategy);
    EXPECT_EQ(rows[i].contention, "light");
    EXPECT_EQ(rows[i].seed, 1u);
    EXPECT_DOUBLE_EQ(rows[i].mean_completion_hours, runs[i].report.mean_completion_hours);
  }
}

TEST(Report, EmbedsConfigAndToolVersion) {
  SimConfig c;
  c.scheduling_interval = 45.0;
  const auto doc = Json::parse(render_report(c, Json::object(), small_runs(1)));
  EXPECT_EQ(doc["tool_version"], kToolVersion);
  EXPECT_EQ(doc["config"]["scheduling_interval"], 45.0);
  EXPECT_EQ(doc["config"]["allow_shrink"], false);
  EXPECT_EQ(doc["runs"][0]["jobs"].size(), 6u);
}

TEST(Report, SchemaMismatchRejected) {
  auto doc = Json::parse(render_report(SimConfig{}, Json::object(), small_runs(1)));
  doc["schema_version"] = 99;
  EXPECT_THROW(parse_report(doc.dump()), VersionMismatchError);
  doc["schema"] = "something-else";
  EXPECT_THROW(parse_report(doc.dump()), ParseError);
  EXPECT_THROW(parse_report("not json"), ParseError);
}

TEST(Comparison, AveragesOverSeedsAndKeepsOrder) {
  const std::vector<ReportRow> rows{{"precompute", "moderate", 1, 2.0},
                                    {"fixed8", "moderate", 1, 6.0},
                                    {"precompute", "moderate", 2, 4.0},
                                    {"precompute", "none", 1, 1.0}};
  const auto t = build_comparison(rows);
  EXPECT_EQ(t.strategies, (std::vector<std::string>{"precompute", "fixed8"}));
  EXPECT_EQ(t.contentions, (std::vector<std::string>{"moderate", "none"}));
  EXPECT_DOUBLE_EQ((t.cells.at({"precompute", "moderate"})), 3.0);
  const auto text = format_comparison(t);
  EXPECT_NE(text.find("n/a"), std::string::npos);
  EXPECT_NE(text.find("3.00"), std::string::npos);
  EXPECT_EQ(comparison_csv(rows).substr(0, 46), "strategy,contention,seed,mean_completion_hours");
}

TEST(SampleFiles, ParsesCommentsAndBlankLines) {
  const auto pts = parse_loss_samples("# header\n\n0 3.0\n10 2.5  # trailing\n20 2.2\n");
  ASSERT_EQ(pts.size(), 3u);
  EXPECT_EQ(pts[1].k, 10);
  EXPECT_DOUBLE_EQ(pts[1].l, 2.5);
}

TEST(SampleFiles, ErrorsCarryLineNumbers) {
  try {
    parse_sample_pairs("1 2\n\n3\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
  EXPECT_THROW(parse_sample_pairs("1 2 3\n"), ParseError);
  EXPECT_THROW(parse_speed_samples("0 1.0\n"), ParseError);
  EXPECT_THROW(parse_loss_samples("1.5 1.0\n"), ParseError);
}

TEST(ModelFiles, RoundTripBothKinds) {
  const ModelFile loss{LossCurveModel{1e-3, 2.0, 0.25}, 1e-6, 12};
  const auto back = parse_model_file(render_model_file(loss));
  EXPECT_EQ(std::get<LossCurveModel>(back.model).beta1, 2.0);
  EXPECT_EQ(back.samples, 12u);
  const ModelFile speed{ResourceModel{1, 2, 3, 4, 5, 6}, 0.5, 4};
  EXPECT_EQ(std::get<ResourceModel>(parse_model_file(render_model_file(speed)).model),
            (ResourceModel{1, 2, 3, 4, 5, 6}));
}

TEST(ModelFiles, VersionChecked) {
  auto doc = Json::parse(render_model_file(ModelFile{LossCurveModel{1, 1, 1}, 0, 3}));
  doc["version"] = 2;
  EXPECT_THROW(parse_model_file(doc.dump()), VersionMismatchError);
}

TEST(JobsFiles, RoundTrip) {
  std::vector<JobState<ResourceModel>> jobs(2);
  jobs[0] = {4, 10.0, ResourceModel{1, 0, 0, 1, 1, 1}, 2, 3.0, 8};
  jobs[1] = {9, 5.0, ResourceModel{2, 0, 0, 1, 1, 1}, 0, 4.0, 0};
  const auto back = parse_jobs_file(render_jobs_file(jobs));
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[0].job_id, 4u);
  EXPECT_EQ(back[0].current_workers, 2);
  EXPECT_EQ(back[1].model, jobs[1].model);
  EXPECT_THROW(parse_jobs_file("{\"format\":\"ringsched-jobs\",\"version\":1,\"jobs\":[{}]}"), ParseError);
}

}  // namespace
}  // namespace ringsched
