#include <gtest/gtest.h>

#include "modmat/experiment.hpp"

using namespace modmat;

namespace {

template <typename Fn>
void expect_errc(Errc code, Fn&& fn) {
  try {
    fn();
    ADD_FAILURE() << "expected " << to_string(code);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), code) << e.what();
  }
}

ExperimentReport strip_time(ExperimentReport r) {
  r.seconds = 0;
  return r;
}

}  // namespace

TEST(Experiment, ModularEliminationSmall) {
  const auto r = run_experiment(ExperimentKind::theorem_main, 4);
  EXPECT_EQ(r.instances, 167U);
  EXPECT_EQ(r.counterexample_count, 0U);
  EXPECT_EQ(r.details["matroids"], 68);
}

TEST(Experiment, NewcrapoReportsTheNonCoatomicFamilies) {
  const auto r = run_experiment(ExperimentKind::newcrapo, 3);
  EXPECT_EQ(r.instances, 61U);
  ASSERT_EQ(r.counterexample_count, 3U);
  for (const auto& c : r.counterexamples) {
    EXPECT_EQ(c["full"], false);
    EXPECT_EQ(c["restricted"], true);
    const auto f = io::flat_family_from_json(c["family"]);
    EXPECT_TRUE(check_flats_restricted(f).accepted);
    EXPECT_FALSE(check_flats_full(f).accepted);
  }
}

TEST(Experiment, OrientedEquivalence) {
  ExperimentOptions opt;
  opt.random_count = 20;
  const auto r = run_experiment(ExperimentKind::oriented_equiv, 6, opt);
  EXPECT_EQ(r.counterexample_count, 0U);
  EXPECT_EQ(r.details["mutants"], r.details["mutants_rejected"]);
}

TEST(Experiment, Cryptomorphism) {
  const auto r = run_experiment(ExperimentKind::cryptomorphism, 5);
  EXPECT_EQ(r.counterexample_count, 0U);
  EXPECT_EQ(r.instances, matroid_corpus(5).size());
}

TEST(Experiment, DeterministicAcrossShardsAndThreads) {
  ExperimentOptions one;
  one.threads = 1;
  ExperimentOptions many;
  many.shards = 7;
  many.threads = 4;
  EXPECT_EQ(strip_time(run_experiment(ExperimentKind::newcrapo, 4, one)),
            strip_time(run_experiment(ExperimentKind::newcrapo, 4, many)));
  EXPECT_EQ(strip_time(run_experiment(ExperimentKind::theorem_main, 4, one)),
            strip_time(run_experiment(ExperimentKind::theorem_main, 4, many)));
  ExperimentOptions seeded;
  seeded.random_count = 10;
  seeded.seed = 42;
  EXPECT_EQ(strip_time(run_experiment(ExperimentKind::oriented_equiv, 6, seeded)),
            strip_time(run_experiment(ExperimentKind::oriented_equiv, 6, seeded)));
}

TEST(Experiment, SingleShardsSumToTheWhole) {
  std::size_t instances = 0;
  std::size_t counterexamples = 0;
  for (std::size_t i = 0; i < 4; ++i) {
    ExperimentOptions opt;
    opt.shards = 4;
    opt.only_shard = i;
    const auto r = run_experiment(ExperimentKind::newcrapo, 4, opt);
    instances += r.instances;
    counterexamples += r.counterexample_count;
  }
  EXPECT_EQ(instances, 2480U);
  EXPECT_EQ(counterexamples, 102U);
}

TEST(Experiment, Parameters) {
  expect_errc(Errc::bad_parameters, [] { run_experiment(ExperimentKind::theorem_main, 6); });
  expect_errc(Errc::bad_parameters, [] { run_experiment(ExperimentKind::theorem_main, 0); });
  expect_errc(Errc::bad_parameters, [] { run_experiment(ExperimentKind::newcrapo, 5); });
  expect_errc(Errc::bad_parameters, [] { run_experiment(ExperimentKind::oriented_equiv, 1); });
  expect_errc(Errc::bad_parameters, [] { run_experiment(ExperimentKind::cryptomorphism, 9); });
  ExperimentOptions bad;
  bad.shards = 2;
  bad.only_shard = 2;
  expect_errc(Errc::bad_parameters, [&] { run_experiment(ExperimentKind::theorem_main, 3, bad); });
  expect_errc(Errc::bad_parameters, [] { parse_experiment_kind("nope"); });
  EXPECT_EQ(parse_experiment_kind("oriented-equiv"), ExperimentKind::oriented_equiv);
}

TEST(Experiment, ReportRoundTrip) {
  const auto r = run_experiment(ExperimentKind::newcrapo, 3);
  EXPECT_EQ(report_from_json(nlohmann::json::parse(to_json(r).dump())), r);
  auto doc = to_json(r);
  doc["counterexample_count"] = 5;
  expect_errc(Errc::malformed_input, [&] { report_from_json(doc); });
  expect_errc(Errc::malformed_input, [] { report_from_json(nlohmann::json::object()); });
}
