// test_campaign.cpp — deterministic fuzzing loop, outcome accounting, and
// bit-exact replay.

#include "doctest.h"

#include "uniarg/campaign.hpp"
#include "uniarg/io.hpp"

#include <cmath>

using namespace uniarg;

namespace {

TrialCampaign small_campaign(SampleKind kind, std::vector<Check> checks, int trials,
                             std::uint64_t seed, int threads = 0) {
    TrialCampaign c;
    c.spec.n = 3;
    c.spec.kind = kind;
    c.trials = trials;
    c.checks = std::move(checks);
    c.profile = ToleranceProfile::for_dim(3);
    c.seed = seed;
    c.threads = threads;
    return c;
}

}  // namespace

TEST_CASE("haar campaigns pass the unconditional bound") {
    const auto c = small_campaign(SampleKind::haar, {Check::T2}, 100, 1001u);
    const auto summary = run_campaign(c);

    REQUIRE(summary.stats.size() == 1);
    const auto& s = summary.stats[0];
    CHECK(s.fail == 0);
    CHECK(s.total() == 100);
    CHECK(s.skipped == 0);  // the absolute bound applies to every pair
    CHECK(summary.equality_consistency >= 0.99);
    CHECK(summary.total_reports > 0);
}

TEST_CASE("campaign configs validate") {
    auto c = small_campaign(SampleKind::haar, {Check::T1}, 10, 1u);
    CHECK_NOTHROW(c.validate());

    c.trials = 0;
    CHECK_THROWS_AS(c.validate(), ConfigInvalidError);
    c.trials = 10;
    c.checks.clear();
    CHECK_THROWS_AS(c.validate(), ConfigInvalidError);
    c.checks = {Check::T1};
    c.threads = -1;
    CHECK_THROWS_AS(c.validate(), ConfigInvalidError);
    c.threads = 0;
    c.spec.n = 0;
    CHECK_THROWS_AS(c.validate(), ConfigInvalidError);
}

TEST_CASE("check names roundtrip and reject garbage") {
    CHECK(check_from_string("T1") == Check::T1);
    CHECK(check_from_string("reduction") == Check::reduction);
    CHECK(to_string(Check::L2) == "L2");
    CHECK_THROWS_AS(check_from_string("T3"), ConfigInvalidError);
}

TEST_CASE("summaries are identical across reruns and thread counts") {
    const auto c0 = small_campaign(SampleKind::haar, {Check::T1, Check::T2}, 120, 2002u, 0);
    const auto c1 = small_campaign(SampleKind::haar, {Check::T1, Check::T2}, 120, 2002u, 1);
    const auto c4 = small_campaign(SampleKind::haar, {Check::T1, Check::T2}, 120, 2002u, 4);

    const auto s0 = to_json(run_campaign(c0)).dump(2);
    const auto s0b = to_json(run_campaign(c0)).dump(2);
    const auto s1 = to_json(run_campaign(c1)).dump(2);
    const auto s4 = to_json(run_campaign(c4)).dump(2);

    CHECK(s0 == s0b);
    CHECK(s0 == s1);
    CHECK(s0 == s4);
}

TEST_CASE("outcome counts partition the trials for every check") {
    const auto c = small_campaign(
        SampleKind::case_targeted,
        {Check::T1, Check::T2, Check::L1, Check::L2, Check::reduction}, 60, 3003u);
    const auto summary = run_campaign(c);

    REQUIRE(summary.stats.size() == 5);
    for (const auto& s : summary.stats) {
        CHECK(s.total() == 60);
        CHECK(s.fail == 0);
    }
    // Wide-spread inputs exercise the reduction on every trial.
    CHECK(summary.stats[4].pass == 60);
    // The phase split needs narrow factors, so wide pairs are skipped.
    CHECK(summary.stats[2].skipped == 60);
    CHECK(summary.stats[3].skipped == 60);
}

TEST_CASE("narrow sampling exercises the phase and minmax checks") {
    auto c = small_campaign(SampleKind::equality_planted,
                            {Check::T1, Check::L1, Check::L2}, 40, 4004u);
    const auto summary = run_campaign(c);
    REQUIRE(summary.stats.size() == 3);
    CHECK(summary.stats[0].fail == 0);
    CHECK(summary.stats[1].fail == 0);
    CHECK(summary.stats[1].pass > 0);
    CHECK(summary.stats[2].fail == 0);
    CHECK(summary.stats[2].pass > 0);
    CHECK(summary.equality_consistency >= 0.99);
}

TEST_CASE("haar reduction checks mostly skip") {
    const auto c = small_campaign(SampleKind::haar, {Check::reduction}, 80, 5005u);
    const auto summary = run_campaign(c);
    const auto& s = summary.stats[0];
    CHECK(s.fail == 0);
    CHECK(s.pass + s.skipped == 80);
    CHECK(s.skipped > 0);  // narrow-narrow and violated pairs are not reducible
}

TEST_CASE("replay reproduces the campaign's worst trial bit for bit") {
    const auto c = small_campaign(SampleKind::haar, {Check::T2}, 150, 6006u);
    const auto summary = run_campaign(c);
    const auto& s = summary.stats[0];

    const auto record = replay(c, s.worst_trial, Check::T2);
    CHECK(record.trial == s.worst_trial);
    CHECK(record.slack == s.worst_slack);  // same code path, same bits
    REQUIRE(record.reports.size() == 1);
    CHECK(record.reports[0].theorem == Theorem::T2);
}

TEST_CASE("replay validates its trial index and check availability") {
    const auto c = small_campaign(SampleKind::haar, {Check::T2}, 10, 7007u);
    CHECK_THROWS_AS(replay(c, 10u, Check::T2), ConfigInvalidError);
    CHECK_NOTHROW(replay(c, 9u, Check::T2));
}

TEST_CASE("planted equality campaigns stay consistent") {
    const auto c = small_campaign(SampleKind::equality_planted, {Check::T1}, 200, 8008u);
    const auto summary = run_campaign(c);
    CHECK(summary.stats[0].fail == 0);
    CHECK(summary.equality_consistency >= 0.99);
    // Equality trials close the bound, so the worst slack sits near zero.
    CHECK(std::abs(summary.stats[0].worst_slack) <= 1e-6);
}

TEST_CASE("campaign json carries configuration echo and stats") {
    const auto c = small_campaign(SampleKind::gap_planted, {Check::T1}, 30, 9009u);
    const auto summary = run_campaign(c);
    const auto j = to_json(summary);

    REQUIRE(j.contains("campaign"));
    CHECK(j["campaign"]["trials"] == 30);
    CHECK(j["campaign"]["seed"] == 9009u);
    CHECK(j["campaign"]["spec"]["kind"] == "gap_planted");
    CHECK(j["campaign"]["spec"]["planted_gap"] == doctest::Approx(0.3));
    CHECK_FALSE(j["campaign"].contains("threads"));
    CHECK_FALSE(j.contains("wall_time_seconds"));
    REQUIRE(j["stats"].is_array());
    REQUIRE(j["stats"].size() == 1);
    CHECK(j["stats"][0]["check"] == "T1");
    CHECK(j["stats"][0]["pass"].get<long>() + j["stats"][0]["skipped"].get<long>() == 30);
}
