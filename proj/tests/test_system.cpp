#include <cmath>

#include "ddnoma/system.hpp"
#include "doctest.h"

using namespace ddnoma;

namespace {

ScenarioConfig small_scenario() {
  ScenarioConfig cfg;
  cfg.grid.delay_bins = 32;
  cfg.grid.doppler_bins = 8;
  cfg.grid.subcarrier_spacing_hz = 15e3;
  cfg.drops = 6;
  cfg.seed = 3;
  cfg.threads = 1;
  return cfg;
}

}  // namespace

TEST_CASE("summarize: mean and interpolated 5th percentile") {
  CHECK_THROWS_AS(summarize({}), ConfigError);

  const SeSummary constant = summarize({2.5, 2.5, 2.5});
  CHECK(constant.mean == doctest::Approx(2.5));
  CHECK(constant.outage5 == doctest::Approx(2.5));

  // order statistics of 1..100: h = 0.05 * 99 = 4.95 -> 5.95
  std::vector<double> v(100);
  for (int i = 0; i < 100; ++i) v[i] = i + 1.0;
  const SeSummary s = summarize(v);
  CHECK(s.mean == doctest::Approx(50.5));
  CHECK(s.outage5 == doctest::Approx(5.95));

  // permutation invariance
  std::vector<double> shuffled = {7, 1, 9, 3, 5, 2, 8, 4, 6, 10};
  std::vector<double> ordered = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  CHECK(summarize(shuffled).outage5 == doctest::Approx(summarize(ordered).outage5));
  CHECK(summarize(shuffled).mean == doctest::Approx(summarize(ordered).mean));
}

TEST_CASE("system MC determinism across runs and thread counts") {
  ScenarioConfig cfg = small_scenario();
  const auto a = run_system_mc(cfg);
  const auto b = run_system_mc(cfg);
  REQUIRE(a.size() == b.size());
  for (size_t i = 0; i < a.size(); ++i) CHECK(a[i].sum_rate == b[i].sum_rate);

  cfg.threads = 2;
  const auto c = run_system_mc(cfg);
  REQUIRE(a.size() == c.size());
  for (size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].sum_rate == c[i].sum_rate);
    CHECK(a[i].drop == c[i].drop);
    CHECK(a[i].scheme == c[i].scheme);
  }
}

TEST_CASE("degenerate fixed split reduces to the single-user rate") {
  ScenarioConfig cfg = small_scenario();
  cfg.schemes = {PaScheme::kOma, PaScheme::kFixed};
  cfg.fixed_fractions = {1.0, 0.0};
  cfg.waveforms = {Waveform::kOtfs};
  cfg.drops = 3;
  const auto samples = run_system_mc(cfg);
  for (size_t i = 0; i + 1 < samples.size(); i += 2) {
    const SeSample& oma = samples[i];
    const SeSample& fixed = samples[i + 1];
    REQUIRE(oma.scheme == PaScheme::kOma);
    REQUIRE(fixed.scheme == PaScheme::kFixed);
    // NOMA with beta = (1, 0): user 1 gets its full single-user rate, which
    // is exactly twice its OMA (half-resource) share
    CHECK(fixed.rate1 == doctest::Approx(2.0 * oma.rate1));
    CHECK(fixed.rate2 == 0.0);
  }
}

TEST_CASE("uplink direction produces positive rates for both users") {
  ScenarioConfig cfg = small_scenario();
  cfg.direction = Direction::kUplink;
  cfg.snr1_db = 10.0;
  cfg.snr2_db = 30.0;
  cfg.schemes = {PaScheme::kOma, PaScheme::kFtpaAvgSnr};
  cfg.drops = 2;
  const auto samples = run_system_mc(cfg);
  for (const auto& s : samples) {
    CHECK(s.rate1 > 0.0);
    CHECK(s.rate2 > 0.0);
  }
}

TEST_CASE("sample filtering helper") {
  ScenarioConfig cfg = small_scenario();
  cfg.drops = 4;
  const auto samples = run_system_mc(cfg);
  const auto rates = sum_rates_of(samples, Waveform::kOtfs, PaScheme::kOma);
  CHECK(rates.size() == 4);
  const auto summary = summarize(rates);
  CHECK(summary.count == 4);
  CHECK(summary.mean > 0.0);
}

TEST_CASE("validation rejects malformed scenarios") {
  ScenarioConfig cfg = small_scenario();
  cfg.drops = 0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);

  ScenarioConfig bad_fixed = small_scenario();
  bad_fixed.fixed_fractions = {0.4, 0.6};
  CHECK_THROWS_AS(bad_fixed.validate(), ConfigError);
}
