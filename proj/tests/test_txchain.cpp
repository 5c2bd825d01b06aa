#include "catch_amalgamated.hpp"

#include <algorithm>
#include <random>

#include "oracles.hpp"
#include "test_helpers.hpp"
#include "txpower/txchain.hpp"

using namespace txpower;
using namespace txpower::literals;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;
using test::make_fit;

namespace {

ChainModels constant_models() {
    return ChainModels{PaModel(make_fit(50.0, 0.0)), OscModel(make_fit(0.5, 0.0)), MixerModel(make_fit(0.1, 0.0))};
}

ChainModels degrading_models(double hi = 310.0) {
    return ChainModels{PaModel(make_fit(40.0, -0.007, 1.0, hi)), OscModel(make_fit(0.3, -0.0045, 1.0, hi)),
                       MixerModel(make_fit(4.0, -0.003, 1.0, hi))};
}

ChainConfig cfg(double f, double mixer_out, std::optional<double> pa_out = 0.0) {
    return ChainConfig{.frequency = FrequencyGhz(f),
                       .p_if_in = -5_dBm,
                       .p_mixer_out = PowerDbm(mixer_out),
                       .p_pa_out = pa_out ? std::optional(PowerDbm(*pa_out)) : std::nullopt,
                       .p_osc_rf = 0_dBm};
}

}  // namespace

TEST_CASE("hand-evaluated breakdown with constant fits", "[txchain]") {
    const auto b = chain_breakdown(constant_models(), cfg(60, -10, 0.0));
    // mixer: (0.1 / 10^-0.5) / 0.1 ; osc: 1 / 0.5 ; PA: (1 - 0.1) / 0.5
    CHECK_THAT(b.mixer_mw.value(), WithinRel(3.16227766016837933199889354443, 1e-14));
    CHECK_THAT(b.osc_mw.value(), WithinRel(2.0, 1e-15));
    CHECK_THAT(b.pa_mw.value(), WithinRel(1.8, 1e-14));
    CHECK_THAT(b.total_mw.value(), WithinRel(6.96227766016837933199889354443, 1e-14));
    CHECK(b.total_mw.value() == b.pa_mw.value() + b.osc_mw.value() + b.mixer_mw.value());
    CHECK_FALSE(b.extrapolated.any());
    CHECK(dominant_block(b) == BlockKind::Mixer);
}

TEST_CASE("PA absent means zero PA power", "[txchain]") {
    const auto b = chain_breakdown(constant_models(), cfg(60, -10, std::nullopt));
    CHECK(b.pa_mw.value() == 0.0);
    CHECK(b.fractions.pa == 0.0);
    CHECK_THAT(b.fractions.osc + b.fractions.mixer, WithinAbs(1.0, 1e-12));
    CHECK(dominant_block(b) != BlockKind::PA);

    ChainModels no_pa{std::nullopt, OscModel(make_fit(0.5, 0.0)), MixerModel(make_fit(0.1, 0.0))};
    CHECK_NOTHROW(chain_breakdown(no_pa, cfg(60, -10, std::nullopt)));
    CHECK_THROWS_AS(chain_breakdown(no_pa, cfg(60, -10, 0.0)), ValidationError);
}

TEST_CASE("config invariants and level_config", "[txchain]") {
    CHECK_THROWS_AS(chain_breakdown(constant_models(), cfg(60, 0, 0.0)), ValidationError);
    CHECK_THROWS_AS(chain_breakdown(constant_models(), cfg(60, 3, 0.0)), ValidationError);

    const ChainConfig base = cfg(60, -15, 0.0);
    CHECK(level_config(base, -10_dBm).has_pa());
    CHECK_FALSE(level_config(base, 0_dBm).has_pa());  // 0 dB gain
    CHECK_THROWS_AS(level_config(base, 2_dBm), ValidationError);
}

TEST_CASE("extrapolated mixer flagged at 243 GHz", "[txchain]") {
    const ChainModels models{PaModel(make_fit(40.0, -0.007, 0.9, 309.3)), OscModel(make_fit(0.3, -0.0045, 12.7, 310)),
                             MixerModel(make_fit(4.0, -0.003, 0.9, 140))};
    const auto b = chain_breakdown(models, cfg(243, -10, 0.0));
    CHECK(b.extrapolated.mixer);
    CHECK_FALSE(b.extrapolated.pa);
    CHECK_FALSE(b.extrapolated.osc);
}

TEST_CASE("breakdown consistency on random configs", "[txchain][property]") {
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> f(1.0, 300.0);
    std::uniform_real_distribution<double> dbm(-20.0, 5.0);
    std::bernoulli_distribution has_pa(0.7);
    const auto models = degrading_models();
    for (int i = 0; i < 1000; ++i) {
        const double mixer_out = dbm(rng);
        std::optional<double> pa_out;
        if (has_pa(rng)) pa_out = mixer_out + 0.1 + 10.0 * std::uniform_real_distribution<double>(0, 1)(rng);
        ChainConfig c = cfg(f(rng), mixer_out, pa_out);
        c.p_if_in = PowerDbm(dbm(rng));
        c.p_osc_rf = PowerDbm(dbm(rng));
        const auto b = chain_breakdown(models, c);
        CHECK(b.total_mw.value() == b.pa_mw.value() + b.osc_mw.value() + b.mixer_mw.value());
        CHECK(std::fabs(b.fractions.pa + b.fractions.osc + b.fractions.mixer - 1.0) < 1e-9);
        CHECK(b.share(dominant_block(b)) >= 1.0 / 3.0);

        // Removing the PA never increases total power.
        ChainConfig without = c;
        without.p_pa_out.reset();
        CHECK(chain_breakdown(models, without).total_mw <= b.total_mw);
    }
}

TEST_CASE("parallel sweep equals the serial reference", "[txchain][sweep]") {
    const auto models = degrading_models();
    std::vector<FrequencyGhz> grid = uniform_grid(1_GHz, 300_GHz, 257);
    const auto par = sweep(models, cfg(0.5, -10, 0.0), grid);
    const auto ser = sweep_serial(models, cfg(0.5, -10, 0.0), grid);
    REQUIRE(par.size() == ser.size());
    for (std::size_t i = 0; i < par.size(); ++i) {
        CHECK(par[i].total_mw.value() == ser[i].total_mw.value());
        CHECK(par[i].fractions.pa == ser[i].fractions.pa);
        CHECK(par[i].extrapolated == ser[i].extrapolated);
        CHECK(par.frequency(i) == grid[i]);
    }
}

TEST_CASE("sweep semantics", "[txchain][sweep]") {
    const auto models = degrading_models();
    const auto base = cfg(10, -10, 0.0);

    const std::vector<FrequencyGhz> one{60_GHz};
    const auto single = sweep(models, base, one);
    const auto direct = chain_breakdown(models, base.at(60_GHz));
    REQUIRE(single.size() == 1);
    CHECK(single[0].total_mw == direct.total_mw);

    std::vector<FrequencyGhz> key;
    for (double f : kKeyFrequenciesGhz) key.emplace_back(f);
    const auto s = sweep(models, base, key);
    CHECK(s.size() == 4);
    for (std::size_t i = 1; i < s.size(); ++i) CHECK(s[i].total_mw > s[i - 1].total_mw);

    // permuted-then-sorted grid gives the same sweep
    std::vector<FrequencyGhz> shuffled = uniform_grid(5_GHz, 250_GHz, 40);
    std::mt19937 rng(5);
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    std::sort(shuffled.begin(), shuffled.end());
    const auto sorted = uniform_grid(5_GHz, 250_GHz, 40);
    const auto a = sweep(models, base, shuffled);
    const auto b = sweep(models, base, sorted);
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].total_mw == b[i].total_mw);

    const std::vector<FrequencyGhz> empty;
    CHECK_THROWS_AS(sweep(models, base, empty), ValidationError);
    const std::vector<FrequencyGhz> unsorted{60_GHz, 30_GHz};
    CHECK_THROWS_AS(sweep(models, base, unsorted), ValidationError);
    const std::vector<FrequencyGhz> dup{30_GHz, 30_GHz};
    CHECK_THROWS_AS(sweep_serial(models, base, dup), ValidationError);
}

TEST_CASE("sweep errors name the frequency", "[txchain][sweep]") {
    // Oscillator efficiency exceeds 1 below ~8 GHz.
    const ChainModels models{std::nullopt, OscModel(make_fit(1.2, -0.02, 10.0, 100.0)),
                             MixerModel(make_fit(1.0, 0.0))};
    const std::vector<FrequencyGhz> grid{5_GHz, 50_GHz};
    CHECK_THROWS_WITH(sweep(models, cfg(50, -10, std::nullopt), grid), Catch::Matchers::ContainsSubstring("at 5 GHz"));
    CHECK_THROWS_AS(sweep_serial(models, cfg(50, -10, std::nullopt), grid), DomainError);
}

TEST_CASE("uniform grid", "[txchain]") {
    const auto g = uniform_grid(10_GHz, 100_GHz, 2);
    REQUIRE(g.size() == 2);
    CHECK(g[0].value() == 10.0);
    CHECK(g[1].value() == 100.0);
    const auto g3 = uniform_grid(12.7_GHz, 140_GHz, 512);
    CHECK(g3.front().value() == 12.7);
    CHECK(g3.back().value() == 140.0);
    CHECK_THROWS_AS(uniform_grid(10_GHz, 100_GHz, 1), ValidationError);
    CHECK_THROWS_AS(uniform_grid(100_GHz, 10_GHz, 5), ValidationError);
}

TEST_CASE("recommendation on monotone models picks the lowest admissible point", "[txchain][recommend]") {
    const ChainModels models{PaModel(make_fit(40.0, -0.007, 0.9, 309.3)), OscModel(make_fit(0.3, -0.0045, 12.7, 310)),
                             MixerModel(make_fit(4.0, -0.003, 0.9, 140))};
    const auto rec = recommend_frequency(models, cfg(50, -10, 0.0), {12.7_GHz, 140_GHz});
    CHECK(rec.frequency.value() == 12.7);
    CHECK(rec.at_boundary);
    CHECK(rec.n_admissible == 512);

    // 10 GHz is outside the oscillator data: the first admissible grid point wins.
    const auto rec10 = recommend_frequency(models, cfg(50, -10, 0.0), {10_GHz, 140_GHz, 131});
    CHECK(rec10.frequency.value() == 13.0);
    CHECK(rec10.at_boundary);
    CHECK_FALSE(rec10.breakdown.extrapolated.any());

    CHECK_THROWS_AS(recommend_frequency(models, cfg(50, -10, 0.0), {200_GHz, 300_GHz}), NoAdmissiblePoint);
    const auto ex = recommend_frequency(models, cfg(50, -10, 0.0), {200_GHz, 300_GHz, 512, true});
    CHECK(ex.frequency.value() == 200.0);
    CHECK(ex.breakdown.extrapolated.mixer);
}

TEST_CASE("recommendation finds an interior minimum", "[txchain][recommend]") {
    // oscillator improves with f, PA degrades: interior optimum
    const oracle::ChainFits fits{40.0L, -0.01L, 0.05L, 0.008L, 2.0L, -0.002L};
    const ChainModels models{PaModel(make_fit(40.0, -0.01, 1.0, 400.0)), OscModel(make_fit(0.05, 0.008, 1.0, 400.0)),
                             MixerModel(make_fit(2.0, -0.002, 1.0, 400.0))};
    const std::size_t n = 64;
    const auto rec = recommend_frequency(models, cfg(50, -10, 0.0), {10_GHz, 300_GHz, n});
    CHECK_FALSE(rec.at_boundary);
    const double fine = oracle::fine_grid_argmin(fits, 10.0, 300.0, 10 * (n - 1) + 1, -5, -10, 0, 0);
    const double step = (300.0 - 10.0) / (n - 1);
    CHECK(std::fabs(rec.frequency.value() - fine) <= step);

    // grid evaluation kernels agree
    const auto grid = uniform_grid(10_GHz, 300_GHz, n);
    const auto par = evaluate_grid(models, cfg(50, -10, 0.0), grid);
    const auto ser = evaluate_grid_serial(models, cfg(50, -10, 0.0), grid);
    for (std::size_t i = 0; i < n; ++i) {
        REQUIRE(par[i].has_value() == ser[i].has_value());
        if (par[i]) CHECK(par[i]->total_mw == ser[i]->total_mw);
    }
}

TEST_CASE("recommendation skips physically invalid points", "[txchain][recommend]") {
    // efficiency above 1 below ~9 GHz when extrapolating downward
    const ChainModels models{std::nullopt, OscModel(make_fit(1.2, -0.02, 10.0, 100.0)),
                             MixerModel(make_fit(1.0, 0.0, 1.0, 100.0))};
    const auto rec = recommend_frequency(models, cfg(50, -10, std::nullopt), {1_GHz, 100_GHz, 100, true});
    CHECK(rec.n_rejected > 0);
    CHECK(rec.frequency.value() > 9.0);
}

TEST_CASE("dominance report", "[txchain]") {
    // tie between PA and oscillator goes to PA
    PowerBreakdown b = chain_breakdown(constant_models(), cfg(60, -10, 0.0));
    b.fractions = {0.4, 0.4, 0.2};
    CHECK(dominant_block(b) == BlockKind::PA);
    b.fractions = {0.2, 0.4, 0.4};
    CHECK(dominant_block(b) == BlockKind::Oscillator);
    b.fractions = {0.1, 0.2, 0.7};
    CHECK(dominant_block(b) == BlockKind::Mixer);

    const auto models = degrading_models();
    const std::vector<FrequencyGhz> grid{30_GHz, 243_GHz};
    const auto report = dominance_report(sweep(models, cfg(30, -15, 0.0), grid));
    REQUIRE(report.size() == 2);
    CHECK(report[0].first.value() == 30.0);
    CHECK_THROWS_AS(dominance_report(SweepResult{}), ValidationError);
}
