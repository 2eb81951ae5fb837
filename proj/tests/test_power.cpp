#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <sstream>

#include "midi/power.hpp"

using namespace midi;

TEST_CASE("0.95 order-statistic rank in exact integer arithmetic")
{
    CHECK(cutoff_rank_95(500) == 475);
    CHECK(cutoff_rank_95(20) == 19);
    CHECK(cutoff_rank_95(100) == 95);
    CHECK(cutoff_rank_95(21) == 20); // ceil(19.95)
}

TEST_CASE("null cutoff sits near the top of the null distribution")
{
    const double cut = null_cutoff(Measure::midi, 40, 200, 1);
    CHECK(cut > 0.0);
    CHECK(cut < 0.5);
    CHECK_THROWS_AS(null_cutoff(Measure::midi, 10, 200, 1), std::invalid_argument);
}

TEST_CASE("noiseless line has full power for every measure")
{
    for (Measure m : {Measure::midi, Measure::dcor, Measure::pearson, Measure::spearman}) {
        const double cut = null_cutoff(m, 40, 200, 2);
        const double p = power_at_level(m, FunctionKind::line, 0.0, 30, 200, cut, 3);
        CHECK(p == 1.0);
    }
}

TEST_CASE("power under the null is calibrated near 0.05")
{
    // running power_at_level on a null generator: noisy independent
    // uniforms are still independent, so rejection stays near 0.05
    const std::size_t reps = 200;
    const double cut = null_cutoff(Measure::midi, 500, 200, 4);
    const double p =
        power_at_level(Measure::midi, FunctionKind::uniform_2d, 0.3, reps, 200, cut, 987);
    const double band = 3.0 * std::sqrt(0.05 * 0.95 / static_cast<double>(reps));
    CHECK(p >= 0.05 - band);
    CHECK(p <= 0.05 + band);
}

TEST_CASE("power curve structure and determinism")
{
    const auto curve = power_curve(Measure::midi, FunctionKind::line, 30, 120, 5);
    REQUIRE(curve.levels.size() == 30);
    CHECK(curve.noise_scale == 1.0);
    for (std::size_t k = 0; k < 30; ++k) {
        CHECK(curve.levels[k].sigma
              == Catch::Approx(static_cast<double>(k + 1) / 10.0).margin(1e-12));
        CHECK(curve.levels[k].power >= 0.0);
        CHECK(curve.levels[k].power <= 1.0);
    }

    const auto again = power_curve(Measure::midi, FunctionKind::line, 30, 120, 5);
    CHECK(again.cutoff == curve.cutoff);
    for (std::size_t k = 0; k < 30; ++k)
        CHECK(again.levels[k].power == curve.levels[k].power);
}

TEST_CASE("curves are independent of the worker count")
{
    const auto serial = power_curve(Measure::spearman, FunctionKind::step, 25, 100, 6, {}, 1);
    const auto parallel = power_curve(Measure::spearman, FunctionKind::step, 25, 100, 6, {}, 4);
    CHECK(serial.cutoff == parallel.cutoff);
    for (std::size_t k = 0; k < serial.levels.size(); ++k)
        CHECK(serial.levels[k].power == parallel.levels[k].power);
}

TEST_CASE("power trends downward with noise")
{
    const auto curve = power_curve(Measure::midi, FunctionKind::line, 100, 300, 7);
    std::vector<double> sigma, power;
    for (const auto& level : curve.levels) {
        sigma.push_back(level.sigma);
        power.push_back(level.power);
    }
    CHECK(spearman(sigma, power) <= 0.0);
    // low-noise end detects, high-noise end does not
    CHECK(curve.levels.front().power >= 0.95);
    CHECK(curve.levels.back().power < curve.levels.front().power);
}

TEST_CASE("power_curve rejects functions without a noise scale")
{
    CHECK_THROWS_AS(power_curve(Measure::midi, FunctionKind::parabola, 30, 100, 8),
                    std::invalid_argument);
}

TEST_CASE("power csv has one row per level")
{
    const auto curve = power_curve(Measure::pearson, FunctionKind::line, 20, 80, 9);
    std::ostringstream os;
    write_csv(curve, os);
    const std::string text = os.str();
    std::size_t rows = 0;
    for (char ch : text)
        rows += ch == '\n' ? 1 : 0;
    CHECK(rows == 31); // header + 30 levels
    CHECK(text.rfind("measure,function,sigma,power\n", 0) == 0);
}
