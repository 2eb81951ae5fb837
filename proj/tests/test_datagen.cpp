#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numeric>

#include "midi/datagen.hpp"

using namespace midi;

namespace {

double mean(const std::vector<double>& v)
{
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double variance(const std::vector<double>& v)
{
    const double m = mean(v);
    double s = 0.0;
    for (double x : v)
        s += (x - m) * (x - m);
    return s / static_cast<double>(v.size());
}

double sample_corr(const std::vector<double>& x, const std::vector<double>& y)
{
    const double mx = mean(x), my = mean(y);
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
        syy += (y[i] - my) * (y[i] - my);
    }
    return sxy / std::sqrt(sxx * syy);
}

} // namespace

TEST_CASE("functional kinds satisfy their closed form exactly")
{
    for (FunctionKind kind : {FunctionKind::line, FunctionKind::half_parabola,
                              FunctionKind::parabola, FunctionKind::exponential,
                              FunctionKind::sinusoidal, FunctionKind::sin_fourier,
                              FunctionKind::sin_nonfourier, FunctionKind::sin_varying,
                              FunctionKind::quadratic_pow, FunctionKind::cubic_pow,
                              FunctionKind::sin_eighth, FunctionKind::sin_half,
                              FunctionKind::fourth_root, FunctionKind::step}) {
        const auto s = generate(kind, 200, 42);
        REQUIRE(s.xs.size() == 200);
        for (std::size_t i = 0; i < s.n(); ++i) {
            REQUIRE(s.xs[i] >= 0.0);
            REQUIRE(s.xs[i] < 1.0);
            REQUIRE(s.ys[i] == closed_form(kind, s.xs[i]));
        }
    }
}

TEST_CASE("closed-form anchor values")
{
    CHECK(closed_form(FunctionKind::line, 0.25) == 0.25);
    CHECK(closed_form(FunctionKind::cubic_pow, 1.0 / 3.0)
          == Catch::Approx(0.0).margin(1e-12));
    CHECK(closed_form(FunctionKind::step, 0.6) == 1.0);
    CHECK(closed_form(FunctionKind::step, 0.5) == 0.0);
    CHECK(closed_form(FunctionKind::exponential, 1.0) == Catch::Approx(10.0));
    CHECK_THROWS_AS(closed_form(FunctionKind::circle, 0.5), std::invalid_argument);
}

TEST_CASE("circle points satisfy the circle identity and use both signs")
{
    const auto s = generate(FunctionKind::circle, 500, 7);
    bool plus = false, minus = false;
    for (std::size_t i = 0; i < s.n(); ++i) {
        const double u = 2.0 * s.xs[i] - 1.0;
        REQUIRE(u * u + s.ys[i] * s.ys[i] == Catch::Approx(1.0).margin(1e-12));
        (s.ys[i] >= 0.0 ? plus : minus) = true;
    }
    CHECK(plus);
    CHECK(minus);
}

TEST_CASE("generation is deterministic per seed and distinct across seeds")
{
    const auto a = generate(FunctionKind::uniform_2d, 100, 123);
    const auto b = generate(FunctionKind::uniform_2d, 100, 123);
    CHECK(a.xs == b.xs);
    CHECK(a.ys == b.ys);

    const auto c = generate(FunctionKind::uniform_2d, 100, 124);
    for (std::size_t i = 0; i < 10; ++i)
        REQUIRE(a.xs[i] != c.xs[i]);
}

TEST_CASE("bivariate normal endpoints of the rho range")
{
    const auto exact = generate_bivariate_normal(1000, 1.0, 9);
    for (std::size_t i = 0; i < exact.n(); ++i)
        REQUIRE(exact.ys[i] == exact.xs[i]);

    // rho = 0.8, large n: sample correlation within 0.01
    const auto corr = generate_bivariate_normal(100000, 0.8, 10);
    CHECK(sample_corr(corr.xs, corr.ys) == Catch::Approx(0.8).margin(0.01));

    // rho = 0: median |r| over 20 seeds below 0.05 at n = 10^4
    std::vector<double> rs;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto s = generate_bivariate_normal(10000, 0.0, seed);
        rs.push_back(std::abs(sample_corr(s.xs, s.ys)));
    }
    std::sort(rs.begin(), rs.end());
    CHECK(rs[rs.size() / 2] < 0.05);

    CHECK_THROWS_AS(generate_bivariate_normal(100, 1.5, 0), std::invalid_argument);
}

TEST_CASE("add_noise with zero parameter is the identity")
{
    const auto s = generate(FunctionKind::line, 50, 3);
    const auto same = add_noise(s.ys, {NoiseSpec::Kind::uniform_variance, 0.0, 5});
    CHECK(same == s.ys);
}

TEST_CASE("uniform noise has the requested variance and support")
{
    const std::vector<double> zeros(1000000, 0.0);
    const auto noise = add_noise(zeros, {NoiseSpec::Kind::uniform_variance, 1.0, 11});
    const double v = variance(noise);
    CHECK(v > 0.99);
    CHECK(v < 1.01);
    const double hw = std::sqrt(3.0);
    for (std::size_t i = 0; i < noise.size(); i += 997)
        REQUIRE(std::abs(noise[i]) <= hw);
}

TEST_CASE("gaussian noise has the requested standard deviation")
{
    const std::vector<double> zeros(1000000, 0.0);
    const auto noise = add_noise(zeros, {NoiseSpec::Kind::gaussian_sigma, 2.0, 13});
    const double sd = std::sqrt(variance(noise));
    CHECK(sd > 1.99);
    CHECK(sd < 2.01);
}

TEST_CASE("noise streams are coupled across levels with equal seeds")
{
    const std::vector<double> zeros(100, 0.0);
    const auto small = add_noise(zeros, {NoiseSpec::Kind::gaussian_sigma, 1.0, 17});
    const auto large = add_noise(zeros, {NoiseSpec::Kind::gaussian_sigma, 3.0, 17});
    for (std::size_t i = 0; i < zeros.size(); ++i)
        REQUIRE(large[i] == Catch::Approx(3.0 * small[i]).margin(1e-12));
}

TEST_CASE("noise stream is independent of the x-draw stream")
{
    const auto s = generate(FunctionKind::uniform_2d, 100, 19);
    const auto noise = add_noise(std::vector<double>(100, 0.0),
                                 {NoiseSpec::Kind::uniform_variance, 1.0 / 3.0, 19});
    // same seed, different stream: the sequences must differ
    bool differs = false;
    for (std::size_t i = 0; i < 10; ++i)
        differs |= (noise[i] != s.xs[i]);
    CHECK(differs);
}

TEST_CASE("power noise scales cover exactly the benchmark functions")
{
    CHECK(power_noise_scale(FunctionKind::line) == 1.0);
    CHECK(power_noise_scale(FunctionKind::cubic_pow) == 10.0);
    CHECK(power_noise_scale(FunctionKind::circle) == 0.25);
    CHECK(power_noise_scale(FunctionKind::step) == 5.0);
    CHECK(power_noise_scale(FunctionKind::sin_eighth) == 2.0);
    CHECK_FALSE(power_noise_scale(FunctionKind::parabola).has_value());
    CHECK_FALSE(power_noise_scale(FunctionKind::uniform_2d).has_value());
}

TEST_CASE("function names round-trip")
{
    for (FunctionKind k : {FunctionKind::line, FunctionKind::circle, FunctionKind::step,
                           FunctionKind::sin_half, FunctionKind::normal_uncorrelated}) {
        const auto back = function_from_string(to_string(k));
        REQUIRE(back.has_value());
        CHECK(*back == k);
    }
    CHECK_FALSE(function_from_string("no-such-kind").has_value());
}
