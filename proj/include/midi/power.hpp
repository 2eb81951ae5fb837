#pragma once

#include <algorithm>
#include <cstdint>
#include <ostream>
#include <span>
#include <vector>

#include "midi/baselines.hpp"
#include "midi/csv.hpp"
#include "midi/datagen.hpp"
#include "midi/estimator.hpp"
#include "midi/parallel.hpp"

// Statistical-power harness. For a (measure, function) pair: calibrate a
// cutoff as the 0.95 quantile of the measure over independent-uniform
// null datasets, then at each of 30 noise levels report the fraction of
// noisy replicates whose index lands strictly above the cutoff.
//
// Seed plan (all via derive_seed):
//   null replicate r:    derive(derive(base, kNullStream), r)
//   level k replicate r: derive(derive(base, kLevelStream + k), r)
// Each replicate seed feeds generate() and add_noise(), whose internal
// streams are already separated. Replicates are independent, so they may
// fan out across workers; results are stored by index and aggregated in
// replicate order, making output independent of the worker count.

namespace midi {

enum class Measure { midi, dcor, pearson, spearman };

inline const char* to_string(Measure m)
{
    switch (m) {
    case Measure::midi: return "midi";
    case Measure::dcor: return "dcor";
    case Measure::pearson: return "pearson";
    case Measure::spearman: return "spearman";
    }
    return "?";
}

inline std::optional<Measure> measure_from_string(std::string_view name)
{
    for (Measure m : {Measure::midi, Measure::dcor, Measure::pearson, Measure::spearman})
        if (name == to_string(m))
            return m;
    return std::nullopt;
}

/// Evaluates one dependence index on a dataset. pearson/spearman are
/// reported as |r| (two-sided); midi and dcor are already nonnegative.
inline double evaluate_measure(Measure m, std::span<const double> xs,
                               std::span<const double> ys,
                               const EstimatorConfig& cfg = {})
{
    switch (m) {
    case Measure::midi: return estimate(xs, ys, cfg).midi;
    case Measure::dcor: return distance_correlation(xs, ys).dcor;
    case Measure::pearson: return std::abs(pearson(xs, ys));
    case Measure::spearman: return std::abs(spearman(xs, ys));
    }
    throw std::invalid_argument("evaluate_measure: unknown measure");
}

/// 1-based rank of the 0.95 quantile order statistic: ceil(0.95 * reps),
/// in exact integer arithmetic.
inline std::size_t cutoff_rank_95(std::size_t reps)
{
    return (19 * reps + 19) / 20;
}

namespace detail {
inline constexpr std::uint64_t kNullStream = 0x6e756c6c;  // "null"
inline constexpr std::uint64_t kLevelStream = 0x6c766c00; // "lvl" + k
} // namespace detail

/// Cutoff for rejecting the no-association null: the 0.95-quantile order
/// statistic of the measure over `reps` independent-uniform datasets.
inline double null_cutoff(Measure measure, std::size_t reps, std::size_t n_points,
                          std::uint64_t seed, const EstimatorConfig& cfg = {},
                          unsigned jobs = 0)
{
    if (reps < 20)
        throw std::invalid_argument("null_cutoff: need reps >= 20");
    std::vector<double> values(reps);
    const std::uint64_t null_seed = derive_seed(seed, detail::kNullStream);
    parallel_for(reps, jobs, [&](std::size_t r) {
        const SampleSet ds =
            generate(FunctionKind::uniform_2d, n_points, derive_seed(null_seed, r));
        values[r] = evaluate_measure(measure, ds.xs, ds.ys, cfg);
    });
    std::sort(values.begin(), values.end());
    return values[cutoff_rank_95(reps) - 1];
}

/// Fraction of noisy replicates strictly above the cutoff (ties do not
/// reject). Noise is N(0, sigma^2) added to y; x and y are re-drawn fresh
/// for every replicate.
inline double power_at_level(Measure measure, FunctionKind function, double sigma,
                             std::size_t reps, std::size_t n_points, double cutoff,
                             std::uint64_t seed, const EstimatorConfig& cfg = {},
                             unsigned jobs = 0)
{
    std::vector<std::uint8_t> above(reps, 0);
    parallel_for(reps, jobs, [&](std::size_t r) {
        const std::uint64_t rep_seed = derive_seed(seed, r);
        SampleSet ds = generate(function, n_points, rep_seed);
        ds.ys = add_noise(ds.ys,
                          {NoiseSpec::Kind::gaussian_sigma, sigma, rep_seed});
        above[r] = evaluate_measure(measure, ds.xs, ds.ys, cfg) > cutoff ? 1 : 0;
    });
    std::size_t hits = 0;
    for (std::uint8_t a : above)
        hits += a;
    return static_cast<double>(hits) / static_cast<double>(reps);
}

struct PowerCurve {
    struct Level {
        double sigma = 0.0;
        double power = 0.0;
    };
    Measure measure = Measure::midi;
    FunctionKind function = FunctionKind::line;
    double noise_scale = 1.0;
    std::vector<Level> levels;
    double cutoff = 0.0;
    std::size_t reps = 0;
    std::size_t n_points = 0;
    std::uint64_t base_seed = 0;
};

/// Full 30-level curve at sigma = noise_scale * k/10, k = 1..30.
inline PowerCurve power_curve(Measure measure, FunctionKind function,
                              std::size_t reps = 500, std::size_t n_points = 1000,
                              std::uint64_t seed = 0, const EstimatorConfig& cfg = {},
                              unsigned jobs = 0)
{
    const auto scale = power_noise_scale(function);
    if (!scale)
        throw std::invalid_argument(std::string("power_curve: no noise scale for function '")
                                    + to_string(function) + "'");
    PowerCurve curve;
    curve.measure = measure;
    curve.function = function;
    curve.noise_scale = *scale;
    curve.reps = reps;
    curve.n_points = n_points;
    curve.base_seed = seed;
    curve.cutoff = null_cutoff(measure, reps, n_points, seed, cfg, jobs);
    curve.levels.reserve(30);
    for (std::size_t k = 1; k <= 30; ++k) {
        const double sigma = *scale * static_cast<double>(k) / 10.0;
        const std::uint64_t level_seed = derive_seed(seed, detail::kLevelStream + k);
        curve.levels.push_back(
            {sigma, power_at_level(measure, function, sigma, reps, n_points,
                                   curve.cutoff, level_seed, cfg, jobs)});
    }
    return curve;
}

/// CSV emission: header + one row per noise level.
inline void write_csv(const PowerCurve& curve, std::ostream& os)
{
    os << "measure,function,sigma,power\n";
    for (const auto& level : curve.levels)
        os << to_string(curve.measure) << ',' << to_string(curve.function) << ','
           << format_double(level.sigma) << ',' << format_double(level.power) << '\n';
}

} // namespace midi
