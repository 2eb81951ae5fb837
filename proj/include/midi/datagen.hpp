#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "midi/common.hpp"
#include "midi/rng.hpp"

// Seeded generators for the synthetic benchmark datasets and the two
// noise protocols. Everything is a pure function of (kind, n, seed);
// identical inputs give bitwise-identical output regardless of thread
// count. Stream ids keep x draws, auxiliary draws (circle sign, normal
// partner) and noise independent of each other.

namespace midi {

enum class FunctionKind {
    line,           // y = x
    half_parabola,  // y = x^2
    parabola,       // y = (x - 0.5)^2
    exponential,    // y = 10^x
    sinusoidal,     // y = sin(10*pi*x + x)
    sin_fourier,    // y = sin(16*pi*x)
    sin_nonfourier, // y = sin(13*pi*x)
    sin_varying,    // y = sin(7*pi*x*(1+x))
    circle,         // y = (2z-1)*sqrt(1-(2x-1)^2), z a fair coin
    normal_uncorrelated, // independent standard normals
    uniform_2d,     // independent U[0,1]
    quadratic_pow,  // y = 4*(x-0.5)^2
    cubic_pow,      // y = 128*(x-1/3)^3 - 48*(x-1/3)^2 - 12*(x-1/3)
    sin_eighth,     // y = sin(4*pi*x)
    sin_half,       // y = sin(16*pi*x)
    fourth_root,    // y = x^(1/4)
    step,           // y = 1 if x > 0.5 else 0
};

namespace stream {
inline constexpr std::uint64_t x_draw = 0;
inline constexpr std::uint64_t aux = 1;
inline constexpr std::uint64_t noise = 2;
} // namespace stream

/// True for kinds where y is not a single-valued function of x.
inline bool is_stochastic(FunctionKind kind)
{
    return kind == FunctionKind::circle || kind == FunctionKind::normal_uncorrelated
        || kind == FunctionKind::uniform_2d;
}

/// Closed form y(x) for the deterministic kinds.
inline double closed_form(FunctionKind kind, double x)
{
    using std::numbers::pi;
    switch (kind) {
    case FunctionKind::line: return x;
    case FunctionKind::half_parabola: return x * x;
    case FunctionKind::parabola: return (x - 0.5) * (x - 0.5);
    case FunctionKind::exponential: return std::pow(10.0, x);
    case FunctionKind::sinusoidal: return std::sin(10.0 * pi * x + x);
    case FunctionKind::sin_fourier: return std::sin(16.0 * pi * x);
    case FunctionKind::sin_nonfourier: return std::sin(13.0 * pi * x);
    case FunctionKind::sin_varying: return std::sin(7.0 * pi * x * (1.0 + x));
    case FunctionKind::quadratic_pow: return 4.0 * (x - 0.5) * (x - 0.5);
    case FunctionKind::cubic_pow: {
        const double t = x - 1.0 / 3.0;
        return 128.0 * t * t * t - 48.0 * t * t - 12.0 * t;
    }
    case FunctionKind::sin_eighth: return std::sin(4.0 * pi * x);
    case FunctionKind::sin_half: return std::sin(16.0 * pi * x);
    case FunctionKind::fourth_root: return std::pow(x, 0.25);
    case FunctionKind::step: return x > 0.5 ? 1.0 : 0.0;
    default:
        throw std::invalid_argument("closed_form: kind has no single-valued form");
    }
}

/// Standard bivariate normal pairs with correlation rho:
/// x ~ N(0,1), y = rho*x + sqrt(1-rho^2)*z.
inline SampleSet generate_bivariate_normal(std::size_t n, double rho, std::uint64_t seed)
{
    if (n < 2)
        throw std::invalid_argument("generate_bivariate_normal: n must be >= 2");
    if (!(rho >= -1.0 && rho <= 1.0))
        throw std::invalid_argument("generate_bivariate_normal: |rho| must be <= 1");
    Rng rx(seed, stream::x_draw);
    Rng rz(seed, stream::aux);
    const double tail = std::sqrt(1.0 - rho * rho);
    SampleSet s;
    s.xs.resize(n);
    s.ys.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        s.xs[i] = rx.normal();
        s.ys[i] = rho * s.xs[i] + tail * rz.normal();
    }
    return s;
}

/// x drawn i.i.d. uniform on [0,1] (or standard normal for the normal
/// kind), y from the kind's rule. Deterministic for fixed (kind, n, seed).
inline SampleSet generate(FunctionKind kind, std::size_t n, std::uint64_t seed)
{
    if (n < 2)
        throw std::invalid_argument("generate: n must be >= 2");
    if (kind == FunctionKind::normal_uncorrelated)
        return generate_bivariate_normal(n, 0.0, seed);

    Rng rx(seed, stream::x_draw);
    Rng raux(seed, stream::aux);
    SampleSet s;
    s.xs.resize(n);
    s.ys.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = rx.uniform01();
        s.xs[i] = x;
        switch (kind) {
        case FunctionKind::circle: {
            const double sign = raux.coin() ? 1.0 : -1.0;
            s.ys[i] = sign * std::sqrt(std::max(0.0, 1.0 - (2.0 * x - 1.0) * (2.0 * x - 1.0)));
            break;
        }
        case FunctionKind::uniform_2d:
            s.ys[i] = raux.uniform01();
            break;
        default:
            s.ys[i] = closed_form(kind, x);
            break;
        }
    }
    return s;
}

struct NoiseSpec {
    enum class Kind { uniform_variance, gaussian_sigma };
    Kind kind = Kind::gaussian_sigma;
    double param = 0.0; // sigma^2 for uniform_variance, sigma for gaussian_sigma
    std::uint64_t seed = 0;
};

/// Adds i.i.d. noise to ys. uniform_variance(s2) adds U[-sqrt(3 s2),
/// +sqrt(3 s2)] (the centered uniform with variance s2); gaussian_sigma(s)
/// adds N(0, s^2). The unit variates depend only on the seed, so runs at
/// different noise levels with the same seed are coupled (scaled copies).
inline std::vector<double> add_noise(std::span<const double> ys, const NoiseSpec& spec)
{
    if (spec.param < 0.0)
        throw std::invalid_argument("add_noise: noise parameter must be >= 0");
    std::vector<double> out(ys.begin(), ys.end());
    if (spec.param == 0.0)
        return out;
    Rng rng(spec.seed, stream::noise);
    if (spec.kind == NoiseSpec::Kind::uniform_variance) {
        const double half_width = std::sqrt(3.0 * spec.param);
        for (double& v : out)
            v += half_width * (2.0 * rng.uniform01() - 1.0);
    } else {
        for (double& v : out)
            v += spec.param * rng.normal();
    }
    return out;
}

/// Noise scale for the power benchmark; empty for kinds outside it.
inline std::optional<double> power_noise_scale(FunctionKind kind)
{
    switch (kind) {
    case FunctionKind::line: return 1.0;
    case FunctionKind::quadratic_pow: return 1.0;
    case FunctionKind::cubic_pow: return 10.0;
    case FunctionKind::sin_eighth: return 2.0;
    case FunctionKind::sin_half: return 1.0;
    case FunctionKind::fourth_root: return 1.0;
    case FunctionKind::circle: return 0.25;
    case FunctionKind::step: return 5.0;
    default: return std::nullopt;
    }
}

inline const char* to_string(FunctionKind kind)
{
    switch (kind) {
    case FunctionKind::line: return "line";
    case FunctionKind::half_parabola: return "half-parabola";
    case FunctionKind::parabola: return "parabola";
    case FunctionKind::exponential: return "exponential";
    case FunctionKind::sinusoidal: return "sinusoidal";
    case FunctionKind::sin_fourier: return "sff";
    case FunctionKind::sin_nonfourier: return "snff";
    case FunctionKind::sin_varying: return "svf";
    case FunctionKind::circle: return "circle";
    case FunctionKind::normal_uncorrelated: return "normal";
    case FunctionKind::uniform_2d: return "uniform";
    case FunctionKind::quadratic_pow: return "quadratic";
    case FunctionKind::cubic_pow: return "cubic";
    case FunctionKind::sin_eighth: return "sin-eighth";
    case FunctionKind::sin_half: return "sin-half";
    case FunctionKind::fourth_root: return "fourth-root";
    case FunctionKind::step: return "step";
    }
    return "?";
}

inline std::optional<FunctionKind> function_from_string(std::string_view name)
{
    for (FunctionKind k : {FunctionKind::line, FunctionKind::half_parabola,
                           FunctionKind::parabola, FunctionKind::exponential,
                           FunctionKind::sinusoidal, FunctionKind::sin_fourier,
                           FunctionKind::sin_nonfourier, FunctionKind::sin_varying,
                           FunctionKind::circle, FunctionKind::normal_uncorrelated,
                           FunctionKind::uniform_2d, FunctionKind::quadratic_pow,
                           FunctionKind::cubic_pow, FunctionKind::sin_eighth,
                           FunctionKind::sin_half, FunctionKind::fourth_root,
                           FunctionKind::step}) {
        if (name == to_string(k))
            return k;
    }
    return std::nullopt;
}

} // namespace midi
