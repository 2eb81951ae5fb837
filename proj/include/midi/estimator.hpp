#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "midi/common.hpp"

// Mutual Information based Dependence Index (MIDI).
//
// The estimator scales both axes to [0,1], bins one axis with fixed-width
// cells of length n^c * L, where L is the connectivity distance (largest
// gap between consecutive order statistics, taken as the smaller of the
// two axes' gaps), and the other axis with ceil(log10 n) equal cells. The
// plug-in mutual information and marginal entropies of the resulting
// joint histogram give MIDI = I / min(Hx, Hy); the roles of the axes are
// then swapped and the larger of the two values is reported.
//
// All entropies are in nats; MIDI itself is base-invariant.

namespace midi {

struct EstimatorConfig {
    double c = 0.1; // exponent in (0,1) applied to n in the bin-length rule
};

inline void validate_config(const EstimatorConfig& cfg)
{
    if (!(cfg.c > 0.0) || !(cfg.c < 1.0))
        throw std::invalid_argument("estimator: c must lie in (0,1)");
}

/// Affine rescale to [0,1]: min maps to 0, max to 1.
/// Throws DegenerateAxis when all values are equal.
inline std::vector<double> scale_to_unit(std::span<const double> values)
{
    if (values.size() < 2)
        throw std::invalid_argument("scale_to_unit: need at least 2 values");
    const auto [mn_it, mx_it] = std::minmax_element(values.begin(), values.end());
    const double mn = *mn_it, mx = *mx_it;
    if (!(mx > mn))
        throw DegenerateAxis("axis is constant (zero range)");
    const double inv = 1.0 / (mx - mn);
    std::vector<double> out(values.size());
    for (std::size_t i = 0; i < values.size(); ++i)
        out[i] = (values[i] - mn) * inv;
    return out;
}

/// Largest gap between consecutive order statistics of values already
/// sorted into [0,1]. Only observed points count; endpoints are not
/// padded in. Throws DegenerateAxis if every gap is zero.
inline double maximal_spacing(std::span<const double> sorted01)
{
    if (sorted01.size() < 2)
        throw std::invalid_argument("maximal_spacing: need at least 2 values");
    double gap = 0.0;
    for (std::size_t i = 1; i < sorted01.size(); ++i)
        gap = std::max(gap, sorted01[i] - sorted01[i - 1]);
    if (!(gap > 0.0))
        throw DegenerateAxis("all points identical: maximal spacing is zero");
    return gap;
}

enum class PartitionKind { fixed_width, fixed_count };

/// Per-axis binning over the scaled interval [0,1]. Cells are anchored at
/// 0 and half-open, [lower_edge(k), lower_edge(k+1)); the last cell is
/// closed at 1 and absorbs the remainder.
struct PartitionSpec {
    PartitionKind kind = PartitionKind::fixed_count;
    double bin_length = 1.0; // cell width (fixed_width); 1/bin_count otherwise
    std::uint32_t bin_count = 1;

    double lower_edge(std::uint32_t k) const
    {
        return kind == PartitionKind::fixed_width
                   ? static_cast<double>(k) * bin_length
                   : static_cast<double>(k) / static_cast<double>(bin_count);
    }
};

/// Fixed-width cells of length min(1, n^c * l_max) anchored at 0.
inline PartitionSpec fixed_width_partition(std::size_t n, double c, double l_max)
{
    if (n < 2)
        throw std::invalid_argument("fixed_width_partition: n must be >= 2");
    if (!(c > 0.0) || !(c < 1.0))
        throw std::invalid_argument("fixed_width_partition: c must lie in (0,1)");
    if (!(l_max > 0.0) || !(l_max <= 1.0))
        throw std::invalid_argument("fixed_width_partition: l_max must lie in (0,1]");
    // n^c * l_max can exceed 1 (two-point data); clamp so the operation
    // stays total. A single cell yields a degenerate directional value.
    const double len = std::min(1.0, std::pow(static_cast<double>(n), c) * l_max);
    PartitionSpec spec;
    spec.kind = PartitionKind::fixed_width;
    spec.bin_length = len;
    spec.bin_count = static_cast<std::uint32_t>(std::ceil(1.0 / len));
    return spec;
}

/// ceil(log10 n) for integral n, in exact integer arithmetic.
inline std::uint32_t ceil_log10(std::size_t n)
{
    std::uint32_t digits = 0;
    std::size_t power = 1; // 10^digits
    for (std::size_t m = n; m >= 10; m /= 10) {
        ++digits;
        power *= 10;
    }
    return power == n ? digits : digits + 1;
}

/// max(2, ceil(log10 n)) equal-width cells over [0,1].
inline PartitionSpec fixed_count_partition(std::size_t n)
{
    if (n < 2)
        throw std::invalid_argument("fixed_count_partition: n must be >= 2");
    PartitionSpec spec;
    spec.kind = PartitionKind::fixed_count;
    spec.bin_count = std::max<std::uint32_t>(2, ceil_log10(n));
    spec.bin_length = 1.0 / static_cast<double>(spec.bin_count);
    return spec;
}

/// Maps each value in [0,1] to its cell index. A fast arithmetic guess is
/// corrected against the cell edges so the result agrees exactly with the
/// half-open-interval definition (a value on an interior edge belongs to
/// the cell on its right; 1.0 belongs to the last cell).
inline std::vector<std::uint32_t> assign_bins(std::span<const double> values01,
                                              const PartitionSpec& spec)
{
    const std::uint32_t last = spec.bin_count - 1;
    const double scale = spec.kind == PartitionKind::fixed_width
                             ? 1.0 / spec.bin_length
                             : static_cast<double>(spec.bin_count);
    std::vector<std::uint32_t> out(values01.size());
    for (std::size_t i = 0; i < values01.size(); ++i) {
        const double v = values01[i];
        std::uint32_t k = 0;
        if (v >= 1.0)
            k = last;
        else if (v > 0.0)
            k = std::min(last, static_cast<std::uint32_t>(v * scale));
        while (k > 0 && v < spec.lower_edge(k))
            --k;
        while (k < last && v >= spec.lower_edge(k + 1))
            ++k;
        out[i] = k;
    }
    return out;
}

/// Joint cell counts #_{i,j} with row/column marginals #_i, #_j.
struct JointHistogram {
    std::uint32_t nx = 0;
    std::uint32_t ny = 0;
    std::vector<std::uint64_t> counts; // nx*ny, row-major
    std::vector<std::uint64_t> row_marginals;
    std::vector<std::uint64_t> col_marginals;
    std::uint64_t n = 0;

    std::uint64_t at(std::uint32_t i, std::uint32_t j) const
    {
        return counts[static_cast<std::size_t>(i) * ny + j];
    }
};

inline JointHistogram build_joint_histogram(std::span<const std::uint32_t> ix,
                                            std::span<const std::uint32_t> iy,
                                            std::uint32_t nx, std::uint32_t ny)
{
    if (ix.size() != iy.size())
        throw std::invalid_argument("build_joint_histogram: index lengths differ");
    JointHistogram h;
    h.nx = nx;
    h.ny = ny;
    h.n = ix.size();
    h.counts.assign(static_cast<std::size_t>(nx) * ny, 0);
    h.row_marginals.assign(nx, 0);
    h.col_marginals.assign(ny, 0);
    for (std::size_t k = 0; k < ix.size(); ++k) {
        ++h.counts[static_cast<std::size_t>(ix[k]) * ny + iy[k]];
        ++h.row_marginals[ix[k]];
        ++h.col_marginals[iy[k]];
    }
    return h;
}

/// Plug-in marginal entropy in nats: sum over nonzero counts of
/// (#/n) ln(n/#). Empty cells contribute 0.
inline double entropy_hat(std::span<const std::uint64_t> marginal, std::uint64_t n)
{
    double h = 0.0;
    const double dn = static_cast<double>(n);
    for (std::uint64_t count : marginal) {
        if (count == 0)
            continue;
        const double p = static_cast<double>(count) / dn;
        h -= p * std::log(p);
    }
    return h;
}

/// Plug-in mutual information in nats:
/// sum over nonzero cells of (#_{ij}/n) ln(n #_{ij} / (#_i #_j)).
/// Provably >= 0 in exact arithmetic; tiny negatives from rounding are
/// clamped to 0, anything below -1e-12 is an internal error.
inline double mutual_information_hat(const JointHistogram& h)
{
    const double dn = static_cast<double>(h.n);
    double mi = 0.0;
    for (std::uint32_t i = 0; i < h.nx; ++i) {
        const std::uint64_t ri = h.row_marginals[i];
        if (ri == 0)
            continue;
        for (std::uint32_t j = 0; j < h.ny; ++j) {
            const std::uint64_t cij = h.at(i, j);
            if (cij == 0)
                continue;
            const double num = dn * static_cast<double>(cij);
            const double den = static_cast<double>(ri) * static_cast<double>(h.col_marginals[j]);
            mi += static_cast<double>(cij) / dn * std::log(num / den);
        }
    }
    if (mi < 0.0) {
        if (mi < -1e-12)
            throw InternalError("plug-in mutual information is negative: "
                                + std::to_string(mi));
        mi = 0.0;
    }
    return mi;
}

/// One axis-role assignment of the estimator. `value` is I/min(Hx,Hy), or
/// 0 with `degenerate` set when the smaller entropy vanishes (single
/// occupied cell on one axis).
struct DirectionalEstimate {
    double mi_hat = 0.0;
    double h_width_axis = 0.0; // entropy of the fixed-width-binned axis
    double h_count_axis = 0.0; // entropy of the fixed-count-binned axis
    double value = 0.0;
    bool degenerate = false;
};

namespace detail {

/// Core of one direction on already scaled data. `first` gets the
/// fixed-width cells of length n^c * l_max, `second` the fixed-count
/// cells.
inline DirectionalEstimate directional_scaled(std::span<const double> first,
                                              std::span<const double> second,
                                              double l_max,
                                              const EstimatorConfig& cfg)
{
    const std::size_t n = first.size();
    const PartitionSpec pw = fixed_width_partition(n, cfg.c, l_max);
    const PartitionSpec pc = fixed_count_partition(n);
    const auto iw = assign_bins(first, pw);
    const auto ic = assign_bins(second, pc);
    const JointHistogram h = build_joint_histogram(iw, ic, pw.bin_count, pc.bin_count);

    DirectionalEstimate est;
    est.mi_hat = mutual_information_hat(h);
    est.h_width_axis = entropy_hat(h.row_marginals, h.n);
    est.h_count_axis = entropy_hat(h.col_marginals, h.n);
    const double h_min = std::min(est.h_width_axis, est.h_count_axis);
    if (h_min <= 0.0) {
        // With one occupied cell on an axis the plug-in MI is exactly 0;
        // report 0 and flag instead of dividing by zero, so batch
        // screening never aborts.
        est.value = 0.0;
        est.degenerate = true;
    } else {
        est.value = est.mi_hat / h_min;
    }
    return est;
}

/// Shared connectivity distance: the smaller of the two axes' maximal
/// spacings, used as L in the bin-length rule for both directions.
inline double shared_spacing(std::span<const double> sx, std::span<const double> sy)
{
    std::vector<double> tmp(sx.begin(), sx.end());
    std::sort(tmp.begin(), tmp.end());
    const double lx = maximal_spacing(tmp);
    tmp.assign(sy.begin(), sy.end());
    std::sort(tmp.begin(), tmp.end());
    const double ly = maximal_spacing(tmp);
    return std::min(lx, ly);
}

} // namespace detail

/// Fixed-width cells on the x axis, fixed-count cells on the y axis.
/// Scales both axes internally; see `estimate` for the symmetrized index.
inline DirectionalEstimate estimate_directional(std::span<const double> xs,
                                                std::span<const double> ys,
                                                const EstimatorConfig& cfg = {})
{
    validate_sample_set(xs, ys);
    validate_config(cfg);
    const auto sx = scale_to_unit(xs);
    const auto sy = scale_to_unit(ys);
    return detail::directional_scaled(sx, sy, detail::shared_spacing(sx, sy), cfg);
}

/// Full estimator output. mi_hat/hx_hat/hy_hat come from the direction
/// with fixed-width cells on x; midi is max(midi_x, midi_y).
struct EstimateReport {
    double mi_hat = 0.0;
    double hx_hat = 0.0;
    double hy_hat = 0.0;
    double midi_x = 0.0;
    double midi_y = 0.0;
    double midi = 0.0;
    bool degenerate_x = false;
    bool degenerate_y = false;
    EstimatorConfig config_used;

    bool degenerate() const { return degenerate_x && degenerate_y; }
};

inline EstimateReport estimate(std::span<const double> xs,
                               std::span<const double> ys,
                               const EstimatorConfig& cfg = {})
{
    validate_sample_set(xs, ys);
    validate_config(cfg);
    const auto sx = scale_to_unit(xs);
    const auto sy = scale_to_unit(ys);
    const double l = detail::shared_spacing(sx, sy);
    const DirectionalEstimate dx = detail::directional_scaled(sx, sy, l, cfg);
    const DirectionalEstimate dy = detail::directional_scaled(sy, sx, l, cfg);

    EstimateReport report;
    report.mi_hat = dx.mi_hat;
    report.hx_hat = dx.h_width_axis;
    report.hy_hat = dx.h_count_axis;
    report.midi_x = dx.value;
    report.midi_y = dy.value;
    report.midi = std::max(dx.value, dy.value);
    report.degenerate_x = dx.degenerate;
    report.degenerate_y = dy.degenerate;
    report.config_used = cfg;
    return report;
}

inline EstimateReport estimate(const SampleSet& sample, const EstimatorConfig& cfg = {})
{
    return estimate(sample.xs, sample.ys, cfg);
}

} // namespace midi
