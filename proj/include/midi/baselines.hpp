#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <span>
#include <vector>

#include "midi/common.hpp"

// Reference dependence measures: distance correlation, Pearson, Spearman.
// These exist for comparison, not throughput; distance_correlation is
// O(n^2) time and O(n) memory.

namespace midi {

struct DcorReport {
    double dcov_sq = 0.0; // squared distance covariance
    double dvar_x = 0.0;  // squared distance variance of x
    double dvar_y = 0.0;
    double dcor = 0.0;    // normalized; 0 by convention when a variance vanishes
};

/// Sample distance correlation of two scalar variables. Distances are
/// absolute differences; A and B are the doubly centered distance
/// matrices (computed on the fly, never materialized).
inline DcorReport distance_correlation(std::span<const double> xs,
                                       std::span<const double> ys)
{
    validate_sample_set(xs, ys);
    const std::size_t n = xs.size();
    const double dn = static_cast<double>(n);

    // Row means and grand means of the distance matrices.
    std::vector<double> arow(n, 0.0), brow(n, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t l = k + 1; l < n; ++l) {
            const double a = std::abs(xs[k] - xs[l]);
            const double b = std::abs(ys[k] - ys[l]);
            arow[k] += a;
            arow[l] += a;
            brow[k] += b;
            brow[l] += b;
        }
    }
    double agrand = 0.0, bgrand = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        arow[k] /= dn;
        brow[k] /= dn;
        agrand += arow[k];
        bgrand += brow[k];
    }
    agrand /= dn;
    bgrand /= dn;

    double sab = 0.0, saa = 0.0, sbb = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t l = 0; l < n; ++l) {
            const double A = std::abs(xs[k] - xs[l]) - arow[k] - arow[l] + agrand;
            const double B = std::abs(ys[k] - ys[l]) - brow[k] - brow[l] + bgrand;
            sab += A * B;
            saa += A * A;
            sbb += B * B;
        }
    }

    DcorReport r;
    const double n2 = dn * dn;
    // The V-statistics are nonnegative in exact arithmetic.
    r.dcov_sq = std::max(0.0, sab / n2);
    r.dvar_x = std::max(0.0, saa / n2);
    r.dvar_y = std::max(0.0, sbb / n2);
    const double denom = r.dvar_x * r.dvar_y;
    r.dcor = denom > 0.0 ? std::sqrt(r.dcov_sq / std::sqrt(denom)) : 0.0;
    return r;
}

/// Sample Pearson correlation coefficient.
/// Throws DegenerateAxis when either variance is zero.
inline double pearson(std::span<const double> xs, std::span<const double> ys)
{
    validate_sample_set(xs, ys);
    const std::size_t n = xs.size();
    const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(n);
    const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / static_cast<double>(n);
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = xs[i] - mx;
        const double dy = ys[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (!(sxx > 0.0) || !(syy > 0.0))
        throw DegenerateAxis("pearson: zero variance");
    return sxy / std::sqrt(sxx * syy);
}

/// Ranks with ties assigned the average rank of their run.
inline std::vector<double> average_ranks(std::span<const double> values)
{
    const std::size_t n = values.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    std::vector<double> ranks(n, 0.0);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && values[order[j + 1]] == values[order[i]])
            ++j;
        const double avg = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
        for (std::size_t k = i; k <= j; ++k)
            ranks[order[k]] = avg;
        i = j + 1;
    }
    return ranks;
}

/// Spearman rank correlation: Pearson on average ranks.
/// Throws DegenerateAxis when all ranks tie on either axis.
inline double spearman(std::span<const double> xs, std::span<const double> ys)
{
    const auto rx = average_ranks(xs);
    const auto ry = average_ranks(ys);
    return pearson(rx, ry);
}

} // namespace midi
