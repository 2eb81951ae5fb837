#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace midi {

/// Raised when an axis cannot be scaled or binned because it carries no
/// information (constant values, zero range).
class DegenerateAxis : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised when an internal consistency check fails (e.g. a plug-in mutual
/// information estimate that is negative beyond rounding noise).
class InternalError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Paired observations (x_i, y_i). The universal input of the library.
struct SampleSet {
    std::vector<double> xs;
    std::vector<double> ys;

    std::size_t n() const { return xs.size(); }
};

/// Checks the SampleSet invariants: equal lengths, n >= 2, finite values.
/// Throws std::invalid_argument on violation.
inline void validate_sample_set(std::span<const double> xs,
                                std::span<const double> ys)
{
    if (xs.size() != ys.size())
        throw std::invalid_argument("sample: x and y lengths differ ("
                                    + std::to_string(xs.size()) + " vs "
                                    + std::to_string(ys.size()) + ")");
    if (xs.size() < 2)
        throw std::invalid_argument("sample: need at least 2 points");
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (!std::isfinite(xs[i]) || !std::isfinite(ys[i]))
            throw std::invalid_argument("sample: non-finite value at row "
                                        + std::to_string(i + 1));
    }
}

} // namespace midi
