#pragma once

#include <algorithm>
#include <span>
#include <vector>

#include <uqd/arm.hpp>
#include <uqd/errors.hpp>
#include <uqd/tasks.hpp>

namespace uqd {

enum class Aggregation { Mean, Median };

/// Per-candidate summary of repeated evaluations.
struct SampleStats {
    double fitness = 0.0;
    Vec2 descriptor{0.0, 0.0};
    Vec2 descriptor_variance{0.0, 0.0}; // population convention, around the mean
    std::size_t n = 0;
};

namespace detail {
    inline double median_of(std::vector<double> v)
    {
        const std::size_t mid = v.size() / 2;
        std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
        const double hi = v[mid];
        if (v.size() % 2 == 1)
            return hi;
        const double lo = *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid));
        return lo + (hi - lo) / 2.0;
    }
} // namespace detail

/// Mean (or median) fitness and descriptor with population descriptor variance.
/// Running means are used, so n identical samples aggregate to exactly that sample.
inline SampleStats aggregate(std::span<const Evaluation> samples, Aggregation how = Aggregation::Mean)
{
    if (samples.empty())
        throw UsageError("aggregate: no samples");
    SampleStats s;
    Vec2 m2{0.0, 0.0};
    for (const auto& e : samples) {
        ++s.n;
        const double k = static_cast<double>(s.n);
        s.fitness += (e.fitness - s.fitness) / k;
        for (std::size_t c = 0; c < 2; ++c) {
            const double delta = e.descriptor[c] - s.descriptor[c];
            s.descriptor[c] += delta / k;
            m2[c] += delta * (e.descriptor[c] - s.descriptor[c]);
        }
    }
    const double n = static_cast<double>(s.n);
    s.descriptor_variance = {m2[0] / n, m2[1] / n};

    if (how == Aggregation::Median) {
        std::vector<double> f, x, y;
        for (const auto& e : samples) {
            f.push_back(e.fitness);
            x.push_back(e.descriptor[0]);
            y.push_back(e.descriptor[1]);
        }
        s.fitness = detail::median_of(std::move(f));
        s.descriptor = {detail::median_of(std::move(x)), detail::median_of(std::move(y))};
    }
    return s;
}

} // namespace uqd
