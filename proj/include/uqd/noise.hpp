#pragma once

#include <algorithm>
#include <optional>
#include <span>
#include <string>
#include <type_traits>
#include <variant>

#include <uqd/arm.hpp>
#include <uqd/errors.hpp>
#include <uqd/rng.hpp>

namespace uqd {

// Distribution families. Means are 2-vectors; scalar samplers read component 0.
// All covariances are isotropic (sigma^2 * I).

struct NoNoise {};

struct Gaussian {
    double sigma = 1.0;
    Vec2 mean{0.0, 0.0};
};

/// alpha * N(mean1, sigma1^2) + (1 - alpha) * N(mean2, sigma2^2)
struct Bimodal {
    double alpha = 0.95;
    Vec2 mean1{0.0, 0.0};
    double sigma1 = 0.05;
    Vec2 mean2{-1.0, -1.0};
    double sigma2 = 0.05;
};

/// Std sigma1 when the product of the angles is >= 0, sigma2 otherwise.
struct ConditionalTwoSigma {
    double sigma1 = 0.001;
    double sigma2 = 0.05;
};

/// Std eta * Var(theta).
struct ConditionalContinuous {
    double eta = 0.02;
};

using NoiseDistribution = std::variant<NoNoise, Gaussian, Bimodal, ConditionalTwoSigma, ConditionalContinuous>;

/// Where the noise enters. PhenotypeDim carries a 1-based joint index.
struct FitnessLocation {};
struct DescriptorLocation {};
struct PhenotypeDim {
    std::size_t joint = 1;
};
using NoiseLocation = std::variant<FitnessLocation, DescriptorLocation, PhenotypeDim>;

inline bool is_conditional(const NoiseDistribution& d) noexcept
{
    return std::holds_alternative<ConditionalTwoSigma>(d) || std::holds_alternative<ConditionalContinuous>(d);
}

inline void validate(const NoiseDistribution& dist)
{
    std::visit(
        [](const auto& d) {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, Gaussian>) {
                if (!(d.sigma > 0.0))
                    throw ConfigError("gaussian noise: sigma > 0 required");
            }
            else if constexpr (std::is_same_v<T, Bimodal>) {
                if (!(d.sigma1 > 0.0) || !(d.sigma2 > 0.0))
                    throw ConfigError("bimodal noise: sigma1, sigma2 > 0 required");
                if (!(d.alpha > 0.0 && d.alpha < 1.0))
                    throw ConfigError("bimodal noise: alpha in (0, 1) required");
            }
            else if constexpr (std::is_same_v<T, ConditionalTwoSigma>) {
                if (!(d.sigma1 > 0.0))
                    throw ConfigError("two-sigma noise: sigma1 > 0 required");
                if (!(d.sigma2 >= 10.0 * d.sigma1))
                    throw ConfigError("two-sigma noise: sigma2 >> sigma1 required (sigma2 >= 10 * sigma1)");
            }
            else if constexpr (std::is_same_v<T, ConditionalContinuous>) {
                if (!(d.eta > 0.0))
                    throw ConfigError("continuous-sigma noise: eta > 0 required");
            }
        },
        dist);
}

namespace detail {
    inline double bimodal_pick(const Bimodal& b, RngStream& rng, std::size_t& mode) noexcept
    {
        mode = rng.uniform() < b.alpha ? 0 : 1;
        return mode == 0 ? b.sigma1 : b.sigma2;
    }
} // namespace detail

inline double sample_scalar(const NoiseDistribution& dist, RngStream& rng)
{
    if (const auto* g = std::get_if<Gaussian>(&dist))
        return rng.normal(g->mean[0], g->sigma);
    if (const auto* b = std::get_if<Bimodal>(&dist)) {
        std::size_t mode;
        const double sigma = detail::bimodal_pick(*b, rng, mode);
        return rng.normal(mode == 0 ? b->mean1[0] : b->mean2[0], sigma);
    }
    if (std::holds_alternative<NoNoise>(dist))
        return 0.0;
    throw UsageError("sample_scalar: conditional distributions need a genotype, use sample_conditional");
}

inline Vec2 sample_vector2(const NoiseDistribution& dist, RngStream& rng)
{
    if (const auto* g = std::get_if<Gaussian>(&dist)) {
        const double x = rng.normal(g->mean[0], g->sigma);
        const double y = rng.normal(g->mean[1], g->sigma);
        return {x, y};
    }
    if (const auto* b = std::get_if<Bimodal>(&dist)) {
        std::size_t mode;
        const double sigma = detail::bimodal_pick(*b, rng, mode);
        const Vec2& m = mode == 0 ? b->mean1 : b->mean2;
        const double x = rng.normal(m[0], sigma);
        const double y = rng.normal(m[1], sigma);
        return {x, y};
    }
    if (std::holds_alternative<NoNoise>(dist))
        return {0.0, 0.0};
    throw UsageError("sample_vector2: conditional distributions need a genotype, use sample_conditional");
}

/// Standard deviation the conditional families assign to a phenotype.
inline double conditional_sigma(const NoiseDistribution& dist, std::span<const double> angles)
{
    if (const auto* t = std::get_if<ConditionalTwoSigma>(&dist)) {
        // sign(0) counts as non-negative
        const bool has_zero = std::any_of(angles.begin(), angles.end(), [](double a) { return a == 0.0; });
        const auto negatives = std::count_if(angles.begin(), angles.end(), [](double a) { return a < 0.0; });
        return (has_zero || negatives % 2 == 0) ? t->sigma1 : t->sigma2;
    }
    if (const auto* c = std::get_if<ConditionalContinuous>(&dist))
        return c->eta * angle_variance(angles);
    throw UsageError("conditional_sigma: distribution is not conditional");
}

inline Vec2 sample_conditional(const NoiseDistribution& dist, const Genotype& g, RngStream& rng)
{
    if (!is_conditional(dist))
        throw UsageError("sample_conditional: distribution is not conditional");
    const double sigma = conditional_sigma(dist, g.angles);
    const double x = sigma * rng.normal();
    const double y = sigma * rng.normal();
    return {x, y};
}

struct Moments {
    Vec2 mean{0.0, 0.0};
    Vec2 variance{0.0, 0.0};
};

/// Closed-form mean and per-component variance; absent for the genotype-dependent families.
inline std::optional<Moments> analytic_expectation(const NoiseDistribution& dist)
{
    if (std::holds_alternative<NoNoise>(dist))
        return Moments{};
    if (const auto* g = std::get_if<Gaussian>(&dist))
        return Moments{g->mean, {g->sigma * g->sigma, g->sigma * g->sigma}};
    if (const auto* b = std::get_if<Bimodal>(&dist)) {
        const double a = b->alpha;
        Moments m;
        for (std::size_t k = 0; k < 2; ++k) {
            m.mean[k] = a * b->mean1[k] + (1.0 - a) * b->mean2[k];
            // law of total variance
            const double sep = b->mean1[k] - b->mean2[k];
            m.variance[k] = a * b->sigma1 * b->sigma1 + (1.0 - a) * b->sigma2 * b->sigma2 + a * (1.0 - a) * sep * sep;
        }
        return m;
    }
    return std::nullopt;
}

} // namespace uqd
