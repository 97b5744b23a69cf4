#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include <uqd/errors.hpp>

namespace uqd {

using Vec2 = std::array<double, 2>;

/// Joint angles of the planar arm, radians.
struct Genotype {
    std::vector<double> angles;

    std::size_t size() const noexcept { return angles.size(); }
    bool operator==(const Genotype&) const = default;
};

enum class FitnessMode { Zero, NegJointVariance };

struct ArmConfig {
    std::size_t n_joints = 8;
    std::vector<double> link_lengths; // empty means equal links of 1/n_joints
    double theta_min = -std::numbers::pi;
    double theta_max = std::numbers::pi;
    FitnessMode fitness_mode = FitnessMode::NegJointVariance;

    /// Resolves defaults and checks the invariants. Throws ConfigError.
    ArmConfig& validate()
    {
        if (n_joints < 2)
            throw ConfigError("arm: n_joints must be >= 2, got " + std::to_string(n_joints));
        if (link_lengths.empty())
            link_lengths.assign(n_joints, 1.0 / static_cast<double>(n_joints));
        if (link_lengths.size() != n_joints)
            throw ConfigError("arm: link_lengths has " + std::to_string(link_lengths.size()) + " entries for "
                              + std::to_string(n_joints) + " joints");
        for (double l : link_lengths)
            if (!(l > 0.0))
                throw ConfigError("arm: link lengths must be positive");
        const double total = std::accumulate(link_lengths.begin(), link_lengths.end(), 0.0);
        if (std::abs(total - 1.0) > 1e-9)
            throw ConfigError("arm: link lengths must sum to 1, got " + std::to_string(total));
        if (!(theta_min < theta_max))
            throw ConfigError("arm: theta_min must be < theta_max");
        return *this;
    }

    double angle_range() const noexcept { return theta_max - theta_min; }
};

inline ArmConfig default_arm(FitnessMode mode = FitnessMode::NegJointVariance)
{
    ArmConfig cfg;
    cfg.fitness_mode = mode;
    return cfg.validate();
}

inline void check_dimension(const ArmConfig& cfg, std::span<const double> angles)
{
    if (angles.size() != cfg.n_joints)
        throw ConfigError("genotype has " + std::to_string(angles.size()) + " angles but the arm has "
                          + std::to_string(cfg.n_joints) + " joints");
}

/// Dimension and bounds check for genotypes produced by the optimizer.
inline void validate_genotype(const ArmConfig& cfg, const Genotype& g)
{
    check_dimension(cfg, g.angles);
    for (double a : g.angles)
        if (!(a >= cfg.theta_min && a <= cfg.theta_max))
            throw ConfigError("genotype angle " + std::to_string(a) + " outside bounds");
}

/// End-effector position of the cumulative-angle planar chain, in the unit disc.
/// Only the dimension is checked: perturbed phenotypes may leave the angle bounds.
inline Vec2 forward_kinematics(const ArmConfig& cfg, std::span<const double> angles)
{
    check_dimension(cfg, angles);
    double phi = 0.0;
    Vec2 p{0.0, 0.0};
    for (std::size_t i = 0; i < angles.size(); ++i) {
        phi += angles[i];
        p[0] += cfg.link_lengths[i] * std::cos(phi);
        p[1] += cfg.link_lengths[i] * std::sin(phi);
    }
    return p;
}

inline Vec2 forward_kinematics(const ArmConfig& cfg, const Genotype& g) { return forward_kinematics(cfg, g.angles); }

inline Vec2 clamp_unit(Vec2 d) noexcept
{
    return {std::clamp(d[0], 0.0, 1.0), std::clamp(d[1], 0.0, 1.0)};
}

/// Maps a raw point of [-1,1]^2 onto the unit square, clamping.
inline Vec2 normalize_position(Vec2 raw) noexcept { return clamp_unit({(raw[0] + 1.0) / 2.0, (raw[1] + 1.0) / 2.0}); }

inline Vec2 descriptor(const ArmConfig& cfg, std::span<const double> angles)
{
    return normalize_position(forward_kinematics(cfg, angles));
}

inline Vec2 descriptor(const ArmConfig& cfg, const Genotype& g) { return descriptor(cfg, g.angles); }

/// Population variance (1/N) of the joint angles.
inline double angle_variance(std::span<const double> angles) noexcept
{
    if (angles.empty() || std::all_of(angles.begin(), angles.end(), [&](double a) { return a == angles[0]; }))
        return 0.0;
    const double n = static_cast<double>(angles.size());
    const double mean = std::accumulate(angles.begin(), angles.end(), 0.0) / n;
    double acc = 0.0;
    for (double a : angles)
        acc += (a - mean) * (a - mean);
    return acc / n;
}

inline double fitness(const ArmConfig& cfg, std::span<const double> angles)
{
    check_dimension(cfg, angles);
    if (cfg.fitness_mode == FitnessMode::Zero)
        return 0.0;
    const double v = angle_variance(angles);
    return v == 0.0 ? 0.0 : -v;
}

inline double fitness(const ArmConfig& cfg, const Genotype& g) { return fitness(cfg, g.angles); }

} // namespace uqd
