#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <uqd/arm.hpp>
#include <uqd/errors.hpp>
#include <uqd/noise.hpp>
#include <uqd/rng.hpp>

namespace uqd {

enum class TaskId {
    NoiseFree,
    GaussFit,
    BimodalFit,
    SmallGaussDesc,
    LargeGaussDesc,
    BimodalDesc,
    TwoSigmaDesc,
    ContinuousSigmaDesc,
    PhenoJ,
};

struct ParamInfo {
    std::string name;
    double default_value;
    std::string constraint;
};

struct TaskInfo {
    TaskId id;
    std::string_view name;
    std::string_view category;
    std::string_view summary;
    std::vector<ParamInfo> params;
};

/// The catalog: stable string ids, defaults and constraints of every task.
inline const std::vector<TaskInfo>& task_catalog()
{
    static const std::vector<TaskInfo> catalog = {
        {TaskId::NoiseFree, "noise-free", "fixture", "deterministic arm, negative joint-variance fitness", {}},
        {TaskId::GaussFit, "gaussian-fitness", "performance-estimation", "f~ = f + N(0, sigma^2), d~ = d",
         {{"sigma", 0.5, "sigma > 0"}}},
        {TaskId::BimodalFit, "bimodal-fitness", "performance-estimation",
         "f~ = f + eps, eps ~ alpha N(0, sigma1^2) + (1 - alpha) N(-1, sigma2^2), d~ = d",
         {{"alpha", 0.95, "alpha in (0, 1)"}, {"sigma1", 0.05, "sigma1 > 0"}, {"sigma2", 0.05, "sigma2 > 0"}}},
        {TaskId::SmallGaussDesc, "small-gaussian-descriptor", "performance-estimation",
         "d~ = d + N(0, sigma^2 I), f~ = f", {{"sigma", 0.01, "sigma in (0, 0.02)"}}},
        {TaskId::LargeGaussDesc, "large-gaussian-descriptor", "performance-estimation",
         "d~ = d + N(0, sigma^2 I), f~ = f", {{"sigma", 0.15, "sigma > 0.1"}}},
        {TaskId::BimodalDesc, "bimodal-descriptor", "performance-estimation",
         "d~ = d + eps, eps ~ alpha N(0, sigma1^2 I) + (1 - alpha) N((1, 1), sigma2^2 I), f~ = f",
         {{"alpha", 0.95, "alpha in (0, 1)"}, {"sigma1", 0.01, "sigma1 > 0"}, {"sigma2", 0.01, "sigma2 > 0"}}},
        {TaskId::TwoSigmaDesc, "two-sigma-descriptor", "reproducibility",
         "d~ = d + N(0, s^2 I), s = sigma1 if prod(theta) >= 0 else sigma2, f~ = 0",
         {{"sigma1", 0.001, "sigma1 > 0"}, {"sigma2", 0.05, "sigma2 >> sigma1 (sigma2 >= 10 sigma1)"}}},
        {TaskId::ContinuousSigmaDesc, "continuous-sigma-descriptor", "reproducibility",
         "d~ = d + N(0, (eta Var(theta))^2 I), f~ = 0", {{"eta", 0.02, "eta > 0"}}},
        {TaskId::PhenoJ, "pheno-j", "realistic", "theta~_J = theta_J + N(0, sigma^2), f~ = 0",
         {{"j", 6, "integer j in [1, n_joints]"}, {"sigma", 0.2, "sigma > 0"}}},
    };
    return catalog;
}

inline const TaskInfo& task_info(TaskId id)
{
    for (const auto& t : task_catalog())
        if (t.id == id)
            return t;
    throw UsageError("unknown task id");
}

inline std::string_view task_name(TaskId id) { return task_info(id).name; }

inline TaskId parse_task_id(std::string_view name)
{
    for (const auto& t : task_catalog())
        if (t.name == name)
            return t.id;
    throw ConfigError("unknown task '" + std::string(name) + "'");
}

struct TaskSpec {
    TaskId id = TaskId::NoiseFree;
    ArmConfig arm;
    NoiseLocation location;
    NoiseDistribution dist;
    std::map<std::string, double> params;

    /// Fitness offset making every admissible fitness contribute positively to the QD-Score.
    double qd_offset() const noexcept
    {
        if (arm.fitness_mode == FitnessMode::Zero)
            return 1.0;
        const double half = arm.angle_range() / 2.0;
        return half * half;
    }
};

struct Evaluation {
    double fitness = 0.0;
    Vec2 descriptor{0.0, 0.0};

    bool operator==(const Evaluation&) const = default;
};

/// Resolves a task with its defaults, applies overrides and checks the table constraints.
inline TaskSpec make_task(TaskId id, const std::map<std::string, double>& overrides = {}, ArmConfig arm = {})
{
    const TaskInfo& info = task_info(id);
    TaskSpec t;
    t.id = id;
    for (const auto& p : info.params)
        t.params[p.name] = p.default_value;
    for (const auto& [key, value] : overrides) {
        if (!t.params.contains(key))
            throw ConfigError(std::string(info.name) + ": unknown parameter '" + key + "'");
        t.params[key] = value;
    }

    const auto fail = [&](std::string_view constraint) {
        throw ConfigError(std::string(info.name) + ": constraint violated: " + std::string(constraint));
    };
    const auto& p = t.params;
    const auto constraint_of = [&](std::size_t i) { return std::string_view(info.params[i].constraint); };

    switch (id) {
    case TaskId::NoiseFree:
        arm.fitness_mode = FitnessMode::NegJointVariance;
        t.location = FitnessLocation{};
        t.dist = NoNoise{};
        break;
    case TaskId::GaussFit:
        if (!(p.at("sigma") > 0.0))
            fail(constraint_of(0));
        arm.fitness_mode = FitnessMode::NegJointVariance;
        t.location = FitnessLocation{};
        t.dist = Gaussian{p.at("sigma")};
        break;
    case TaskId::BimodalFit:
    case TaskId::BimodalDesc: {
        if (!(p.at("alpha") > 0.0 && p.at("alpha") < 1.0))
            fail(constraint_of(0));
        if (!(p.at("sigma1") > 0.0))
            fail(constraint_of(1));
        if (!(p.at("sigma2") > 0.0))
            fail(constraint_of(2));
        arm.fitness_mode = FitnessMode::NegJointVariance;
        Bimodal b{p.at("alpha"), {0.0, 0.0}, p.at("sigma1"), {-1.0, -1.0}, p.at("sigma2")};
        if (id == TaskId::BimodalFit) {
            t.location = FitnessLocation{};
        }
        else {
            b.mean2 = {1.0, 1.0};
            t.location = DescriptorLocation{};
        }
        t.dist = b;
        break;
    }
    case TaskId::SmallGaussDesc:
        if (!(p.at("sigma") > 0.0 && p.at("sigma") < 0.02))
            fail(constraint_of(0));
        arm.fitness_mode = FitnessMode::NegJointVariance;
        t.location = DescriptorLocation{};
        t.dist = Gaussian{p.at("sigma")};
        break;
    case TaskId::LargeGaussDesc:
        if (!(p.at("sigma") > 0.1))
            fail(constraint_of(0));
        arm.fitness_mode = FitnessMode::NegJointVariance;
        t.location = DescriptorLocation{};
        t.dist = Gaussian{p.at("sigma")};
        break;
    case TaskId::TwoSigmaDesc:
        if (!(p.at("sigma1") > 0.0))
            fail(constraint_of(0));
        if (!(p.at("sigma2") >= 10.0 * p.at("sigma1")))
            fail(constraint_of(1));
        arm.fitness_mode = FitnessMode::Zero;
        t.location = DescriptorLocation{};
        t.dist = ConditionalTwoSigma{p.at("sigma1"), p.at("sigma2")};
        break;
    case TaskId::ContinuousSigmaDesc:
        if (!(p.at("eta") > 0.0))
            fail(constraint_of(0));
        arm.fitness_mode = FitnessMode::Zero;
        t.location = DescriptorLocation{};
        t.dist = ConditionalContinuous{p.at("eta")};
        break;
    case TaskId::PhenoJ: {
        arm.validate();
        const double j = p.at("j");
        if (!(j >= 1.0 && j <= static_cast<double>(arm.n_joints) && j == std::floor(j)))
            fail(constraint_of(0));
        if (!(p.at("sigma") > 0.0))
            fail(constraint_of(1));
        arm.fitness_mode = FitnessMode::Zero;
        t.location = PhenotypeDim{static_cast<std::size_t>(j)};
        t.dist = Gaussian{p.at("sigma")};
        break;
    }
    }
    arm.validate();
    t.arm = std::move(arm);
    return t;
}

/// One stochastic observation of g.
inline Evaluation evaluate(const TaskSpec& task, const Genotype& g, RngStream& rng)
{
    check_dimension(task.arm, g.angles);
    Evaluation e;
    if (std::holds_alternative<FitnessLocation>(task.location)) {
        e.fitness = fitness(task.arm, g) + sample_scalar(task.dist, rng);
        e.descriptor = descriptor(task.arm, g);
    }
    else if (std::holds_alternative<DescriptorLocation>(task.location)) {
        e.fitness = fitness(task.arm, g);
        const Vec2 d = descriptor(task.arm, g);
        const Vec2 eps = is_conditional(task.dist) ? sample_conditional(task.dist, g, rng) : sample_vector2(task.dist, rng);
        e.descriptor = clamp_unit({d[0] + eps[0], d[1] + eps[1]});
    }
    else {
        const std::size_t j = std::get<PhenotypeDim>(task.location).joint;
        std::vector<double> perturbed = g.angles;
        perturbed[j - 1] += sample_scalar(task.dist, rng); // not clamped to the angle bounds
        e.fitness = fitness(task.arm, perturbed);
        e.descriptor = descriptor(task.arm, perturbed);
    }
    return e;
}

/// Stream of sample s of the candidate identified by candidate_key.
inline RngStream sample_stream(std::uint64_t master_seed, std::uint64_t candidate_key, std::uint64_t s)
{
    return RngStream(master_seed, stream_key({candidate_key, s}));
}

/// n independent evaluations, sample s on sample_stream(master_seed, candidate_key, s).
inline std::vector<Evaluation> evaluate_samples(const TaskSpec& task, const Genotype& g, std::size_t n,
                                                std::uint64_t master_seed, std::uint64_t candidate_key)
{
    if (n == 0)
        throw UsageError("evaluate_samples: n must be >= 1");
    std::vector<Evaluation> out;
    out.reserve(n);
    for (std::size_t s = 0; s < n; ++s) {
        RngStream rng = sample_stream(master_seed, candidate_key, s);
        out.push_back(evaluate(task, g, rng));
    }
    return out;
}

struct ExpectedEvaluation {
    double fitness = 0.0;
    Vec2 descriptor{0.0, 0.0};
    Vec2 descriptor_variance{0.0, 0.0};
};

/// Expected fitness and descriptor of g. Closed form for the additive fitness/descriptor
/// families (ignoring the clamp), Monte-Carlo with n_oracle draws otherwise.
inline ExpectedEvaluation expected_evaluation(const TaskSpec& task, const Genotype& g, std::size_t n_oracle,
                                              std::uint64_t master_seed = 0)
{
    check_dimension(task.arm, g.angles);
    const bool additive = !std::holds_alternative<PhenotypeDim>(task.location) && !is_conditional(task.dist);
    if (additive) {
        const Moments m = *analytic_expectation(task.dist);
        ExpectedEvaluation out;
        out.fitness = fitness(task.arm, g);
        out.descriptor = descriptor(task.arm, g);
        if (std::holds_alternative<FitnessLocation>(task.location)) {
            out.fitness += m.mean[0];
        }
        else {
            out.descriptor = {out.descriptor[0] + m.mean[0], out.descriptor[1] + m.mean[1]};
            out.descriptor_variance = m.variance;
        }
        return out;
    }

    if (n_oracle == 0)
        throw UsageError("expected_evaluation: n_oracle must be >= 1");
    RngStream rng(master_seed, stream_key({stream_tag::oracle}));
    double f = 0.0;
    Vec2 mean{0.0, 0.0}, m2{0.0, 0.0};
    // Welford
    for (std::size_t i = 0; i < n_oracle; ++i) {
        const Evaluation e = evaluate(task, g, rng);
        const double k = static_cast<double>(i + 1);
        f += (e.fitness - f) / k;
        for (std::size_t c = 0; c < 2; ++c) {
            const double delta = e.descriptor[c] - mean[c];
            mean[c] += delta / k;
            m2[c] += delta * (e.descriptor[c] - mean[c]);
        }
    }
    const double n = static_cast<double>(n_oracle);
    return {f, mean, {m2[0] / n, m2[1] / n}};
}

} // namespace uqd
