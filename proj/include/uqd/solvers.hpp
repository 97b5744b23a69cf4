#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <uqd/archive.hpp>
#include <uqd/errors.hpp>
#include <uqd/metrics.hpp>
#include <uqd/parallel.hpp>
#include <uqd/rng.hpp>
#include <uqd/stats.hpp>
#include <uqd/tasks.hpp>

namespace uqd {

enum class Algo { Me, MeSampling, MeSamplingRepro };

inline std::string_view algo_name(Algo a)
{
    switch (a) {
    case Algo::Me:
        return "me";
    case Algo::MeSampling:
        return "me-sampling";
    case Algo::MeSamplingRepro:
        return "me-sampling-repro";
    }
    return "?";
}

inline Algo parse_algo(std::string_view name)
{
    for (Algo a : {Algo::Me, Algo::MeSampling, Algo::MeSamplingRepro})
        if (algo_name(a) == name)
            return a;
    throw ConfigError("unknown algorithm '" + std::string(name) + "'");
}

struct VariationParams {
    double sigma_iso = 0.01;
    double sigma_line = 0.2;
};

struct SolverConfig {
    Algo algo = Algo::Me;
    std::size_t n_samples = 30; // ignored by Algo::Me
    std::size_t batch_size = 64;
    std::size_t init_batch = 128;
    std::size_t eval_budget = 200'000;
    VariationParams variation;
    std::size_t metric_period = 10; // iterations between snapshots
    Aggregation aggregation = Aggregation::Mean;
    std::size_t rows = 100;
    std::size_t cols = 100;
    std::size_t workers = 1; // evaluation threads within one run; results do not depend on it

    std::size_t samples_per_candidate() const noexcept { return algo == Algo::Me ? 1 : n_samples; }

    const SolverConfig& validate() const
    {
        if (n_samples == 0 || batch_size == 0 || init_batch == 0 || metric_period == 0 || rows == 0 || cols == 0)
            throw ConfigError("solver: all sizes must be >= 1");
        if (eval_budget < init_batch * samples_per_candidate())
            throw ConfigError("solver: eval_budget " + std::to_string(eval_budget) + " is smaller than init_batch * n_samples = "
                              + std::to_string(init_batch * samples_per_candidate()));
        if (!(variation.sigma_iso >= 0.0) || !(variation.sigma_line >= 0.0))
            throw ConfigError("solver: variation sigmas must be >= 0");
        return *this;
    }
};

/// Iso+LineDD with explicit draws: child = p1 + sigma_iso * iso * range + sigma_line * line * (p2 - p1),
/// clipped to the arm's angle bounds.
inline Genotype iso_line_combine(const Genotype& p1, const Genotype& p2, const ArmConfig& arm, const VariationParams& v,
                                 std::span<const double> iso_draws, double line_draw)
{
    if (p1.size() != p2.size() || iso_draws.size() != p1.size())
        throw UsageError("iso_line_variation: parents and draws must have the same length");
    const double range = arm.angle_range();
    Genotype child;
    child.angles.resize(p1.size());
    for (std::size_t j = 0; j < p1.size(); ++j) {
        const double x = p1.angles[j] + v.sigma_iso * iso_draws[j] * range + v.sigma_line * line_draw * (p2.angles[j] - p1.angles[j]);
        child.angles[j] = std::clamp(x, arm.theta_min, arm.theta_max);
    }
    return child;
}

inline Genotype iso_line_variation(const Genotype& p1, const Genotype& p2, const ArmConfig& arm, const VariationParams& v,
                                   RngStream& rng)
{
    if (p1.size() != p2.size())
        throw UsageError("iso_line_variation: parents must have the same length");
    const double line = rng.normal();
    std::vector<double> iso(p1.size());
    for (auto& z : iso)
        z = rng.normal();
    return iso_line_combine(p1, p2, arm, v, iso, line);
}

/// ME and ME-sampling compete on mean fitness; the reproducibility variant on
/// minus the summed descriptor variance.
inline double competition_score(Algo algo, const SampleStats& stats) noexcept
{
    if (algo == Algo::MeSamplingRepro)
        return -(stats.descriptor_variance[0] + stats.descriptor_variance[1]);
    return stats.fitness;
}

struct TraceEntry {
    std::size_t evaluations = 0;
    std::size_t iteration = 0;
    MetricsRecord metrics;
};

struct RunResult {
    GridArchive archive;
    std::vector<TraceEntry> trace;
    std::size_t evaluations = 0;
    std::size_t candidates = 0;
};

/// Snapshot hook that leaves the corrected-side metrics empty.
struct NoCorrection {
    void operator()(const GridArchive&, MetricsRecord&, bool /*final*/) const noexcept {}
};

inline Genotype random_genotype(const ArmConfig& arm, RngStream& rng)
{
    Genotype g;
    g.angles.resize(arm.n_joints);
    for (auto& a : g.angles)
        a = rng.uniform(arm.theta_min, arm.theta_max);
    return g;
}

/// Generate - evaluate - insert loop shared by the three baselines.
///
/// Every random decision reads a stream keyed by (iteration, candidate index), so the
/// result does not depend on cfg.workers. Insertion happens serially in candidate order.
/// `on_snapshot(archive, record, final)` may complete each record (e.g. with a corrected pass).
template <typename SnapshotFn = NoCorrection>
RunResult run(const TaskSpec& task, const SolverConfig& cfg, std::uint64_t master_seed, SnapshotFn&& on_snapshot = {})
{
    cfg.validate();
    const std::size_t n = cfg.samples_per_candidate();
    RunResult result{GridArchive(cfg.rows, cfg.cols, task.qd_offset()), {}, 0, 0};
    GridArchive& archive = result.archive;

    struct Candidate {
        Genotype genotype;
        SampleStats stats;
    };

    const auto evaluate_batch = [&](std::size_t iteration, std::size_t count) {
        std::vector<Candidate> batch(count);
        parallel_for(count, cfg.workers, [&](std::size_t c) {
            Genotype g;
            if (iteration == 0) {
                RngStream rng(master_seed, stream_key({stream_tag::genesis, c}));
                g = random_genotype(task.arm, rng);
            }
            else {
                RngStream sel(master_seed, stream_key({stream_tag::select, iteration, c}));
                const Elite& p1 = archive.sample_uniform_elite(sel);
                const Elite& p2 = archive.sample_uniform_elite(sel);
                RngStream var(master_seed, stream_key({stream_tag::vary, iteration, c}));
                g = iso_line_variation(p1.genotype, p2.genotype, task.arm, cfg.variation, var);
            }
            const auto samples = evaluate_samples(task, g, n, master_seed, stream_key({stream_tag::evaluate, iteration, c}));
            batch[c] = {std::move(g), aggregate(samples, cfg.aggregation)};
        });
        for (auto& cand : batch) {
            const double score = competition_score(cfg.algo, cand.stats);
            archive.try_insert(Elite{std::move(cand.genotype), score, cand.stats.descriptor, n,
                                     EliteStats{cand.stats.fitness, cand.stats.descriptor_variance, std::nullopt}});
        }
        result.evaluations += count * n;
        result.candidates += count;
    };

    const auto snapshot = [&](std::size_t iteration, bool final) {
        MetricsRecord rec = illusory_metrics(archive, result.evaluations, iteration);
        on_snapshot(static_cast<const GridArchive&>(archive), rec, final);
        result.trace.push_back({result.evaluations, iteration, rec});
    };

    evaluate_batch(0, cfg.init_batch);
    std::size_t iteration = 0;
    bool fresh = false;
    while (result.evaluations + cfg.batch_size * n <= cfg.eval_budget) {
        ++iteration;
        evaluate_batch(iteration, cfg.batch_size);
        fresh = false;
        if (iteration % cfg.metric_period == 0) {
            const bool last = result.evaluations + cfg.batch_size * n > cfg.eval_budget;
            snapshot(iteration, last);
            fresh = last;
        }
    }
    if (!fresh)
        snapshot(iteration, true);
    return result;
}

} // namespace uqd
