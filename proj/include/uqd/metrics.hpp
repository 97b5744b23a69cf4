#pragma once

#include <algorithm>
#include <cstdint>
#include <ostream>
#include <utility>
#include <vector>

#include <uqd/archive.hpp>
#include <uqd/errors.hpp>
#include <uqd/parallel.hpp>
#include <uqd/rng.hpp>
#include <uqd/stats.hpp>
#include <uqd/tasks.hpp>

namespace uqd {

/// Variance of a uniform descriptor over [0,1].
inline constexpr double default_sigma2_ref = 1.0 / 12.0;

/// Archive rebuilt from reevaluation statistics. Every elite carries aux with its
/// descriptor variance and the source cell in the illusory archive.
struct CorrectedArchive {
    GridArchive archive;
    std::size_t n_reeval = 0;
};

/// Reevaluates every illusory elite n_reeval times and re-inserts it at its mean
/// descriptor, competing on mean fitness. Elites are processed in sorted source-cell order.
/// Streams: (master_seed, {reevaluate, source_cell, sample}); they never overlap optimisation streams.
inline CorrectedArchive build_corrected(const GridArchive& illusory, const TaskSpec& task, std::size_t n_reeval,
                                       std::uint64_t master_seed, std::size_t workers = 1)
{
    if (n_reeval < 2)
        throw ConfigError("build_corrected: n_reeval must be >= 2");
    CorrectedArchive out{GridArchive(illusory.rows(), illusory.cols(), illusory.offset()), n_reeval};
    const auto sources = illusory.sorted();
    std::vector<Elite> rebuilt(sources.size());
    parallel_for(sources.size(), workers, [&](std::size_t i) {
        const auto& [cell, elite] = sources[i];
        const std::size_t src = illusory.flat(cell);
        const auto samples =
            evaluate_samples(task, elite->genotype, n_reeval, master_seed, stream_key({stream_tag::reevaluate, src}));
        const SampleStats s = aggregate(samples);
        rebuilt[i] = Elite{elite->genotype, s.fitness, s.descriptor, n_reeval,
                           EliteStats{s.fitness, s.descriptor_variance, src}};
    });
    for (auto& e : rebuilt)
        out.archive.try_insert(std::move(e));
    return out;
}

struct LossMetrics {
    double qd_score = 0.0; // percent
    double coverage = 0.0; // percent
};

/// Relative drop (percent) from illusory to corrected; 0 when the illusory value is 0.
inline double relative_loss(double illusory_value, double corrected_value) noexcept
{
    if (illusory_value == 0.0)
        return 0.0;
    return 100.0 * (illusory_value - corrected_value) / illusory_value;
}

inline LossMetrics loss_metrics(const GridArchive& illusory, const CorrectedArchive& corrected)
{
    return {relative_loss(illusory.task_qd_score(), corrected.archive.qd_score()),
            relative_loss(illusory.coverage(), corrected.archive.coverage())};
}

inline double normalised_variance(const Vec2& per_dim_variance, double sigma2_ref = default_sigma2_ref)
{
    if (!(sigma2_ref > 0.0))
        throw ConfigError("normalised_variance: sigma2_ref must be > 0");
    const double mean = (per_dim_variance[0] + per_dim_variance[1]) / 2.0;
    return std::clamp(mean / sigma2_ref, 0.0, 1.0);
}

namespace detail {
    inline Vec2 elite_variance(const Elite& e)
    {
        if (!e.aux)
            throw UsageError("reproducibility: corrected elite lacks variance statistics");
        return e.aux->descriptor_variance;
    }
} // namespace detail

/// Sum over the corrected archive of (1 - normalised variance).
inline double reproducibility_score(const CorrectedArchive& corrected, double sigma2_ref = default_sigma2_ref)
{
    double s = 0.0;
    for (const auto& [cell, e] : corrected.archive.sorted())
        s += 1.0 - normalised_variance(detail::elite_variance(*e), sigma2_ref);
    return s;
}

/// Per-cell (1 - normalised variance), sorted by cell.
inline std::vector<std::pair<CellIndex, double>> reproducibility_archive(const CorrectedArchive& corrected,
                                                                         double sigma2_ref = default_sigma2_ref)
{
    std::vector<std::pair<CellIndex, double>> out;
    for (const auto& [cell, e] : corrected.archive.sorted())
        out.emplace_back(cell, 1.0 - normalised_variance(detail::elite_variance(*e), sigma2_ref));
    return out;
}

inline void write_reproducibility_csv(std::ostream& os, const std::vector<std::pair<CellIndex, double>>& cells)
{
    os << "cell_row,cell_col,reproducibility\n";
    for (const auto& [c, v] : cells)
        os << c.row << ',' << c.col << ',' << csv::real(v) << '\n';
}

struct MetricsRecord {
    std::size_t evaluations = 0;
    std::size_t iteration = 0;
    double illusory_qd_score = 0.0;
    double corrected_qd_score = 0.0;
    double illusory_coverage = 0.0;
    double corrected_coverage = 0.0;
    double loss_qd_score = 0.0;
    double loss_coverage = 0.0;
    double reproducibility_score = 0.0;
    bool corrected = false; // corrected-side fields are meaningful only when set
};

inline MetricsRecord illusory_metrics(const GridArchive& illusory, std::size_t evaluations, std::size_t iteration)
{
    MetricsRecord r;
    r.evaluations = evaluations;
    r.iteration = iteration;
    r.illusory_qd_score = illusory.task_qd_score();
    r.illusory_coverage = illusory.coverage();
    return r;
}

/// Fills the corrected-side fields of r from a corrected pass over illusory.
inline void fill_corrected(MetricsRecord& r, const GridArchive& illusory, const CorrectedArchive& corrected,
                           double sigma2_ref = default_sigma2_ref)
{
    r.corrected_qd_score = corrected.archive.qd_score();
    r.corrected_coverage = corrected.archive.coverage();
    const LossMetrics loss = loss_metrics(illusory, corrected);
    r.loss_qd_score = loss.qd_score;
    r.loss_coverage = loss.coverage;
    r.reproducibility_score = reproducibility_score(corrected, sigma2_ref);
    r.corrected = true;
}

} // namespace uqd
