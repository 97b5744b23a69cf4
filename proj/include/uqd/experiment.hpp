#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include <uqd/archive.hpp>
#include <uqd/csv.hpp>
#include <uqd/errors.hpp>
#include <uqd/metrics.hpp>
#include <uqd/parallel.hpp>
#include <uqd/solvers.hpp>
#include <uqd/tasks.hpp>

namespace uqd {

inline constexpr std::string_view version = "0.1.0";

struct TaskEntry {
    TaskId id = TaskId::NoiseFree;
    std::map<std::string, double> overrides;

    /// Directory-safe label; the bare task name when no override is given.
    std::string label() const
    {
        std::string s(task_name(id));
        for (const auto& [k, v] : overrides)
            s += "@" + k + "=" + csv::shortest(v);
        return s;
    }
};

struct ExperimentConfig {
    std::vector<TaskEntry> tasks;
    std::vector<Algo> algos;
    std::size_t replications = 10;
    std::uint64_t master_seed = 0;
    SolverConfig solver;
    ArmConfig arm;
    std::size_t n_reeval = 50;
    double sigma2_ref = default_sigma2_ref;
    bool intermediate_corrected = false;
    std::size_t workers = 1; // concurrent runs
    std::filesystem::path output_dir = "uqd_out";
};

// ---------------------------------------------------------------------------
// config parsing

namespace detail {
    using json = nlohmann::json;

    inline void reject_unknown(const json& obj, std::string_view where, std::initializer_list<std::string_view> known)
    {
        for (const auto& [key, _] : obj.items()) {
            bool ok = false;
            for (auto k : known)
                ok = ok || key == k;
            if (!ok)
                throw ConfigError("config: unknown key '" + key + "' in " + std::string(where));
        }
    }

    template <typename T>
    T get_or(const json& obj, std::string_view key, T fallback)
    {
        const std::string k(key);
        if (!obj.contains(k))
            return fallback;
        try {
            return obj.at(k).get<T>();
        }
        catch (const json::exception&) {
            throw ConfigError("config: key '" + k + "' has the wrong type");
        }
    }

    inline std::size_t get_count(const json& obj, std::string_view key, std::size_t fallback)
    {
        const std::string k(key);
        if (!obj.contains(k))
            return fallback;
        const auto& v = obj.at(k);
        if (!v.is_number_integer() || (!v.is_number_unsigned() && v.get<std::int64_t>() < 0))
            throw ConfigError("config: '" + k + "' must be a non-negative integer");
        return v.get<std::size_t>();
    }

    inline std::uint64_t fnv1a(std::string_view bytes) noexcept
    {
        std::uint64_t h = 0xCBF29CE484222325ULL;
        for (unsigned char c : bytes) {
            h ^= c;
            h *= 0x100000001B3ULL;
        }
        return h;
    }

    inline std::string hex64(std::uint64_t v)
    {
        std::ostringstream os;
        os << std::hex;
        os.width(16);
        os.fill('0');
        os << v;
        return os.str();
    }
} // namespace detail

/// Parses and validates a JSON experiment document. Unknown keys are rejected.
inline ExperimentConfig parse_config_document(const nlohmann::json& doc)
{
    using detail::get_count;
    using detail::get_or;
    if (!doc.is_object())
        throw ConfigError("config: document must be an object");
    detail::reject_unknown(doc, "config",
                           {"tasks", "algos", "replications", "master_seed", "solver", "arm", "n_reeval", "sigma2_ref",
                            "intermediate_corrected", "workers", "output_dir"});
    if (!doc.contains("tasks"))
        throw ConfigError("config: missing required key 'tasks'");
    if (!doc.contains("algos"))
        throw ConfigError("config: missing required key 'algos'");

    ExperimentConfig cfg;

    if (doc.contains("arm")) {
        const auto& a = doc.at("arm");
        detail::reject_unknown(a, "arm", {"n_joints", "link_lengths", "theta_min", "theta_max"});
        cfg.arm.n_joints = get_count(a, "n_joints", cfg.arm.n_joints);
        cfg.arm.link_lengths = get_or(a, "link_lengths", std::vector<double>{});
        cfg.arm.theta_min = get_or(a, "theta_min", cfg.arm.theta_min);
        cfg.arm.theta_max = get_or(a, "theta_max", cfg.arm.theta_max);
    }
    cfg.arm.validate();

    const auto& tasks = doc.at("tasks");
    if (!tasks.is_array() || tasks.empty())
        throw ConfigError("config: 'tasks' must be a non-empty array");
    for (const auto& t : tasks) {
        TaskEntry entry;
        if (t.is_string()) {
            entry.id = parse_task_id(t.get<std::string>());
        }
        else if (t.is_object()) {
            detail::reject_unknown(t, "task entry", {"id", "params"});
            if (!t.contains("id") || !t.at("id").is_string())
                throw ConfigError("config: task entry needs a string 'id'");
            entry.id = parse_task_id(t.at("id").get<std::string>());
            if (t.contains("params")) {
                if (!t.at("params").is_object())
                    throw ConfigError("config: task 'params' must be an object");
                for (const auto& [k, v] : t.at("params").items()) {
                    if (!v.is_number())
                        throw ConfigError("config: task parameter '" + k + "' must be a number");
                    entry.overrides[k] = v.get<double>();
                }
            }
        }
        else {
            throw ConfigError("config: task entries must be strings or objects");
        }
        make_task(entry.id, entry.overrides, cfg.arm); // constraint check
        cfg.tasks.push_back(std::move(entry));
    }

    const auto& algos = doc.at("algos");
    if (!algos.is_array() || algos.empty())
        throw ConfigError("config: 'algos' must be a non-empty array");
    for (const auto& a : algos) {
        if (!a.is_string())
            throw ConfigError("config: algorithm ids must be strings");
        cfg.algos.push_back(parse_algo(a.get<std::string>()));
    }

    cfg.replications = get_count(doc, "replications", cfg.replications);
    if (cfg.replications < 1)
        throw ConfigError("config: replications must be >= 1");
    if (doc.contains("master_seed")) {
        const auto& s = doc.at("master_seed");
        if (!s.is_number_integer() || (!s.is_number_unsigned() && s.get<std::int64_t>() < 0))
            throw ConfigError("config: master_seed must be an unsigned 64-bit integer");
        cfg.master_seed = s.get<std::uint64_t>();
    }
    cfg.n_reeval = get_count(doc, "n_reeval", cfg.n_reeval);
    if (cfg.n_reeval < 2)
        throw ConfigError("config: n_reeval must be >= 2");
    cfg.sigma2_ref = get_or(doc, "sigma2_ref", cfg.sigma2_ref);
    if (!(cfg.sigma2_ref > 0.0))
        throw ConfigError("config: sigma2_ref must be > 0");
    cfg.intermediate_corrected = get_or(doc, "intermediate_corrected", cfg.intermediate_corrected);
    cfg.workers = get_count(doc, "workers", cfg.workers);
    if (cfg.workers < 1)
        throw ConfigError("config: workers must be >= 1");
    cfg.output_dir = get_or(doc, "output_dir", cfg.output_dir.string());

    if (doc.contains("solver")) {
        const auto& s = doc.at("solver");
        detail::reject_unknown(s, "solver",
                               {"n_samples", "batch_size", "init_batch", "eval_budget", "sigma_iso", "sigma_line",
                                "metric_period", "aggregation", "rows", "cols", "workers"});
        auto& sc = cfg.solver;
        sc.n_samples = get_count(s, "n_samples", sc.n_samples);
        sc.batch_size = get_count(s, "batch_size", sc.batch_size);
        sc.init_batch = get_count(s, "init_batch", sc.init_batch);
        sc.eval_budget = get_count(s, "eval_budget", sc.eval_budget);
        sc.variation.sigma_iso = get_or(s, "sigma_iso", sc.variation.sigma_iso);
        sc.variation.sigma_line = get_or(s, "sigma_line", sc.variation.sigma_line);
        sc.metric_period = get_count(s, "metric_period", sc.metric_period);
        sc.rows = get_count(s, "rows", sc.rows);
        sc.cols = get_count(s, "cols", sc.cols);
        sc.workers = get_count(s, "workers", sc.workers);
        const auto agg = get_or(s, "aggregation", std::string("mean"));
        if (agg == "mean")
            sc.aggregation = Aggregation::Mean;
        else if (agg == "median")
            sc.aggregation = Aggregation::Median;
        else
            throw ConfigError("config: solver.aggregation must be 'mean' or 'median'");
    }
    for (Algo a : cfg.algos) {
        SolverConfig check = cfg.solver;
        check.algo = a;
        check.validate();
    }
    return cfg;
}

inline ExperimentConfig parse_config(std::string_view text)
{
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    }
    catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(std::string("config: malformed JSON: ") + e.what());
    }
    return parse_config_document(doc);
}

/// Canonical JSON of everything that influences results (worker counts and paths excluded).
inline nlohmann::json canonical_config(const ExperimentConfig& cfg)
{
    nlohmann::json j;
    nlohmann::json tasks = nlohmann::json::array();
    for (const auto& t : cfg.tasks) {
        nlohmann::json params = nlohmann::json::object();
        for (const auto& [k, v] : make_task(t.id, t.overrides, cfg.arm).params)
            params[k] = v;
        tasks.push_back({{"id", std::string(task_name(t.id))}, {"params", params}});
    }
    j["tasks"] = tasks;
    nlohmann::json algos = nlohmann::json::array();
    for (Algo a : cfg.algos)
        algos.push_back(std::string(algo_name(a)));
    j["algos"] = algos;
    j["replications"] = cfg.replications;
    j["master_seed"] = cfg.master_seed;
    j["n_reeval"] = cfg.n_reeval;
    j["sigma2_ref"] = cfg.sigma2_ref;
    j["intermediate_corrected"] = cfg.intermediate_corrected;
    const auto& s = cfg.solver;
    j["solver"] = {{"n_samples", s.n_samples},
                   {"batch_size", s.batch_size},
                   {"init_batch", s.init_batch},
                   {"eval_budget", s.eval_budget},
                   {"sigma_iso", s.variation.sigma_iso},
                   {"sigma_line", s.variation.sigma_line},
                   {"metric_period", s.metric_period},
                   {"aggregation", s.aggregation == Aggregation::Mean ? "mean" : "median"},
                   {"rows", s.rows},
                   {"cols", s.cols}};
    j["arm"] = {{"n_joints", cfg.arm.n_joints},
                {"link_lengths", cfg.arm.link_lengths},
                {"theta_min", cfg.arm.theta_min},
                {"theta_max", cfg.arm.theta_max}};
    return j;
}

// ---------------------------------------------------------------------------
// seeds

inline std::uint64_t replication_seed(std::uint64_t master_seed, std::size_t replication)
{
    return stream_key({master_seed, stream_tag::replication, replication});
}

/// Seed of one (task, algo, replication) run; distinct runs never share streams.
inline std::uint64_t run_seed(std::uint64_t master_seed, const TaskEntry& task, Algo algo, std::size_t replication)
{
    return stream_key({replication_seed(master_seed, replication), detail::fnv1a(task.label()),
                       static_cast<std::uint64_t>(algo)});
}

inline std::uint64_t reevaluation_seed(std::uint64_t run_seed, std::size_t evaluations)
{
    return stream_key({run_seed, stream_tag::reevaluate, evaluations});
}

// ---------------------------------------------------------------------------
// metrics / summary files

inline constexpr std::string_view metrics_header =
    "task,algo,replication,evaluations,illusory_qd_score,corrected_qd_score,illusory_coverage,corrected_coverage,"
    "loss_qd_score,loss_coverage,reproducibility_score";

inline constexpr std::array<std::string_view, 7> metric_columns = {
    "illusory_qd_score", "corrected_qd_score", "illusory_coverage", "corrected_coverage",
    "loss_qd_score",     "loss_coverage",      "reproducibility_score"};

struct MetricsRow {
    std::string task;
    std::string algo;
    std::size_t replication = 0;
    MetricsRecord record;
};

/// Corrected-side fields are left empty for snapshots without a corrected pass.
inline std::string format_metrics_row(const MetricsRow& r)
{
    const auto& m = r.record;
    const auto corr = [&](double v) { return m.corrected ? csv::real(v) : std::string(); };
    std::ostringstream os;
    os << r.task << ',' << r.algo << ',' << r.replication << ',' << m.evaluations << ',' << csv::real(m.illusory_qd_score)
       << ',' << corr(m.corrected_qd_score) << ',' << csv::real(m.illusory_coverage) << ',' << corr(m.corrected_coverage)
       << ',' << corr(m.loss_qd_score) << ',' << corr(m.loss_coverage) << ',' << corr(m.reproducibility_score);
    return os.str();
}

inline std::vector<MetricsRow> read_metrics_csv(std::istream& is)
{
    std::string line;
    if (!std::getline(is, line) || csv::trim_cr(line) != metrics_header)
        throw ConfigError("metrics csv: header does not match the metrics schema");
    std::vector<MetricsRow> rows;
    while (std::getline(is, line)) {
        const auto s = csv::trim_cr(line);
        if (s.empty())
            continue;
        const auto f = csv::split(s);
        if (f.size() != 11)
            throw ConfigError("metrics csv: expected 11 fields, got " + std::to_string(f.size()));
        MetricsRow r;
        r.task = std::string(f[0]);
        r.algo = std::string(f[1]);
        r.replication = csv::parse_uint(f[2], "replication");
        auto& m = r.record;
        m.evaluations = csv::parse_uint(f[3], "evaluations");
        m.illusory_qd_score = csv::parse_real(f[4], metric_columns[0]);
        m.illusory_coverage = csv::parse_real(f[6], metric_columns[2]);
        m.corrected = !f[5].empty();
        if (m.corrected) {
            m.corrected_qd_score = csv::parse_real(f[5], metric_columns[1]);
            m.corrected_coverage = csv::parse_real(f[7], metric_columns[3]);
            m.loss_qd_score = csv::parse_real(f[8], metric_columns[4]);
            m.loss_coverage = csv::parse_real(f[9], metric_columns[5]);
            m.reproducibility_score = csv::parse_real(f[10], metric_columns[6]);
        }
        else {
            for (std::size_t i = 7; i <= 10; ++i)
                if (!f[i].empty())
                    throw ConfigError("metrics csv: " + std::string(metric_columns[i - 4]) + " set without corrected_qd_score");
        }
        rows.push_back(std::move(r));
    }
    return rows;
}

inline double metric_value(const MetricsRecord& m, std::size_t column)
{
    switch (column) {
    case 0: return m.illusory_qd_score;
    case 1: return m.corrected_qd_score;
    case 2: return m.illusory_coverage;
    case 3: return m.corrected_coverage;
    case 4: return m.loss_qd_score;
    case 5: return m.loss_coverage;
    case 6: return m.reproducibility_score;
    }
    throw UsageError("metric_value: bad column");
}

/// Percentile with linear interpolation between order statistics (p in [0,1]).
inline double quantile(std::vector<double> values, double p)
{
    if (values.empty())
        throw UsageError("quantile: no values");
    std::sort(values.begin(), values.end());
    const double pos = p * static_cast<double>(values.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, values.size() - 1);
    return values[lo] + (pos - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

struct SummaryRow {
    std::string task;
    std::string algo;
    std::string metric;
    std::size_t n = 0;
    double median = 0.0;
    double q25 = 0.0;
    double q75 = 0.0;
};

/// Median and quartiles per (task, algo, metric) over the final snapshot of each replication.
/// Corrected-side metrics only count final snapshots that had a corrected pass.
/// Groups are emitted in first-appearance order.
inline std::vector<SummaryRow> summarize(const std::vector<MetricsRow>& rows)
{
    // final snapshot = largest evaluation count per (task, algo, replication)
    std::vector<std::pair<std::string, std::string>> group_order;
    std::map<std::pair<std::string, std::string>, std::map<std::size_t, const MetricsRecord*>> finals;
    for (const auto& r : rows) {
        const auto key = std::make_pair(r.task, r.algo);
        if (!finals.contains(key))
            group_order.push_back(key);
        auto& slot = finals[key][r.replication];
        if (!slot || r.record.evaluations >= slot->evaluations)
            slot = &r.record;
    }
    std::vector<SummaryRow> out;
    for (const auto& key : group_order) {
        const auto& reps = finals.at(key);
        for (std::size_t c = 0; c < metric_columns.size(); ++c) {
            const bool corrected_side = c != 0 && c != 2;
            std::vector<double> v;
            for (const auto& [rep, rec] : reps)
                if (rec->corrected || !corrected_side)
                    v.push_back(metric_value(*rec, c));
            if (v.empty())
                continue;
            out.push_back({key.first, key.second, std::string(metric_columns[c]), v.size(), quantile(v, 0.5),
                           quantile(v, 0.25), quantile(v, 0.75)});
        }
    }
    return out;
}

inline void write_summary_csv(std::ostream& os, const std::vector<SummaryRow>& rows)
{
    os << "task,algo,metric,n,median,q25,q75\n";
    for (const auto& r : rows)
        os << r.task << ',' << r.algo << ',' << r.metric << ',' << r.n << ',' << csv::real(r.median) << ','
           << csv::real(r.q25) << ',' << csv::real(r.q75) << '\n';
}

// ---------------------------------------------------------------------------
// running

namespace detail {
    /// Writes through a temporary file and renames, so readers never see partial files.
    inline void write_file_atomic(const std::filesystem::path& path, const std::string& content)
    {
        std::filesystem::create_directories(path.parent_path());
        auto tmp = path;
        tmp += ".tmp";
        {
            std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
            if (!f)
                throw std::runtime_error("cannot open " + tmp.string() + " for writing");
            f << content;
            if (!f.flush())
                throw std::runtime_error("write failed: " + tmp.string());
        }
        std::filesystem::rename(tmp, path);
    }

    inline std::string read_file(const std::filesystem::path& path)
    {
        std::ifstream f(path, std::ios::binary);
        if (!f)
            throw ConfigError("cannot read " + path.string());
        std::ostringstream os;
        os << f.rdbuf();
        return os.str();
    }
} // namespace detail

struct RunOutcome {
    std::string task;
    std::string algo;
    std::size_t replication = 0;
    std::uint64_t seed = 0;
    bool complete = false;
    std::string error;
    std::vector<MetricsRow> rows;
    std::vector<std::filesystem::path> files; // relative to the output directory
    std::size_t evaluations = 0;
};

/// Runs one (task, algo, replication) and writes its archives under `out`.
inline RunOutcome run_single(const ExperimentConfig& cfg, const TaskEntry& entry, Algo algo, std::size_t rep,
                             const std::filesystem::path& out)
{
    RunOutcome o;
    o.task = entry.label();
    o.algo = std::string(algo_name(algo));
    o.replication = rep;
    o.seed = run_seed(cfg.master_seed, entry, algo, rep);
    const TaskSpec task = make_task(entry.id, entry.overrides, cfg.arm);
    SolverConfig sc = cfg.solver;
    sc.algo = algo;

    std::optional<CorrectedArchive> final_corrected;
    const auto hook = [&](const GridArchive& illusory, MetricsRecord& rec, bool final) {
        if (!final && !cfg.intermediate_corrected)
            return;
        CorrectedArchive corrected =
            build_corrected(illusory, task, cfg.n_reeval, reevaluation_seed(o.seed, rec.evaluations), sc.workers);
        fill_corrected(rec, illusory, corrected, cfg.sigma2_ref);
        if (final)
            final_corrected = std::move(corrected);
    };
    RunResult result = run(task, sc, o.seed, hook);
    o.evaluations = result.evaluations;
    for (const auto& t : result.trace)
        o.rows.push_back({o.task, o.algo, rep, t.metrics});

    const std::filesystem::path dir = std::filesystem::path(o.task) / o.algo / ("rep" + std::to_string(rep));
    const auto emit = [&](const char* name, const std::string& content) {
        detail::write_file_atomic(out / dir / name, content);
        o.files.push_back(dir / name);
    };
    std::ostringstream illusory_csv, corrected_csv, repro_csv;
    write_archive_csv(illusory_csv, result.archive, task.arm.n_joints);
    write_archive_csv(corrected_csv, final_corrected->archive, task.arm.n_joints);
    write_reproducibility_csv(repro_csv, reproducibility_archive(*final_corrected, cfg.sigma2_ref));
    emit("archive_illusory.csv", illusory_csv.str());
    emit("archive_corrected.csv", corrected_csv.str());
    emit("archive_repro.csv", repro_csv.str());
    o.complete = true;
    return o;
}

struct ExperimentResult {
    std::vector<RunOutcome> runs;
    std::vector<SummaryRow> summary;
    bool ok = true;
};

/// Runs the full task x algo x replication matrix, writing per-run archives, metrics.csv,
/// summary.csv and manifest.json under cfg.output_dir. Output bytes depend only on the
/// canonical config, not on cfg.workers.
inline ExperimentResult run_experiment(const ExperimentConfig& cfg, std::ostream* log = nullptr)
{
    namespace fs = std::filesystem;
    const fs::path out = cfg.output_dir;
    fs::create_directories(out);

    struct Job {
        const TaskEntry* task;
        Algo algo;
        std::size_t rep;
    };
    std::vector<Job> jobs;
    for (const auto& t : cfg.tasks)
        for (Algo a : cfg.algos)
            for (std::size_t r = 0; r < cfg.replications; ++r)
                jobs.push_back({&t, a, r});

    ExperimentResult res;
    res.runs.resize(jobs.size());
    std::mutex log_mutex;
    parallel_for(jobs.size(), cfg.workers, [&](std::size_t i) {
        const Job& j = jobs[i];
        try {
            res.runs[i] = run_single(cfg, *j.task, j.algo, j.rep, out);
        }
        catch (const std::exception& e) {
            RunOutcome& o = res.runs[i];
            o.task = j.task->label();
            o.algo = std::string(algo_name(j.algo));
            o.replication = j.rep;
            o.seed = run_seed(cfg.master_seed, *j.task, j.algo, j.rep);
            o.complete = false;
            o.error = e.what();
        }
        if (log) {
            std::lock_guard lock(log_mutex);
            const auto& o = res.runs[i];
            *log << "[" << (i + 1) << "/" << jobs.size() << "] " << o.task << " " << o.algo << " rep" << o.replication
                 << (o.complete ? " done" : " FAILED: " + o.error) << "\n";
        }
    });

    std::vector<MetricsRow> all_rows;
    for (const auto& o : res.runs) {
        res.ok = res.ok && o.complete;
        all_rows.insert(all_rows.end(), o.rows.begin(), o.rows.end());
    }

    std::vector<fs::path> files;
    std::map<std::string, std::string> hashes;
    const auto emit = [&](const fs::path& rel, const std::string& content) {
        detail::write_file_atomic(out / rel, content);
        files.push_back(rel);
    };

    std::string metrics = std::string(metrics_header) + "\n";
    for (const auto& r : all_rows)
        metrics += format_metrics_row(r) + "\n";
    emit("metrics.csv", metrics);

    res.summary = summarize(all_rows);
    std::ostringstream summary;
    write_summary_csv(summary, res.summary);
    emit("summary.csv", summary.str());

    const nlohmann::json canon = canonical_config(cfg);
    nlohmann::json manifest;
    manifest["version"] = std::string(version);
    manifest["config"] = canon;
    manifest["config_hash"] = detail::hex64(detail::fnv1a(canon.dump()));
    manifest["hash_algorithm"] = "fnv1a64";
    manifest["complete"] = res.ok;
    nlohmann::json seeds = nlohmann::json::array();
    for (std::size_t r = 0; r < cfg.replications; ++r)
        seeds.push_back({{"replication", r}, {"seed", replication_seed(cfg.master_seed, r)}});
    manifest["replication_seeds"] = seeds;
    nlohmann::json runs = nlohmann::json::array();
    for (const auto& o : res.runs) {
        nlohmann::json rj = {{"task", o.task},           {"algo", o.algo},
                             {"replication", o.replication}, {"seed", o.seed},
                             {"evaluations", o.evaluations}, {"status", o.complete ? "complete" : "incomplete"}};
        if (!o.complete)
            rj["error"] = o.error;
        runs.push_back(rj);
        files.insert(files.end(), o.files.begin(), o.files.end());
    }
    manifest["runs"] = runs;
    nlohmann::json file_list = nlohmann::json::array();
    for (const auto& f : files)
        file_list.push_back({{"path", f.generic_string()}, {"fnv1a64", detail::hex64(detail::fnv1a(detail::read_file(out / f)))}});
    manifest["files"] = file_list;
    detail::write_file_atomic(out / "manifest.json", manifest.dump(2) + "\n");
    return res;
}

} // namespace uqd
