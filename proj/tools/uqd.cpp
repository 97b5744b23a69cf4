// uqd: command-line front end for the uncertain quality-diversity benchmark.
//
//   uqd list-tasks
//   uqd run --config <file> [--out <dir>] [--seed <u64>] [--workers <n>]
//   uqd correct --archive <csv> --task <id> --reevals <n> [--param k=v]... [--out <dir>]
//   uqd summarize --in <dir>

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <uqd/uqd.hpp>

namespace {

int list_tasks()
{
    for (const auto& t : uqd::task_catalog()) {
        std::cout << std::left << std::setw(30) << t.name << std::setw(24) << t.category << t.summary << "\n";
        for (const auto& p : t.params)
            std::cout << "    " << std::setw(8) << p.name << "default " << std::setw(8) << p.default_value << "  " << p.constraint
                      << "\n";
    }
    return 0;
}

std::map<std::string, double> parse_params(const std::vector<std::string>& kvs)
{
    std::map<std::string, double> out;
    for (const auto& kv : kvs) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos)
            throw uqd::ConfigError("--param expects key=value, got '" + kv + "'");
        out[kv.substr(0, eq)] = uqd::csv::parse_real(kv.substr(eq + 1), kv.substr(0, eq));
    }
    return out;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Uncertain quality-diversity benchmark on the redundant arm"};
    app.require_subcommand(1);

    auto* list_cmd = app.add_subcommand("list-tasks", "List the task catalog with parameter constraints");

    auto* run_cmd = app.add_subcommand("run", "Run an experiment described by a JSON config");
    std::string config_path;
    std::string out_dir;
    std::uint64_t seed = 0;
    std::size_t workers = 0;
    run_cmd->add_option("--config", config_path, "Experiment config (JSON)")->required()->check(CLI::ExistingFile);
    auto* out_opt = run_cmd->add_option("--out", out_dir, "Output directory (overrides output_dir)");
    auto* seed_opt = run_cmd->add_option("--seed", seed, "Master seed (overrides master_seed)");
    auto* workers_opt = run_cmd->add_option("--workers", workers, "Concurrent runs (overrides workers)")->check(CLI::PositiveNumber);

    auto* correct_cmd = app.add_subcommand("correct", "Build the corrected archive of an archive CSV");
    std::string archive_path;
    std::string task_id;
    std::size_t reevals = 50;
    std::vector<std::string> params;
    std::size_t rows = 100, cols = 100;
    std::uint64_t correct_seed = 0;
    std::string correct_out;
    correct_cmd->add_option("--archive", archive_path, "Illusory archive CSV")->required()->check(CLI::ExistingFile);
    correct_cmd->add_option("--task", task_id, "Task id (see list-tasks)")->required();
    correct_cmd->add_option("--reevals", reevals, "Reevaluations per elite")->required();
    correct_cmd->add_option("--param", params, "Task parameter override key=value (repeatable)");
    correct_cmd->add_option("--rows", rows, "Grid rows")->capture_default_str();
    correct_cmd->add_option("--cols", cols, "Grid columns")->capture_default_str();
    correct_cmd->add_option("--seed", correct_seed, "Reevaluation seed")->capture_default_str();
    correct_cmd->add_option("--out", correct_out,
                            "Directory for archive_corrected.csv and archive_repro.csv (default: corrected CSV on stdout)");

    auto* summarize_cmd = app.add_subcommand("summarize", "Write summary.csv (median, quartiles) from metrics.csv");
    std::string summarize_in;
    summarize_cmd->add_option("--in", summarize_in, "Experiment output directory")->required()->check(CLI::ExistingDirectory);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*list_cmd)
            return list_tasks();

        if (*run_cmd) {
            std::ifstream f(config_path);
            std::stringstream text;
            text << f.rdbuf();
            uqd::ExperimentConfig cfg = uqd::parse_config(text.str());
            if (*out_opt)
                cfg.output_dir = out_dir;
            if (*seed_opt)
                cfg.master_seed = seed;
            if (*workers_opt)
                cfg.workers = workers;
            const auto res = uqd::run_experiment(cfg, &std::cerr);
            if (!res.ok) {
                std::cerr << "uqd: some runs failed; see " << (cfg.output_dir / "manifest.json").string() << "\n";
                return 2;
            }
            std::cerr << "uqd: wrote " << cfg.output_dir.string() << "\n";
            return 0;
        }

        if (*correct_cmd) {
            std::ifstream f(archive_path);
            std::size_t n_joints = 0;
            {
                std::string header;
                std::getline(f, header);
                const auto columns = uqd::csv::split(uqd::csv::trim_cr(header)).size();
                if (columns < 6)
                    throw uqd::ConfigError("archive csv: header too short");
                n_joints = columns - 6;
                f.seekg(0);
            }
            uqd::ArmConfig arm;
            arm.n_joints = n_joints;
            const uqd::TaskSpec task = uqd::make_task(uqd::parse_task_id(task_id), parse_params(params), arm);
            const uqd::GridArchive illusory = uqd::read_archive_csv(f, rows, cols, task.qd_offset());
            const uqd::CorrectedArchive corrected = uqd::build_corrected(illusory, task, reevals, correct_seed);

            uqd::MetricsRecord rec = uqd::illusory_metrics(illusory, 0, 0);
            uqd::fill_corrected(rec, illusory, corrected);
            if (correct_out.empty()) {
                uqd::write_archive_csv(std::cout, corrected.archive, n_joints);
            }
            else {
                std::filesystem::create_directories(correct_out);
                std::ofstream c(std::filesystem::path(correct_out) / "archive_corrected.csv");
                uqd::write_archive_csv(c, corrected.archive, n_joints);
                std::ofstream r(std::filesystem::path(correct_out) / "archive_repro.csv");
                uqd::write_reproducibility_csv(r, uqd::reproducibility_archive(corrected));
            }
            std::cerr << "illusory_qd_score=" << rec.illusory_qd_score << " corrected_qd_score=" << rec.corrected_qd_score
                      << " illusory_coverage=" << rec.illusory_coverage << " corrected_coverage=" << rec.corrected_coverage
                      << " loss_qd_score=" << rec.loss_qd_score << " loss_coverage=" << rec.loss_coverage
                      << " reproducibility_score=" << rec.reproducibility_score << "\n";
            return 0;
        }

        if (*summarize_cmd) {
            const std::filesystem::path dir(summarize_in);
            std::ifstream f(dir / "metrics.csv");
            if (!f)
                throw uqd::ConfigError("no metrics.csv in " + dir.string());
            const auto summary = uqd::summarize(uqd::read_metrics_csv(f));
            std::ofstream s(dir / "summary.csv");
            uqd::write_summary_csv(s, summary);
            std::cerr << "uqd: wrote " << (dir / "summary.csv").string() << "\n";
            return 0;
        }
    }
    catch (const std::exception& e) {
        std::cerr << "uqd: error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
