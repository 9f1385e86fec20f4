// Command-line front end: run, sweep, oracle, stats, fetch-data.
//
// Exit codes: 0 success, 1 configuration or data error, 2 runtime failure.

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "tcbga/config.hpp"
#include "tcbga/engine.hpp"
#include "tcbga/error.hpp"
#include "tcbga/fetch.hpp"
#include "tcbga/oracle.hpp"
#include "tcbga/report.hpp"
#include "tcbga/stats.hpp"

namespace fs = std::filesystem;
using namespace tcbga;

namespace {

constexpr int kOk = 0;
constexpr int kConfigError = 1;
constexpr int kRuntimeError = 2;

struct RunFlags {
    std::string config;
    std::string dataset;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> runs;
    std::string classifier;
    std::optional<std::size_t> folds;
    std::optional<std::size_t> generations;
    std::optional<unsigned> threads;
    std::vector<std::string> set;
    std::string out;
    bool no_timing = false;

    void attach(CLI::App* cmd) {
        cmd->add_option("--config", config, "Config file of key = value lines");
        cmd->add_option("--dataset", dataset, "Descriptor name or CSV path");
        cmd->add_option("--seed", seed, "Master seed");
        cmd->add_option("--runs", runs, "Repetitions");
        cmd->add_option("--classifier", classifier, "linear-svm, nearest-centroid or knn");
        cmd->add_option("--folds", folds, "Cross-validation folds");
        cmd->add_option("--generations", generations, "Maximum generations N_G");
        cmd->add_option("--threads", threads, "Fitness worker threads");
        cmd->add_option("--set", set, "Extra key=value overrides")->take_all();
        cmd->add_option("--out", out, "Directory for report files");
        cmd->add_flag("--no-timing", no_timing, "Omit wall times from report files");
    }

    RunConfig resolve() const {
        RunConfig c = config.empty() ? RunConfig{} : load_config(config);
        if (!dataset.empty()) c.dataset.name = dataset;
        if (seed) c.seed = *seed;
        if (runs) c.runs = *runs;
        if (!classifier.empty()) c.fitness.classifier = parse_classifier(classifier);
        if (folds) c.fitness.folds = *folds;
        if (generations) c.max_generations = *generations;
        if (threads) c.threads = *threads;
        for (const auto& kv : set) {
            const auto eq = kv.find('=');
            if (eq == std::string::npos) throw ConfigError("--set expects key=value, got '" + kv + "'");
            apply_kv(c, kv.substr(0, eq), kv.substr(eq + 1));
        }
        c.validate();
        return c;
    }
};

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

int cmd_run(const RunFlags& flags) {
    const RunConfig config = flags.resolve();
    const auto report = run_experiment(config);
    print_summary(std::cout, report);
    if (!flags.out.empty()) {
        write_report(flags.out, report, !flags.no_timing);
        std::ofstream(fs::path(flags.out) / "config.kv") << to_kv(config);
        std::cout << "report written to " << flags.out << '\n';
    }
    return kOk;
}

int cmd_sweep(const RunFlags& flags, const std::string& param, const std::string& values) {
    const RunConfig config = flags.resolve();
    const auto result = sweep(config, param, split_list(values));
    print_sweep(std::cout, result);
    if (!flags.out.empty()) {
        write_sweep(flags.out, result, !flags.no_timing);
        std::cout << "sweep written to " << flags.out << '\n';
    }
    return kOk;
}

struct OracleFlags {
    RunFlags run;
    std::size_t cap = 20;
    bool force = false;
};

int cmd_oracle(const OracleFlags& flags) {
    const RunConfig config = flags.run.resolve();
    const auto loaded = load_dataset(config.dataset);
    ExhaustiveOptions opt;
    opt.cap = flags.cap;
    opt.force = flags.force;
    opt.threads = config.threads;
    const auto result = exhaustive_best_subset(loaded.dataset, config.fitness, opt);
    const auto text = oracle_json(loaded.dataset.name, config.fitness, result);
    std::cout << text;
    if (!flags.run.out.empty()) {
        fs::create_directories(flags.run.out);
        std::ofstream(fs::path(flags.run.out) / "oracle.json") << text;
    }
    return kOk;
}

int cmd_stats(const std::string& test, const std::vector<std::string>& files, const std::string& matrix,
              const std::string& column) {
    std::vector<std::string> methods;
    std::vector<std::map<std::string, double>> scores;
    if (!matrix.empty()) {
        std::ifstream in(matrix);
        if (!in) throw DataError("cannot read " + matrix);
        std::string line;
        std::getline(in, line);
        methods = split_list(line);
        if (methods.size() < 2) throw DataError(matrix + ": header needs a dataset column and methods");
        methods.erase(methods.begin());
        scores.resize(methods.size());
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            auto cells = split_list(line);
            if (cells.size() != methods.size() + 1) throw DataError(matrix + ": ragged row '" + line + "'");
            for (std::size_t j = 0; j < methods.size(); ++j) {
                try {
                    scores[j][cells[0]] = std::stod(cells[j + 1]);
                } catch (const std::exception&) {
                    throw DataError(matrix + ": '" + cells[j + 1] + "' is not a number");
                }
            }
        }
    } else {
        for (const auto& f : files) {
            methods.push_back(fs::path(f).stem().string());
            scores.push_back(read_method_scores(f, column));
        }
    }
    if (scores.size() < 2) throw DataError("need at least two methods");

    // Datasets common to every method, in name order.
    std::vector<std::string> datasets;
    for (const auto& [name, v] : scores.front()) {
        bool everywhere = true;
        for (const auto& s : scores) everywhere = everywhere && s.count(name);
        if (everywhere) datasets.push_back(name);
    }
    for (const auto& s : scores)
        if (s.size() != datasets.size()) throw DataError("methods do not cover the same datasets");

    std::vector<std::vector<double>> m(scores.size());
    for (std::size_t j = 0; j < scores.size(); ++j)
        for (const auto& d : datasets) m[j].push_back(scores[j].at(d));

    std::cout << std::setprecision(6);
    if (test == "friedman") {
        const auto r = friedman_test(m);
        std::cout << "datasets " << datasets.size() << "  methods " << methods.size() << "\n";
        for (std::size_t j = 0; j < methods.size(); ++j)
            std::cout << "  " << methods[j] << "  average rank " << r.average_ranks[j] << '\n';
        std::cout << "chi_square " << r.chi_square << "  df " << r.df << "  p " << r.p_value << '\n';
    } else {
        if (m.size() != 2) throw DataError("ttest compares exactly two methods");
        const auto r = paired_t_test(m[0], m[1]);
        std::cout << "pairs " << r.n << "  mean difference " << r.mean_difference << "  sd " << r.sd_difference << '\n';
        if (r.defined())
            std::cout << "t " << *r.t << "  df " << r.n - 1 << "  p " << *r.p_value << '\n';
        else
            std::cout << "t undefined: differences have zero variance\n";
    }
    return kOk;
}

int cmd_fetch(const std::string& descriptors, const std::vector<std::string>& names, const std::string& dest,
              const std::string& url) {
    const fs::path desc_path = descriptors.empty() ? default_descriptor_path() : fs::path(descriptors);
    const auto all = load_descriptors(desc_path);
    std::vector<DatasetDescriptor> chosen;
    if (names.empty()) {
        chosen = all;
    } else {
        for (const auto& n : names) chosen.push_back(find_descriptor(all, n));
    }
    if (!url.empty() && chosen.size() != 1) throw ConfigError("--url needs exactly one --name");
    const fs::path target = dest.empty() ? desc_path.parent_path() : fs::path(dest);
    for (const auto& d : chosen) {
        if (d.url.empty() && url.empty()) {
            std::cout << d.name << ": bundled, nothing to fetch\n";
            continue;
        }
        const auto r = fetch_dataset(d, target, url);
        std::cout << d.name << ": " << r.bytes << " bytes -> " << r.file.string() << "  sha256 " << r.sha256
                  << (d.sha256.empty() ? "  (no pinned checksum; shape verified)" : "  (checksum verified)") << '\n';
    }
    return kOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Tribe-competition genetic algorithm for wrapper feature selection"};
    app.require_subcommand(1);

    RunFlags run_flags;
    auto* run = app.add_subcommand("run", "Run the algorithm and report AC_ave, AC_std and AS_num");
    run_flags.attach(run);

    RunFlags sweep_flags;
    std::string sweep_param;
    std::string sweep_values;
    auto* sweep_cmd = app.add_subcommand("sweep", "Repeat run over values of one parameter");
    sweep_flags.attach(sweep_cmd);
    sweep_cmd->add_option("--param", sweep_param, "n_tribes or competition_interval")->required();
    sweep_cmd->add_option("--values", sweep_values, "Comma-separated values")->required();

    OracleFlags oracle_flags;
    auto* oracle = app.add_subcommand("oracle", "Exhaustive best subset under the same fitness protocol");
    oracle_flags.run.attach(oracle);
    oracle->add_option("--cap", oracle_flags.cap, "Largest N searched without --force");
    oracle->add_flag("--force", oracle_flags.force, "Search above the cap");

    std::string stats_test;
    std::vector<std::string> stats_files;
    std::string stats_matrix;
    std::string stats_column = "ac_ave";
    auto* stats = app.add_subcommand("stats", "Friedman test or paired t-test over report files");
    stats->add_option("test", stats_test, "friedman or ttest")
        ->required()
        ->check(CLI::IsMember({"friedman", "ttest"}));
    stats->add_option("files", stats_files, "One report.json or summary CSV per method");
    stats->add_option("--matrix", stats_matrix, "Wide CSV: dataset column, then one column per method");
    stats->add_option("--column", stats_column, "Score column in CSV inputs");

    std::string fetch_desc;
    std::vector<std::string> fetch_names;
    std::string fetch_dest;
    std::string fetch_url;
    auto* fetch = app.add_subcommand("fetch-data", "Download datasets named in a descriptor file and verify them");
    fetch->add_option("--descriptors", fetch_desc, "Descriptor file (default: bundled datasets.json)");
    fetch->add_option("--name", fetch_names, "Dataset names (default: all)");
    fetch->add_option("--dest", fetch_dest, "Target directory (default: next to the descriptors)");
    fetch->add_option("--url", fetch_url, "Override the descriptor URL");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kConfigError;
    }

    try {
        if (*run) return cmd_run(run_flags);
        if (*sweep_cmd) return cmd_sweep(sweep_flags, sweep_param, sweep_values);
        if (*oracle) return cmd_oracle(oracle_flags);
        if (*stats) return cmd_stats(stats_test, stats_files, stats_matrix, stats_column);
        if (*fetch) return cmd_fetch(fetch_desc, fetch_names, fetch_dest, fetch_url);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kConfigError;
    } catch (const std::exception& e) {
        std::cerr << "failure: " << e.what() << '\n';
        return kRuntimeError;
    }
    return kOk;
}
