#include "tcbga/report.hpp"

#include <charconv>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "json.hpp"

#include "tcbga/error.hpp"

namespace tcbga {

namespace {

using nlohmann::ordered_json;

std::string num(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

ordered_json plan_json(const TribePlan& plan) {
    return ordered_json{{"n_features", plan.n_features}, {"n_tribes", plan.n_tribes},
                        {"tribe_size", plan.tribe_size}, {"means", plan.means},
                        {"sigma", plan.sigma},           {"population", plan.population()},
                        {"allow_infeasible", plan.allow_infeasible}};
}

ordered_json config_json(const RunConfig& config) {
    // Same keys and spellings as the config file.
    ordered_json j = ordered_json::object();
    std::istringstream in(to_kv(config));
    std::string line;
    while (std::getline(in, line)) {
        const auto eq = line.find(" = ");
        j[line.substr(0, eq)] = line.substr(eq + 3);
    }
    return j;
}

ordered_json run_json(const RunResult& r) {
    ordered_json trace = ordered_json::array();
    for (const auto& g : r.trace)
        trace.push_back({{"generation", g.generation},
                         {"tribe_best", g.tribe_best},
                         {"tribe_sizes", g.tribe_sizes},
                         {"best_accuracy", g.best_accuracy},
                         {"best_popcount", g.best_popcount}});
    ordered_json competitions = ordered_json::array();
    for (const auto& c : r.competitions)
        competitions.push_back({{"generation", c.generation},
                                {"winner", c.winner ? ordered_json(*c.winner) : ordered_json(nullptr)},
                                {"loser", c.loser ? ordered_json(*c.loser) : ordered_json(nullptr)},
                                {"sizes", c.sizes}});
    ordered_json j{{"index", r.index},
                   {"seed", r.seed},
                   {"best_mask", r.best_mask.to_string()},
                   {"best_accuracy", r.best_accuracy},
                   {"best_popcount", r.best_mask.count()},
                   {"generations", r.generations},
                   {"converged", r.converged},
                   {"evaluations", r.evaluations},
                   {"trace", std::move(trace)},
                   {"competitions", std::move(competitions)}};
    return j;
}

ordered_json report_object(const RunReport& report, bool timing) {
    ordered_json runs = ordered_json::array();
    for (const auto& r : report.runs) runs.push_back(run_json(r));
    ordered_json j{{"dataset", report.dataset},
                   {"n_features", report.n_features},
                   {"n_instances", report.n_instances},
                   {"n_classes", report.n_classes},
                   {"config", config_json(report.config)},
                   {"plan", plan_json(report.plan)},
                   {"units", {{"accuracy", "percent"}, {"ac_std", "percentage points, sample standard deviation"}}},
                   {"ac_ave", report.ac_ave},
                   {"ac_std", report.ac_std},
                   {"as_num", report.as_num},
                   {"classifier_evaluations", report.classifier_evaluations},
                   {"warnings", report.warnings},
                   {"runs", std::move(runs)}};
    if (timing) {
        ordered_json per_run = ordered_json::array();
        for (const auto& r : report.runs) per_run.push_back(r.wall_seconds);
        j["timing"] = {{"wall_seconds", report.wall_seconds}, {"per_run_seconds", per_run}};
    }
    return j;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
    if (!out) throw std::runtime_error("write failed for " + path.string());
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, ',')) {
        if (!cell.empty() && cell.back() == '\r') cell.pop_back();
        out.push_back(cell);
    }
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

} // namespace

std::string report_json(const RunReport& report, bool timing) {
    return report_object(report, timing).dump(2) + "\n";
}

std::string runs_csv(const RunReport& report, bool timing) {
    std::ostringstream out;
    out << "run,seed,best_accuracy,best_popcount,generations,converged,evaluations,best_mask";
    if (timing) out << ",seconds";
    out << '\n';
    for (const auto& r : report.runs) {
        out << r.index << ',' << r.seed << ',' << num(r.best_accuracy) << ',' << r.best_mask.count() << ','
            << r.generations << ',' << (r.converged ? 1 : 0) << ',' << r.evaluations << ',' << r.best_mask.to_string();
        if (timing) out << ',' << num(r.wall_seconds);
        out << '\n';
    }
    return out.str();
}

std::string trace_csv(const RunReport& report) {
    std::ostringstream out;
    out << "run,generation,tribe,tribe_best,tribe_size,global_best\n";
    for (const auto& r : report.runs)
        for (const auto& g : r.trace)
            for (std::size_t k = 0; k < g.tribe_best.size(); ++k)
                out << r.index << ',' << g.generation << ',' << k << ',' << num(g.tribe_best[k]) << ','
                    << g.tribe_sizes[k] << ',' << num(g.best_accuracy) << '\n';
    return out.str();
}

std::string summary_csv(const RunReport& report, bool timing) {
    std::ostringstream out;
    out << "dataset,runs,ac_ave,ac_std,as_num,n_features,n_tribes,classifier_evaluations";
    if (timing) out << ",seconds";
    out << '\n';
    out << report.dataset << ',' << report.runs.size() << ',' << num(report.ac_ave) << ',' << num(report.ac_std)
        << ',' << num(report.as_num) << ',' << report.n_features << ',' << report.plan.n_tribes << ','
        << report.classifier_evaluations;
    if (timing) out << ',' << num(report.wall_seconds);
    out << '\n';
    return out.str();
}

std::string sweep_csv(const SweepResult& sweep, bool timing) {
    std::ostringstream out;
    out << sweep.parameter << ",ac_ave,ac_std,as_num";
    if (timing) out << ",seconds";
    out << '\n';
    for (const auto& p : sweep.points) {
        out << p.value << ',' << num(p.report.ac_ave) << ',' << num(p.report.ac_std) << ','
            << num(p.report.as_num);
        if (timing) out << ',' << num(p.report.wall_seconds);
        out << '\n';
    }
    return out.str();
}

std::string oracle_json(const std::string& dataset, const FitnessProtocol& protocol, const OracleResult& result) {
    ordered_json j{{"dataset", dataset},
                   {"classifier", to_string(protocol.classifier)},
                   {"folds", protocol.folds},
                   {"fold_seed", protocol.fold_seed},
                   {"best_mask", result.best_mask.to_string()},
                   {"best_popcount", result.best_mask.count()},
                   {"best_accuracy", result.best_accuracy},
                   {"evaluated_count", result.evaluated_count},
                   {"wall_seconds", result.wall_seconds}};
    return j.dump(2) + "\n";
}

void write_report(const std::filesystem::path& dir, const RunReport& report, bool timing) {
    std::filesystem::create_directories(dir);
    write_text(dir / "report.json", report_json(report, timing));
    write_text(dir / "runs.csv", runs_csv(report, timing));
    write_text(dir / "trace.csv", trace_csv(report));
    write_text(dir / "summary.csv", summary_csv(report, timing));
}

void write_sweep(const std::filesystem::path& dir, const SweepResult& sweep, bool timing) {
    std::filesystem::create_directories(dir);
    write_text(dir / "sweep.csv", sweep_csv(sweep, timing));
    for (const auto& p : sweep.points) write_report(dir / (sweep.parameter + "-" + p.value), p.report, timing);
}

void print_summary(std::ostream& out, const RunReport& report) {
    const auto flags = out.flags();
    out << "dataset   " << report.dataset << "  (N=" << report.n_features << ", I=" << report.n_instances
        << ", classes=" << report.n_classes << ")\n";
    out << "plan      N_T=" << report.plan.n_tribes << "  N_Tk=" << report.plan.tribe_size << "  sigma="
        << std::setprecision(4) << report.plan.sigma << "  means={";
    for (std::size_t i = 0; i < report.plan.means.size(); ++i) out << (i ? "," : "") << report.plan.means[i];
    out << "}\n\n";
    out << std::left << std::setw(5) << "run" << std::setw(12) << "accuracy" << std::setw(8) << "size"
        << std::setw(7) << "gens" << "mask\n";
    out << std::fixed << std::setprecision(4);
    for (const auto& r : report.runs)
        out << std::setw(5) << r.index << std::setw(12) << r.best_accuracy << std::setw(8) << r.best_mask.count()
            << std::setw(7) << r.generations << r.best_mask.to_string() << '\n';
    out << "\nAC_ave " << report.ac_ave << " %   AC_std " << std::scientific << std::setprecision(3)
        << report.ac_std << " pp   AS_num " << std::fixed << std::setprecision(2) << report.as_num << "/"
        << report.n_features << "   wall " << report.wall_seconds << " s\n";
    for (const auto& w : report.warnings) out << "warning: " << w << '\n';
    out.flags(flags);
}

void print_sweep(std::ostream& out, const SweepResult& sweep) {
    const auto flags = out.flags();
    out << std::left << std::setw(22) << sweep.parameter << std::setw(12) << "AC_ave" << std::setw(12) << "AC_std"
        << std::setw(10) << "AS_num" << "seconds\n";
    out << std::fixed;
    for (const auto& p : sweep.points)
        out << std::setw(22) << p.value << std::setprecision(4) << std::setw(12) << p.report.ac_ave
            << std::setw(12) << p.report.ac_std << std::setprecision(2) << std::setw(10) << p.report.as_num
            << p.report.wall_seconds << '\n';
    out.flags(flags);
}

std::map<std::string, double> read_method_scores(const std::filesystem::path& path, const std::string& column) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot read " + path.string());
    std::map<std::string, double> out;
    if (path.extension() == ".json") {
        ordered_json j;
        try {
            j = ordered_json::parse(in);
            out[j.at("dataset").get<std::string>()] = j.at(column).get<double>();
        } catch (const nlohmann::json::exception& e) {
            throw DataError(path.string() + ": " + e.what());
        }
        return out;
    }

    std::string line;
    if (!std::getline(in, line)) throw DataError(path.string() + ": empty file");
    const auto header = split_csv_line(line);
    std::size_t name_col = header.size();
    std::size_t value_col = header.size();
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == "dataset") name_col = i;
        if (header[i] == column) value_col = i;
    }
    if (name_col == header.size() || value_col == header.size())
        throw DataError(path.string() + ": needs 'dataset' and '" + column + "' columns");
    while (std::getline(in, line)) {
        if (line.empty() || line == "\r" || line.rfind("dataset,", 0) == 0) continue;
        const auto cells = split_csv_line(line);
        if (cells.size() <= std::max(name_col, value_col)) throw DataError(path.string() + ": short row");
        double v = 0.0;
        const auto& s = cells[value_col];
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc{} || ptr != s.data() + s.size())
            throw DataError(path.string() + ": '" + s + "' is not a number");
        if (!out.emplace(cells[name_col], v).second)
            throw DataError(path.string() + ": dataset '" + cells[name_col] + "' listed twice");
    }
    return out;
}

} // namespace tcbga
