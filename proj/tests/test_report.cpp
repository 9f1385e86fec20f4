#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "tcbga/engine.hpp"
#include "tcbga/error.hpp"
#include "tcbga/report.hpp"

using namespace tcbga;
namespace fs = std::filesystem;

namespace {

const RunReport& small_report() {
    static const RunReport r = [] {
        RunConfig c;
        c.dataset.name = "wbcd";
        c.plan.tribe_size = 40;
        c.plan.allow_infeasible = true;
        c.max_generations = 3;
        c.runs = 2;
        return run_experiment(c);
    }();
    return r;
}

fs::path scratch(const std::string& name) {
    const auto dir = fs::temp_directory_path() / "tcbga-test-report" / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::size_t lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

} // namespace

TEST_CASE("reports without timing are byte-identical across repeats") {
    RunConfig c = small_report().config;
    const auto again = run_experiment(c);
    CHECK(report_json(again, false) == report_json(small_report(), false));
    CHECK(runs_csv(again, false) == runs_csv(small_report(), false));
    CHECK(trace_csv(again) == trace_csv(small_report()));
    CHECK(summary_csv(again, false) == summary_csv(small_report(), false));
}

TEST_CASE("timing lives in its own object and columns") {
    const auto& r = small_report();
    const auto with = nlohmann::json::parse(report_json(r, true));
    const auto without = nlohmann::json::parse(report_json(r, false));
    CHECK(with.contains("timing"));
    CHECK_FALSE(without.contains("timing"));
    CHECK(report_json(r, false).find("seconds") == std::string::npos);
    CHECK(summary_csv(r, true).find("seconds") != std::string::npos);
    CHECK(summary_csv(r, false).find("seconds") == std::string::npos);
}

TEST_CASE("JSON carries the full trace and states units") {
    const auto& r = small_report();
    const auto j = nlohmann::json::parse(report_json(r, false));
    CHECK(j["dataset"] == "wbcd");
    CHECK(j["n_features"] == 9);
    CHECK(j["units"]["accuracy"] == "percent");
    CHECK(j["ac_ave"].get<double>() == r.ac_ave);
    CHECK(j["runs"].size() == 2);
    CHECK(j["runs"][0]["trace"].size() == r.runs[0].trace.size());
    CHECK(j["runs"][1]["best_mask"] == r.runs[1].best_mask.to_string());
    CHECK(parse_kv(to_kv(r.config)) == r.config);
}

TEST_CASE("CSV shapes") {
    const auto& r = small_report();
    std::size_t rows = 0;
    for (const auto& run : r.runs) rows += run.trace.size() * r.plan.n_tribes;
    CHECK(lines(trace_csv(r)) == rows + 1);
    CHECK(lines(runs_csv(r)) == r.runs.size() + 1);
    CHECK(lines(summary_csv(r)) == 2);
    CHECK(summary_csv(r).rfind("dataset,runs,ac_ave,ac_std,as_num", 0) == 0);
}

TEST_CASE("write_report and read_method_scores agree") {
    const auto dir = scratch("write");
    write_report(dir, small_report(), false);
    for (const char* f : {"report.json", "runs.csv", "trace.csv", "summary.csv"}) CHECK(fs::exists(dir / f));
    const auto from_json = read_method_scores(dir / "report.json");
    const auto from_csv = read_method_scores(dir / "summary.csv");
    REQUIRE(from_json.size() == 1);
    CHECK(from_json.at("wbcd") == small_report().ac_ave);
    CHECK(from_csv == from_json);
    CHECK(read_method_scores(dir / "report.json", "as_num").at("wbcd") == small_report().as_num);
}

TEST_CASE("concatenated summaries and malformed inputs") {
    const auto dir = scratch("read");
    {
        std::ofstream out(dir / "m.csv");
        out << "dataset,ac_ave\nwine,97.5\ndataset,ac_ave\nzoo,95.25\n\n";
    }
    const auto scores = read_method_scores(dir / "m.csv");
    CHECK(scores.size() == 2);
    CHECK(scores.at("zoo") == 95.25);
    {
        std::ofstream out(dir / "dup.csv");
        out << "dataset,ac_ave\nwine,1\nwine,2\n";
    }
    CHECK_THROWS_AS(read_method_scores(dir / "dup.csv"), DataError);
    {
        std::ofstream out(dir / "bad.csv");
        out << "dataset,ac_ave\nwine,high\n";
    }
    CHECK_THROWS_AS(read_method_scores(dir / "bad.csv"), DataError);
    CHECK_THROWS_AS(read_method_scores(dir / "m.csv", "ac_std"), DataError);
    CHECK_THROWS_AS(read_method_scores(dir / "missing.csv"), DataError);
}

TEST_CASE("sweep output") {
    RunConfig c = small_report().config;
    c.runs = 1;
    c.max_generations = 2;
    const auto s = sweep(c, "competition_interval", {"1", "2"});
    CHECK(lines(sweep_csv(s, false)) == 3);
    const auto dir = scratch("sweep");
    write_sweep(dir, s, false);
    CHECK(fs::exists(dir / "sweep.csv"));
    CHECK(fs::exists(dir / "competition_interval-1" / "report.json"));
    CHECK(fs::exists(dir / "competition_interval-2" / "summary.csv"));
    std::ostringstream human;
    print_sweep(human, s);
    print_summary(human, small_report());
    CHECK(human.str().find("wbcd") != std::string::npos);
}

TEST_CASE("oracle JSON") {
    OracleResult o;
    o.best_mask = Mask::from_string("101");
    o.best_accuracy = 91.5;
    o.evaluated_count = 7;
    const auto j = nlohmann::json::parse(oracle_json("toy", {}, o));
    CHECK(j["best_mask"] == "101");
    CHECK(j["evaluated_count"] == 7);
}
