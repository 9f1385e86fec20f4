#pragma once

/// @file report.hpp
/// @brief Machine-readable and human-readable renderings of run reports.
///
/// Accuracies are percentages throughout; AC_std is in percentage points.
/// Wall times live only in the "timing" object and the `seconds` CSV
/// columns, which are omitted when timing is off so that reports from
/// identical configs compare byte for byte.

#include <filesystem>
#include <map>
#include <ostream>
#include <string>

#include "tcbga/engine.hpp"
#include "tcbga/oracle.hpp"

namespace tcbga {

std::string report_json(const RunReport& report, bool timing = true);
/// One row per repetition.
std::string runs_csv(const RunReport& report, bool timing = true);
/// One row per (run, generation, tribe).
std::string trace_csv(const RunReport& report);
/// Header plus one row: dataset, runs, ac_ave, ac_std, as_num, ...
std::string summary_csv(const RunReport& report, bool timing = true);
/// One row per swept value.
std::string sweep_csv(const SweepResult& sweep, bool timing = true);
std::string oracle_json(const std::string& dataset, const FitnessProtocol& protocol, const OracleResult& result);

/// report.json, runs.csv, trace.csv and summary.csv under `dir`.
void write_report(const std::filesystem::path& dir, const RunReport& report, bool timing = true);
/// sweep.csv plus one write_report per value under `dir`/<parameter>-<value>.
void write_sweep(const std::filesystem::path& dir, const SweepResult& sweep, bool timing = true);

void print_summary(std::ostream& out, const RunReport& report);
void print_sweep(std::ostream& out, const SweepResult& sweep);

/// Per-dataset scores of one method, read from a report.json (its dataset
/// and ac_ave) or from a CSV with a `dataset` column and `column`.
std::map<std::string, double> read_method_scores(const std::filesystem::path& path,
                                                 const std::string& column = "ac_ave");

} // namespace tcbga
