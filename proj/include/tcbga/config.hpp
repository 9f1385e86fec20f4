#pragma once

/// @file config.hpp
/// @brief Run configuration and its flat `key = value` form.
///
/// Every field of RunConfig has exactly one key; to_kv writes all of them,
/// so parse_kv(to_kv(c)) == c for any valid c.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tcbga/competition.hpp"
#include "tcbga/data.hpp"
#include "tcbga/evolution.hpp"
#include "tcbga/fitness.hpp"
#include "tcbga/params.hpp"

namespace tcbga {

struct DatasetRef {
    /// Descriptor name (e.g. "wbcd") or a path to a delimited file.
    std::string name;
    /// Descriptor file; empty means the bundled data/datasets.json.
    std::string descriptors;
    /// Schema for raw files. Ignored for descriptor names except `missing`.
    std::string label_column;
    char delimiter = ',';
    bool header = true;
    /// Overrides the descriptor's policy when set.
    std::optional<MissingPolicy> missing;

    friend bool operator==(const DatasetRef&, const DatasetRef&) = default;
};

/// Tribe layout request. Zero or empty fields are derived from N.
struct PlanSpec {
    std::size_t tribe_size = 600;
    std::size_t n_tribes = 0;
    std::vector<double> means;
    double sigma = 0.0;
    bool allow_infeasible = false;

    TribePlan resolve(std::size_t n_features) const;
    friend bool operator==(const PlanSpec&, const PlanSpec&) = default;
};

struct RunConfig {
    DatasetRef dataset;
    PlanSpec plan;
    EvolutionConfig evolution;
    CompetitionConfig competition;
    FitnessProtocol fitness;
    std::size_t max_generations = 100;
    /// Stop once the global best fitness has not improved for this many
    /// generations.
    std::size_t patience = 30;
    std::uint64_t seed = 1;
    std::size_t runs = 1;
    /// Fitness worker threads. Has no effect on results.
    unsigned threads = 1;

    /// Throws ConfigError on any out-of-range field.
    void validate() const;
    friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Set one field from its key. Throws ConfigError for an unknown key or a
/// malformed value.
void apply_kv(RunConfig& config, std::string_view key, std::string_view value);

/// Lines of `key = value`; '#' starts a comment. Unset keys keep defaults.
RunConfig parse_kv(std::string_view text);
RunConfig load_config(const std::filesystem::path& path);

/// Every key, one per line, in a fixed order.
std::string to_kv(const RunConfig& config);

/// Keys accepted by apply_kv, in to_kv order.
const std::vector<std::string>& config_keys();

} // namespace tcbga
