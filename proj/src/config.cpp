#include "tcbga/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "tcbga/error.hpp"

namespace tcbga {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value, std::string_view expected) {
    throw ConfigError("config key '" + std::string(key) + "': '" + std::string(value) + "' is not " +
                      std::string(expected));
}

template <class Int>
Int parse_int(std::string_view key, std::string_view v) {
    Int out{};
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || ptr != v.data() + v.size()) bad_value(key, v, "a non-negative integer");
    return out;
}

double parse_double(std::string_view key, std::string_view v) {
    double out = 0.0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || ptr != v.data() + v.size()) bad_value(key, v, "a number");
    return out;
}

bool parse_bool(std::string_view key, std::string_view v) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    bad_value(key, v, "a boolean");
}

std::string format_double(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

std::string format_delimiter(char c) {
    if (c == '\t') return "tab";
    if (c == ' ') return "space";
    return std::string(1, c);
}

} // namespace

TribePlan PlanSpec::resolve(std::size_t n_features) const {
    if (n_features == 0) throw ConfigError("dataset has no features");
    if (tribe_size == 0) throw ConfigError("tribe_size must be positive");
    std::size_t nt = n_tribes;
    if (!means.empty()) {
        if (nt != 0 && nt != means.size())
            throw ConfigError("n_tribes disagrees with the number of explicit means");
        nt = means.size();
    }
    TribePlan plan;
    try {
        plan = derive_plan(n_features, tribe_size, nt);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    if (!means.empty()) plan.means = means;
    if (sigma > 0.0) plan.sigma = sigma;
    plan.allow_infeasible = allow_infeasible;
    return plan;
}

void RunConfig::validate() const {
    if (dataset.name.empty()) throw ConfigError("no dataset given");
    if (plan.tribe_size == 0) throw ConfigError("tribe_size must be positive");
    if (plan.sigma < 0.0) throw ConfigError("sigma must be positive");
    evolution.validate();
    competition.validate();
    fitness.validate();
    if (runs == 0) throw ConfigError("runs must be at least 1");
    if (patience == 0) throw ConfigError("patience must be at least 1");
    if (threads == 0) throw ConfigError("threads must be at least 1");
}

const std::vector<std::string>& config_keys() {
    static const std::vector<std::string> keys{
        "dataset",        "descriptors",       "label_column",       "delimiter",       "header",
        "missing",        "tribe_size",        "n_tribes",           "means",           "sigma",
        "allow_infeasible", "crossover_rate",  "mutation_rate",      "selection_pressure",
        "competition_interval", "award",       "penalty",            "min_tribe_size",  "classifier",
        "folds",          "fold_seed",         "regularization",     "neighbors",       "subsample",
        "max_generations", "patience",         "seed",               "runs",            "threads",
    };
    return keys;
}

void apply_kv(RunConfig& c, std::string_view key, std::string_view raw) {
    const auto v = trim(raw);
    const bool is_auto = v == "auto" || v.empty();

    if (key == "dataset") c.dataset.name = std::string(v);
    else if (key == "descriptors") c.dataset.descriptors = std::string(v);
    else if (key == "label_column") c.dataset.label_column = std::string(v);
    else if (key == "delimiter") {
        if (v == "tab" || v == "\\t") c.dataset.delimiter = '\t';
        else if (v == "space") c.dataset.delimiter = ' ';
        else if (v.size() == 1) c.dataset.delimiter = v.front();
        else bad_value(key, v, "a single character, 'tab' or 'space'");
    } else if (key == "header") c.dataset.header = parse_bool(key, v);
    else if (key == "missing") {
        if (is_auto) c.dataset.missing.reset();
        else if (v == "drop") c.dataset.missing = MissingPolicy::DropRow;
        else if (v == "impute") c.dataset.missing = MissingPolicy::ImputeMean;
        else bad_value(key, v, "one of auto, drop, impute");
    } else if (key == "tribe_size") c.plan.tribe_size = parse_int<std::size_t>(key, v);
    else if (key == "n_tribes") c.plan.n_tribes = is_auto ? 0 : parse_int<std::size_t>(key, v);
    else if (key == "means") {
        c.plan.means.clear();
        if (!is_auto) {
            std::size_t start = 0;
            while (start <= v.size()) {
                const auto end = std::min(v.find(',', start), v.size());
                c.plan.means.push_back(parse_double(key, trim(v.substr(start, end - start))));
                start = end + 1;
            }
        }
    } else if (key == "sigma") c.plan.sigma = is_auto ? 0.0 : parse_double(key, v);
    else if (key == "allow_infeasible") c.plan.allow_infeasible = parse_bool(key, v);
    else if (key == "crossover_rate") c.evolution.crossover_rate = parse_double(key, v);
    else if (key == "mutation_rate") c.evolution.mutation_rate = parse_double(key, v);
    else if (key == "selection_pressure") c.evolution.selection_pressure = parse_double(key, v);
    else if (key == "competition_interval") c.competition.interval = parse_int<std::size_t>(key, v);
    else if (key == "award") c.competition.award = parse_int<std::size_t>(key, v);
    else if (key == "penalty") c.competition.penalty = parse_int<std::size_t>(key, v);
    else if (key == "min_tribe_size") c.competition.min_tribe_size = parse_int<std::size_t>(key, v);
    else if (key == "classifier") c.fitness.classifier = parse_classifier(std::string(v));
    else if (key == "folds") c.fitness.folds = parse_int<std::size_t>(key, v);
    else if (key == "fold_seed") c.fitness.fold_seed = parse_int<std::uint64_t>(key, v);
    else if (key == "regularization") c.fitness.regularization = parse_double(key, v);
    else if (key == "neighbors") c.fitness.neighbors = parse_int<std::size_t>(key, v);
    else if (key == "subsample") {
        if (v == "none" || v.empty()) c.fitness.subsample.reset();
        else c.fitness.subsample = parse_double(key, v);
    } else if (key == "max_generations") c.max_generations = parse_int<std::size_t>(key, v);
    else if (key == "patience") c.patience = parse_int<std::size_t>(key, v);
    else if (key == "seed") c.seed = parse_int<std::uint64_t>(key, v);
    else if (key == "runs") c.runs = parse_int<std::size_t>(key, v);
    else if (key == "threads") c.threads = parse_int<unsigned>(key, v);
    else throw ConfigError("unknown config key '" + std::string(key) + "'");
}

RunConfig parse_kv(std::string_view text) {
    RunConfig config;
    std::set<std::string, std::less<>> seen;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto end = std::min(text.find('\n', pos), text.size());
        auto line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError("config line " + std::to_string(line_no) + ": expected 'key = value'");
        const auto key = trim(line.substr(0, eq));
        if (!seen.insert(std::string(key)).second)
            throw ConfigError("config line " + std::to_string(line_no) + ": duplicate key '" + std::string(key) + "'");
        apply_kv(config, key, line.substr(eq + 1));
    }
    return config;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_kv(ss.str());
}

std::string to_kv(const RunConfig& c) {
    std::ostringstream out;
    auto put = [&](std::string_view k, const std::string& v) { out << k << " = " << v << '\n'; };
    put("dataset", c.dataset.name);
    put("descriptors", c.dataset.descriptors);
    put("label_column", c.dataset.label_column);
    put("delimiter", format_delimiter(c.dataset.delimiter));
    put("header", c.dataset.header ? "true" : "false");
    put("missing", !c.dataset.missing ? "auto"
                   : *c.dataset.missing == MissingPolicy::DropRow ? "drop"
                                                                   : "impute");
    put("tribe_size", std::to_string(c.plan.tribe_size));
    put("n_tribes", c.plan.n_tribes == 0 ? "auto" : std::to_string(c.plan.n_tribes));
    std::string means;
    for (double m : c.plan.means) means += (means.empty() ? "" : ",") + format_double(m);
    put("means", means.empty() ? "auto" : means);
    put("sigma", c.plan.sigma > 0.0 ? format_double(c.plan.sigma) : "auto");
    put("allow_infeasible", c.plan.allow_infeasible ? "true" : "false");
    put("crossover_rate", format_double(c.evolution.crossover_rate));
    put("mutation_rate", format_double(c.evolution.mutation_rate));
    put("selection_pressure", format_double(c.evolution.selection_pressure));
    put("competition_interval", std::to_string(c.competition.interval));
    put("award", std::to_string(c.competition.award));
    put("penalty", std::to_string(c.competition.penalty));
    put("min_tribe_size", std::to_string(c.competition.min_tribe_size));
    put("classifier", to_string(c.fitness.classifier));
    put("folds", std::to_string(c.fitness.folds));
    put("fold_seed", std::to_string(c.fitness.fold_seed));
    put("regularization", format_double(c.fitness.regularization));
    put("neighbors", std::to_string(c.fitness.neighbors));
    put("subsample", c.fitness.subsample ? format_double(*c.fitness.subsample) : "none");
    put("max_generations", std::to_string(c.max_generations));
    put("patience", std::to_string(c.patience));
    put("seed", std::to_string(c.seed));
    put("runs", std::to_string(c.runs));
    put("threads", std::to_string(c.threads));
    return out.str();
}

} // namespace tcbga
