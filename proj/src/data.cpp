#include "tcbga/data.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "json.hpp"

#include "tcbga/error.hpp"
#include "tcbga/random.hpp"

namespace tcbga {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

// One record; double quotes group delimiters and "" escapes a quote.
std::vector<std::string> split_record(std::string_view line, char delim) {
    std::vector<std::string> out;
    std::string field;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                field += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                field += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == delim) {
            out.emplace_back(trim(field));
            field.clear();
        } else {
            field += c;
        }
    }
    out.emplace_back(trim(field));
    return out;
}

std::optional<double> parse_number(std::string_view s) {
    double v = 0.0;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    if (!s.empty() && s.front() == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last || !std::isfinite(v)) return std::nullopt;
    return v;
}

std::optional<std::size_t> parse_index(const std::string& s) {
    std::size_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
    return v;
}

std::size_t resolve_column(const std::string& key, const std::vector<std::string>& names, bool header,
                           std::size_t n_columns, const char* role) {
    if (header) {
        auto it = std::find(names.begin(), names.end(), key);
        if (it != names.end()) return static_cast<std::size_t>(it - names.begin());
    }
    if (auto idx = parse_index(key); idx && *idx < n_columns) return *idx;
    throw DataError(std::string(role) + " column '" + key + "' not found");
}

} // namespace

std::vector<std::size_t> Dataset::class_sizes() const {
    std::vector<std::size_t> sizes(n_classes(), 0);
    for (int l : labels) ++sizes[static_cast<std::size_t>(l)];
    return sizes;
}

LoadedDataset parse_csv(std::string_view text, const CsvSchema& schema, std::string name) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty()) continue;
        rows.push_back(split_record(line, schema.delimiter));
    }
    if (rows.empty()) throw DataError("no data in " + name);

    std::vector<std::string> header;
    if (schema.header) {
        header = rows.front();
        rows.erase(rows.begin());
    }
    const std::size_t n_columns = schema.header ? header.size() : (rows.empty() ? 0 : rows.front().size());
    if (n_columns < 2) throw DataError(name + ": need at least one feature and a label column");
    if (!schema.header) {
        for (std::size_t c = 0; c < n_columns; ++c) header.push_back("f" + std::to_string(c + 1));
    }

    const std::size_t label_col = schema.label_column.empty()
                                      ? n_columns - 1
                                      : resolve_column(schema.label_column, header, schema.header, n_columns, "label");
    std::vector<bool> skip(n_columns, false);
    skip[label_col] = true;
    for (const auto& d : schema.drop_columns) skip[resolve_column(d, header, schema.header, n_columns, "dropped")] = true;

    std::vector<std::size_t> feature_cols;
    for (std::size_t c = 0; c < n_columns; ++c)
        if (!skip[c]) feature_cols.push_back(c);
    if (feature_cols.empty()) throw DataError(name + ": no feature columns");

    auto is_missing = [&](const std::string& tok) {
        return std::find(schema.missing_tokens.begin(), schema.missing_tokens.end(), tok) !=
               schema.missing_tokens.end();
    };

    LoadedDataset out;
    out.report.rows_read = rows.size();
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != n_columns)
            throw DataError(name + ": row " + std::to_string(r + 1) + " has " + std::to_string(rows[r].size()) +
                            " fields, expected " + std::to_string(n_columns));
    }

    // Columns with any non-numeric, non-missing token are integer coded.
    const std::size_t nf = feature_cols.size();
    std::vector<bool> categorical(nf, false);
    for (std::size_t f = 0; f < nf; ++f) {
        for (const auto& row : rows) {
            const auto& tok = row[feature_cols[f]];
            if (!is_missing(tok) && !parse_number(tok)) {
                categorical[f] = true;
                out.report.categorical_columns.push_back(header[feature_cols[f]]);
                break;
            }
        }
    }
    std::vector<std::unordered_map<std::string, double>> codes(nf);

    Dataset& ds = out.dataset;
    ds.name = std::move(name);
    ds.n_features = nf;
    for (auto c : feature_cols) ds.feature_names.push_back(header[c]);

    std::unordered_map<std::string, int> class_index;
    std::vector<std::vector<bool>> missing_cells;
    for (const auto& row : rows) {
        const auto& label = row[label_col];
        if (is_missing(label)) {
            ++out.report.rows_dropped;
            continue;
        }
        std::vector<double> values(nf, 0.0);
        std::vector<bool> holes(nf, false);
        bool any_missing = false;
        for (std::size_t f = 0; f < nf; ++f) {
            const auto& tok = row[feature_cols[f]];
            if (is_missing(tok)) {
                holes[f] = true;
                any_missing = true;
            } else if (categorical[f]) {
                auto [it, fresh] = codes[f].try_emplace(tok, static_cast<double>(codes[f].size()));
                values[f] = it->second;
            } else {
                values[f] = *parse_number(tok);
            }
        }
        if (any_missing && schema.missing == MissingPolicy::DropRow) {
            ++out.report.rows_dropped;
            continue;
        }
        auto [it, fresh] = class_index.try_emplace(label, static_cast<int>(ds.class_names.size()));
        if (fresh) ds.class_names.push_back(label);
        ds.labels.push_back(it->second);
        ds.values.insert(ds.values.end(), values.begin(), values.end());
        missing_cells.push_back(std::move(holes));
    }
    ds.n_instances = ds.labels.size();

    if (schema.missing == MissingPolicy::ImputeMean) {
        for (std::size_t f = 0; f < nf; ++f) {
            double sum = 0.0;
            std::size_t n = 0;
            for (std::size_t i = 0; i < ds.n_instances; ++i)
                if (!missing_cells[i][f]) {
                    sum += ds.values[i * nf + f];
                    ++n;
                }
            const double mean = n > 0 ? sum / static_cast<double>(n) : 0.0;
            for (std::size_t i = 0; i < ds.n_instances; ++i)
                if (missing_cells[i][f]) {
                    ds.values[i * nf + f] = mean;
                    ++out.report.cells_imputed;
                }
        }
    }

    if (ds.n_classes() < 2) throw DataError(ds.name + ": single class in label column");
    return out;
}

LoadedDataset load_csv(const std::filesystem::path& path, const CsvSchema& schema) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot read " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_csv(buf.str(), schema, path.stem().string());
}

void write_csv(const Dataset& ds, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write " + path.string());
    for (const auto& f : ds.feature_names) out << f << ',';
    out << "class\n";
    out << std::setprecision(17);
    for (std::size_t i = 0; i < ds.n_instances; ++i) {
        for (std::size_t f = 0; f < ds.n_features; ++f) out << ds.at(i, f) << ',';
        out << ds.class_names[static_cast<std::size_t>(ds.labels[i])] << '\n';
    }
}

Dataset select_rows(const Dataset& ds, const std::vector<std::size_t>& rows) {
    Dataset out;
    out.name = ds.name;
    out.n_features = ds.n_features;
    out.feature_names = ds.feature_names;
    out.class_names = ds.class_names;
    out.n_instances = rows.size();
    out.values.reserve(rows.size() * ds.n_features);
    for (auto r : rows) {
        out.values.insert(out.values.end(), ds.values.begin() + static_cast<std::ptrdiff_t>(r * ds.n_features),
                          ds.values.begin() + static_cast<std::ptrdiff_t>((r + 1) * ds.n_features));
        out.labels.push_back(ds.labels[r]);
    }
    return out;
}

std::vector<std::size_t> FoldPlan::test_indices(std::size_t fold) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < assignment.size(); ++i)
        if (assignment[i] == fold) out.push_back(i);
    return out;
}

std::vector<std::size_t> FoldPlan::train_indices(std::size_t fold) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < assignment.size(); ++i)
        if (assignment[i] != fold) out.push_back(i);
    return out;
}

FoldPlan stratified_folds(const std::vector<int>& labels, std::size_t n_classes, std::size_t k,
                          std::uint64_t seed) {
    if (k < 2) throw ConfigError("fold count must be at least 2");
    std::vector<std::vector<std::size_t>> members(n_classes);
    for (std::size_t i = 0; i < labels.size(); ++i) members.at(static_cast<std::size_t>(labels[i])).push_back(i);

    FoldPlan plan;
    plan.seed = seed;
    std::size_t smallest = labels.size();
    for (const auto& m : members)
        if (!m.empty()) smallest = std::min(smallest, m.size());
    if (smallest < 2) throw DataError("a class has fewer than 2 instances; cross-validation impossible");
    if (smallest < k) {
        plan.warnings.push_back("fold count reduced from " + std::to_string(k) + " to " +
                                std::to_string(smallest) + " (smallest class has " +
                                std::to_string(smallest) + " instances)");
        k = smallest;
    }
    plan.k = k;
    plan.assignment.assign(labels.size(), 0);

    Rng rng(splitmix64(seed));
    std::size_t deal = 0;
    for (auto& m : members) {
        std::shuffle(m.begin(), m.end(), rng);
        for (auto i : m) plan.assignment[i] = deal++ % k;
    }
    return plan;
}

FoldPlan stratified_folds(const Dataset& dataset, std::size_t k, std::uint64_t seed) {
    return stratified_folds(dataset.labels, dataset.n_classes(), k, seed);
}

std::vector<DatasetDescriptor> load_descriptors(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot read descriptor file " + path.string());
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw DataError("malformed descriptor file " + path.string() + ": " + e.what());
    }
    std::vector<DatasetDescriptor> out;
    for (const auto& j : doc.at("datasets")) {
        DatasetDescriptor d;
        d.name = j.at("name").get<std::string>();
        d.file = j.at("file").get<std::string>();
        d.url = j.value("url", "");
        d.schema.label_column = j.value("label_column", "");
        d.schema.delimiter = j.value("delimiter", std::string(",")).at(0);
        d.schema.header = j.value("header", true);
        if (j.contains("missing_tokens")) d.schema.missing_tokens = j["missing_tokens"].get<std::vector<std::string>>();
        if (j.contains("drop_columns")) d.schema.drop_columns = j["drop_columns"].get<std::vector<std::string>>();
        d.schema.missing = j.value("missing", std::string("drop")) == "impute" ? MissingPolicy::ImputeMean
                                                                             : MissingPolicy::DropRow;
        d.features = j.at("features").get<std::size_t>();
        d.instances = j.at("instances").get<std::size_t>();
        d.classes = j.at("classes").get<std::size_t>();
        d.sha256 = j.value("sha256", "");
        d.notes = j.value("notes", "");
        out.push_back(std::move(d));
    }
    return out;
}

const DatasetDescriptor& find_descriptor(const std::vector<DatasetDescriptor>& all, const std::string& name) {
    for (const auto& d : all) {
        if (d.name.size() != name.size()) continue;
        if (std::equal(d.name.begin(), d.name.end(), name.begin(),
                       [](char a, char b) { return std::tolower(a) == std::tolower(b); }))
            return d;
    }
    throw DataError("no dataset descriptor named '" + name + "'");
}

std::vector<std::string> check_shape(const DatasetDescriptor& desc, const LoadedDataset& loaded) {
    std::vector<std::string> problems;
    const auto& ds = loaded.dataset;
    if (ds.n_features != desc.features)
        problems.push_back(desc.name + ": " + std::to_string(ds.n_features) + " features, expected " +
                           std::to_string(desc.features));
    if (loaded.report.rows_read != desc.instances)
        problems.push_back(desc.name + ": " + std::to_string(loaded.report.rows_read) + " instances, expected " +
                           std::to_string(desc.instances));
    if (ds.n_classes() != desc.classes)
        problems.push_back(desc.name + ": " + std::to_string(ds.n_classes()) + " classes, expected " +
                           std::to_string(desc.classes));
    return problems;
}

LoadedDataset load_described(const DatasetDescriptor& desc, const std::filesystem::path& base_dir) {
    auto loaded = load_csv(base_dir / desc.file, desc.schema);
    loaded.dataset.name = desc.name;
    if (auto problems = check_shape(desc, loaded); !problems.empty()) throw DataError(problems.front());
    return loaded;
}

} // namespace tcbga
