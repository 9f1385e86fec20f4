#include "tcbga/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "tcbga/error.hpp"
#include "tcbga/random.hpp"

namespace tcbga {

std::string to_string(ClassifierKind kind) {
    switch (kind) {
    case ClassifierKind::LinearSvm: return "linear-svm";
    case ClassifierKind::NearestCentroid: return "nearest-centroid";
    case ClassifierKind::KNearestNeighbor: return "knn";
    }
    return "unknown";
}

ClassifierKind parse_classifier(const std::string& name) {
    if (name == "linear-svm" || name == "svm") return ClassifierKind::LinearSvm;
    if (name == "nearest-centroid" || name == "centroid") return ClassifierKind::NearestCentroid;
    if (name == "knn" || name == "k-nearest-neighbor") return ClassifierKind::KNearestNeighbor;
    throw ConfigError("unknown classifier '" + name + "'");
}

double BinarySvm::decision(std::span<const double> x) const noexcept {
    double f = bias;
    for (std::size_t j = 0; j < x.size(); ++j) f += weights[j] * x[j];
    return f;
}

BinarySvm train_binary_svm(MatrixView x, std::span<const int> y, const SvmOptions& opt) {
    const std::size_t n = x.rows;
    const std::size_t d = x.cols;
    BinarySvm model;
    model.weights.assign(d, 0.0);
    if (n == 0) return model;

    // w and the bias together form the weight vector of [x, 1].
    std::vector<double> alpha(n, 0.0);
    std::vector<double> diag(n, 1.0);
    for (std::size_t i = 0; i < n; ++i) {
        const auto r = x.row(i);
        diag[i] += std::inner_product(r.begin(), r.end(), r.begin(), 0.0);
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    Rng rng(splitmix64(n * 0x9e37ULL + d));

    // Variables at a bound whose gradient points outward past last pass's
    // extreme projected gradients leave the active set [0, active).
    constexpr double inf = std::numeric_limits<double>::infinity();
    double pg_max_old = inf;
    double pg_min_old = -inf;
    std::size_t active = n;
    for (model.passes = 1; model.passes <= opt.max_passes; ++model.passes) {
        std::shuffle(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(active), rng);
        double pg_max = -inf;
        double pg_min = inf;
        for (std::size_t s = 0; s < active; ++s) {
            const std::size_t i = order[s];
            const auto r = x.row(i);
            const double yi = static_cast<double>(y[i]);
            const double g = yi * model.decision(r) - 1.0;
            double pg = 0.0;
            if (alpha[i] <= 0.0) {
                if (g > pg_max_old) {
                    std::swap(order[s--], order[--active]);
                    continue;
                }
                pg = std::min(g, 0.0);
            } else if (alpha[i] >= opt.C) {
                if (g < pg_min_old) {
                    std::swap(order[s--], order[--active]);
                    continue;
                }
                pg = std::max(g, 0.0);
            } else {
                pg = g;
            }
            pg_max = std::max(pg_max, pg);
            pg_min = std::min(pg_min, pg);
            if (std::abs(pg) <= 1e-12) continue;

            const double old = alpha[i];
            alpha[i] = std::clamp(old - g / diag[i], 0.0, opt.C);
            const double step = (alpha[i] - old) * yi;
            for (std::size_t j = 0; j < d; ++j) model.weights[j] += step * r[j];
            model.bias += step;
        }
        if (pg_max - pg_min <= opt.gradient_tolerance) {
            if (active == n) {
                model.converged = true;
                break;
            }
            // Converged on the shrunk problem; recheck every variable.
            active = n;
            pg_max_old = inf;
            pg_min_old = -inf;
            continue;
        }
        pg_max_old = pg_max > 0.0 ? pg_max : inf;
        pg_min_old = pg_min < 0.0 ? pg_min : -inf;
    }
    model.passes = std::min(model.passes, opt.max_passes);
    return model;
}

LinearSvmModel train_linear_svm(MatrixView x, std::span<const int> labels, std::size_t n_classes,
                                const SvmOptions& opt) {
    std::vector<std::vector<std::size_t>> members(n_classes);
    for (std::size_t i = 0; i < labels.size(); ++i) members.at(static_cast<std::size_t>(labels[i])).push_back(i);
    std::vector<int> present;
    for (std::size_t c = 0; c < n_classes; ++c)
        if (!members[c].empty()) present.push_back(static_cast<int>(c));
    if (present.size() < 2) throw std::invalid_argument("linear SVM needs at least two classes");

    LinearSvmModel model;
    model.n_classes = n_classes;
    std::vector<double> buf;
    std::vector<int> sign;
    for (std::size_t a = 0; a < present.size(); ++a) {
        for (std::size_t b = a + 1; b < present.size(); ++b) {
            const auto& pos = members[static_cast<std::size_t>(present[a])];
            const auto& neg = members[static_cast<std::size_t>(present[b])];
            buf.clear();
            sign.clear();
            for (const auto* group : {&pos, &neg}) {
                for (auto i : *group) {
                    const auto r = x.row(i);
                    buf.insert(buf.end(), r.begin(), r.end());
                    sign.push_back(group == &pos ? 1 : -1);
                }
            }
            BinarySvm m = train_binary_svm({buf.data(), sign.size(), x.cols}, sign, opt);
            m.positive = present[a];
            m.negative = present[b];
            model.machines.push_back(std::move(m));
        }
    }
    return model;
}

int LinearSvmModel::predict(std::span<const double> x) const {
    std::vector<std::size_t> votes(n_classes, 0);
    for (const auto& m : machines) ++votes[static_cast<std::size_t>(m.decision(x) >= 0.0 ? m.positive : m.negative)];
    return static_cast<int>(std::max_element(votes.begin(), votes.end()) - votes.begin());
}

std::size_t LinearSvmModel::unconverged() const noexcept {
    return static_cast<std::size_t>(
        std::count_if(machines.begin(), machines.end(), [](const BinarySvm& m) { return !m.converged; }));
}

NearestCentroid train_nearest_centroid(MatrixView x, std::span<const int> labels, std::size_t n_classes) {
    NearestCentroid nc;
    nc.n_classes = n_classes;
    nc.dims = x.cols;
    nc.centroids.assign(n_classes * x.cols, 0.0);
    nc.present.assign(n_classes, false);
    std::vector<std::size_t> counts(n_classes, 0);
    for (std::size_t i = 0; i < x.rows; ++i) {
        const auto c = static_cast<std::size_t>(labels[i]);
        const auto r = x.row(i);
        for (std::size_t j = 0; j < x.cols; ++j) nc.centroids[c * x.cols + j] += r[j];
        ++counts[c];
    }
    for (std::size_t c = 0; c < n_classes; ++c) {
        if (counts[c] == 0) continue;
        nc.present[c] = true;
        for (std::size_t j = 0; j < x.cols; ++j) nc.centroids[c * x.cols + j] /= static_cast<double>(counts[c]);
    }
    return nc;
}

int NearestCentroid::predict(std::span<const double> x) const {
    int best = -1;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < n_classes; ++c) {
        if (!present[c]) continue;
        double dist = 0.0;
        for (std::size_t j = 0; j < dims; ++j) {
            const double t = x[j] - centroids[c * dims + j];
            dist += t * t;
        }
        if (dist < best_d) {
            best_d = dist;
            best = static_cast<int>(c);
        }
    }
    return best;
}

int predict_knn(MatrixView train, std::span<const int> labels, std::span<const double> x, std::size_t k) {
    std::vector<std::pair<double, std::size_t>> dist(train.rows);
    for (std::size_t i = 0; i < train.rows; ++i) {
        const auto r = train.row(i);
        double s = 0.0;
        for (std::size_t j = 0; j < train.cols; ++j) {
            const double t = x[j] - r[j];
            s += t * t;
        }
        dist[i] = {s, i};
    }
    k = std::clamp<std::size_t>(k, 1, train.rows);
    std::partial_sort(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(k), dist.end());

    int n_classes = 0;
    for (std::size_t i = 0; i < k; ++i) n_classes = std::max(n_classes, labels[dist[i].second] + 1);
    std::vector<std::size_t> votes(static_cast<std::size_t>(n_classes), 0);
    for (std::size_t i = 0; i < k; ++i) ++votes[static_cast<std::size_t>(labels[dist[i].second])];
    const std::size_t top = *std::max_element(votes.begin(), votes.end());
    for (std::size_t i = 0; i < k; ++i) {
        const int c = labels[dist[i].second];
        if (votes[static_cast<std::size_t>(c)] == top) return c;
    }
    return labels[dist[0].second];
}

} // namespace tcbga
