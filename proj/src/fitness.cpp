#include "tcbga/fitness.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <stdexcept>

#include "tcbga/error.hpp"
#include "tcbga/random.hpp"

namespace tcbga {

void FitnessProtocol::validate() const {
    if (folds < 2) throw ConfigError("folds must be at least 2");
    if (regularization <= 0.0) throw ConfigError("regularization must be positive");
    if (neighbors < 1) throw ConfigError("neighbors must be at least 1");
    if (subsample && !(*subsample > 0.0 && *subsample <= 1.0))
        throw ConfigError("subsample must lie in (0, 1]");
}

WrapperFitness::WrapperFitness(const Dataset& ds, FitnessProtocol protocol)
    : protocol_(std::move(protocol)), n_features_(ds.n_features), n_classes_(ds.n_classes()) {
    protocol_.validate();
    if (n_classes_ < 2) throw DataError("fitness needs at least two classes");
    folds_ = stratified_folds(ds, protocol_.folds, protocol_.fold_seed);

    const std::size_t nf = n_features_;
    Rng sub_rng(stream_seed(protocol_.fold_seed, 0x5ab5ULL));
    for (std::size_t f = 0; f < folds_.k; ++f) {
        auto train_rows = folds_.train_indices(f);
        const auto test_rows = folds_.test_indices(f);

        if (protocol_.subsample && *protocol_.subsample < 1.0) {
            // Per-class random sample, keeping at least one row per class.
            std::vector<std::vector<std::size_t>> by_class(n_classes_);
            for (auto r : train_rows) by_class[static_cast<std::size_t>(ds.labels[r])].push_back(r);
            train_rows.clear();
            for (auto& rows : by_class) {
                if (rows.empty()) continue;
                std::shuffle(rows.begin(), rows.end(), sub_rng);
                const auto keep = std::max<std::size_t>(
                    1, static_cast<std::size_t>(std::ceil(*protocol_.subsample * static_cast<double>(rows.size()))));
                train_rows.insert(train_rows.end(), rows.begin(), rows.begin() + static_cast<std::ptrdiff_t>(keep));
            }
            std::sort(train_rows.begin(), train_rows.end());
        }

        std::vector<double> mean(nf, 0.0);
        std::vector<double> scale(nf, 0.0);
        for (auto r : train_rows)
            for (std::size_t j = 0; j < nf; ++j) mean[j] += ds.at(r, j);
        for (auto& m : mean) m /= static_cast<double>(train_rows.size());
        for (auto r : train_rows)
            for (std::size_t j = 0; j < nf; ++j) {
                const double t = ds.at(r, j) - mean[j];
                scale[j] += t * t;
            }
        for (auto& s : scale) {
            s = std::sqrt(s / static_cast<double>(train_rows.size()));
            if (s <= 1e-12) s = 1.0;
        }

        Fold fold;
        auto fill = [&](const std::vector<std::size_t>& rows, std::vector<double>& out, std::vector<int>& labels) {
            out.reserve(rows.size() * nf);
            for (auto r : rows) {
                for (std::size_t j = 0; j < nf; ++j) out.push_back((ds.at(r, j) - mean[j]) / scale[j]);
                labels.push_back(ds.labels[r]);
            }
        };
        fill(train_rows, fold.train, fold.train_labels);
        fill(test_rows, fold.test, fold.test_labels);
        fold_data_.push_back(std::move(fold));
    }
}

std::vector<std::string> WrapperFitness::warnings() const {
    auto out = folds_.warnings;
    if (const auto caps = solver_caps_.load(); caps > 0)
        out.push_back(std::to_string(caps) + " SVM trainings stopped at the pass cap");
    return out;
}

double WrapperFitness::fold_accuracy(const Fold& fold, const std::vector<std::size_t>& columns) const {
    const std::size_t nf = n_features_;
    const std::size_t d = columns.size();
    auto gather = [&](const std::vector<double>& src) {
        const std::size_t rows = src.size() / nf;
        std::vector<double> out(rows * d);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < d; ++j) out[i * d + j] = src[i * nf + columns[j]];
        return out;
    };
    const auto train = gather(fold.train);
    const auto test = gather(fold.test);
    const MatrixView train_view{train.data(), fold.train_labels.size(), d};
    const MatrixView test_view{test.data(), fold.test_labels.size(), d};

    std::size_t correct = 0;
    switch (protocol_.classifier) {
    case ClassifierKind::LinearSvm: {
        SvmOptions opt;
        opt.C = protocol_.regularization;
        const auto model = train_linear_svm(train_view, fold.train_labels, n_classes_, opt);
        if (model.unconverged() > 0) solver_caps_.fetch_add(1);
        for (std::size_t i = 0; i < test_view.rows; ++i)
            correct += model.predict(test_view.row(i)) == fold.test_labels[i];
        break;
    }
    case ClassifierKind::NearestCentroid: {
        const auto model = train_nearest_centroid(train_view, fold.train_labels, n_classes_);
        for (std::size_t i = 0; i < test_view.rows; ++i)
            correct += model.predict(test_view.row(i)) == fold.test_labels[i];
        break;
    }
    case ClassifierKind::KNearestNeighbor:
        for (std::size_t i = 0; i < test_view.rows; ++i)
            correct += predict_knn(train_view, fold.train_labels, test_view.row(i), protocol_.neighbors) ==
                       fold.test_labels[i];
        break;
    }
    return static_cast<double>(correct) / static_cast<double>(fold.test_labels.size());
}

double WrapperFitness::accuracy(const Mask& mask) const {
    if (mask.size() != n_features_) throw std::invalid_argument("mask length differs from feature count");
    const auto columns = mask.set_indices();
    if (columns.empty()) throw std::invalid_argument("cannot evaluate an empty feature subset");
    evaluations_.fetch_add(1);
    double sum = 0.0;
    for (const auto& fold : fold_data_) sum += fold_accuracy(fold, columns);
    return 100.0 * sum / static_cast<double>(fold_data_.size());
}

double kfold_accuracy(const Dataset& dataset, const Mask& mask, const FitnessProtocol& protocol) {
    return WrapperFitness(dataset, protocol).accuracy(mask);
}

std::optional<double> FitnessCache::find(const Mask& mask) const {
    std::shared_lock lock(mutex_);
    if (auto it = values_.find(mask); it != values_.end()) return it->second;
    return std::nullopt;
}

void FitnessCache::insert(const Mask& mask, double value) {
    std::unique_lock lock(mutex_);
    values_.insert_or_assign(mask, value);
}

std::size_t FitnessCache::size() const {
    std::shared_lock lock(mutex_);
    return values_.size();
}

double cached_fitness(FitnessCache& cache, const Mask& mask, const FitnessFn& evaluate) {
    if (auto hit = cache.find(mask)) {
        cache.hits_.fetch_add(1);
        return *hit;
    }
    cache.misses_.fetch_add(1);
    const double value = evaluate(mask);
    cache.insert(mask, value);
    return value;
}

FitnessFn with_cache(FitnessCache& cache, FitnessFn evaluate) {
    return [&cache, evaluate = std::move(evaluate)](const Mask& mask) {
        return cached_fitness(cache, mask, evaluate);
    };
}

} // namespace tcbga
