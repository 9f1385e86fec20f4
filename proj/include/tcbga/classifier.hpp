#pragma once

/// @file classifier.hpp
/// @brief Classifiers behind the wrapper fitness.
///
/// All of them take a dense row-major matrix of already-standardized
/// features. Multi-class linear SVMs are one-vs-one with majority voting;
/// every tie goes to the lower class index.

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace tcbga {

/// Non-owning row-major view.
struct MatrixView {
    const double* data = nullptr;
    std::size_t rows = 0;
    std::size_t cols = 0;

    std::span<const double> row(std::size_t i) const noexcept { return {data + i * cols, cols}; }
};

enum class ClassifierKind { LinearSvm, NearestCentroid, KNearestNeighbor };

std::string to_string(ClassifierKind kind);
/// Accepts "linear-svm", "nearest-centroid", "knn" (or "k-nearest-neighbor").
ClassifierKind parse_classifier(const std::string& name);

struct SvmOptions {
    double C = 1.0;
    /// Stop once the projected-gradient spread over all variables falls
    /// below this.
    double gradient_tolerance = 0.1;
    std::size_t max_passes = 1000;
};

/// Soft-margin linear machine separating `positive` (+1) from `negative`.
struct BinarySvm {
    int positive = 0;
    int negative = 1;
    std::vector<double> weights;
    double bias = 0.0;
    std::size_t passes = 0;
    bool converged = false;

    double decision(std::span<const double> x) const noexcept;
};

struct LinearSvmModel {
    std::size_t n_classes = 0;
    /// Pairs (0,1), (0,2), ..., (1,2), ... in that order.
    std::vector<BinarySvm> machines;

    int predict(std::span<const double> x) const;
    /// Machines that stopped at the pass cap instead of converging.
    std::size_t unconverged() const noexcept;
};

/// Hinge-loss SVM trained by dual coordinate descent with active-set
/// shrinking. The bias is learned as the weight of a constant unit feature. Hitting max_passes is not an
/// error: the model is returned with converged = false.
BinarySvm train_binary_svm(MatrixView x, std::span<const int> y_sign, const SvmOptions& options);

/// One-vs-one over the classes present in `labels` (values in [0, n_classes)).
/// Throws std::invalid_argument when fewer than two classes are present.
LinearSvmModel train_linear_svm(MatrixView x, std::span<const int> labels, std::size_t n_classes,
                                const SvmOptions& options = {});

struct NearestCentroid {
    std::size_t n_classes = 0;
    std::size_t dims = 0;
    std::vector<double> centroids;
    std::vector<bool> present;

    int predict(std::span<const double> x) const;
};

NearestCentroid train_nearest_centroid(MatrixView x, std::span<const int> labels, std::size_t n_classes);

/// k-NN prediction against a training matrix; Euclidean distance, majority
/// vote, vote ties resolved toward the class of the closest tied neighbor.
int predict_knn(MatrixView train, std::span<const int> labels, std::span<const double> x, std::size_t k);

} // namespace tcbga
