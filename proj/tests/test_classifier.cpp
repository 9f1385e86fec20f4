#include "doctest.h"

#include <tuple>

#include "tcbga/classifier.hpp"
#include "tcbga/error.hpp"
#include "tcbga/random.hpp"

using namespace tcbga;

namespace {

struct Blobs {
    std::vector<double> x;
    std::vector<int> labels;
    std::size_t rows = 0;
    std::size_t cols = 0;
    MatrixView view() const { return {x.data(), rows, cols}; }
};

// Gaussian blobs centred at 4 * (c, -c, ...) with unit spread.
Blobs blobs(std::size_t per_class, std::size_t classes, std::size_t dims, std::uint64_t seed) {
    Rng rng(seed);
    std::normal_distribution<double> noise(0.0, 1.0);
    Blobs b;
    b.cols = dims;
    for (std::size_t c = 0; c < classes; ++c)
        for (std::size_t i = 0; i < per_class; ++i) {
            for (std::size_t j = 0; j < dims; ++j)
                b.x.push_back(4.0 * static_cast<double>(c) * (j % 2 ? -1.0 : 1.0) + noise(rng));
            b.labels.push_back(static_cast<int>(c));
        }
    b.rows = b.labels.size();
    return b;
}

} // namespace

TEST_CASE("classifier names") {
    CHECK(parse_classifier("svm") == ClassifierKind::LinearSvm);
    CHECK(parse_classifier(to_string(ClassifierKind::KNearestNeighbor)) == ClassifierKind::KNearestNeighbor);
    CHECK(parse_classifier("centroid") == ClassifierKind::NearestCentroid);
    CHECK_THROWS_AS(parse_classifier("forest"), ConfigError);
}

TEST_CASE("binary SVM separates a separable 1-D problem") {
    const std::vector<double> x{-3, -2, -1, 1, 2, 3};
    const std::vector<int> y{-1, -1, -1, 1, 1, 1};
    const auto m = train_binary_svm({x.data(), 6, 1}, y, {});
    CHECK(m.converged);
    for (std::size_t i = 0; i < 6; ++i) CHECK((m.decision({&x[i], 1}) > 0) == (y[i] > 0));
}

TEST_CASE("dual solution satisfies the margin conditions") {
    // Points with y f(x) > 1 sit outside the margin; with C large enough the
    // separable set has every point at y f(x) >= 1 - tolerance.
    const auto b = blobs(40, 2, 3, 4);
    std::vector<int> y;
    for (int l : b.labels) y.push_back(l == 0 ? 1 : -1);
    SvmOptions opt;
    opt.C = 100.0;
    opt.gradient_tolerance = 1e-6;
    const auto m = train_binary_svm(b.view(), y, opt);
    CHECK(m.converged);
    for (std::size_t i = 0; i < b.rows; ++i) CHECK(y[i] * m.decision(b.view().row(i)) >= 1.0 - 1e-3);
}

TEST_CASE("one-vs-one on three blobs") {
    const auto train = blobs(30, 3, 2, 5);
    const auto test = blobs(20, 3, 2, 6);
    const auto model = train_linear_svm(train.view(), train.labels, 3);
    CHECK(model.machines.size() == 3);
    CHECK(model.machines[0].positive == 0);
    CHECK(model.machines[0].negative == 1);
    CHECK(model.machines[2].positive == 1);
    std::size_t correct = 0;
    for (std::size_t i = 0; i < test.rows; ++i) correct += model.predict(test.view().row(i)) == test.labels[i];
    CHECK(correct >= 57);
}

TEST_CASE("vote ties go to the lower class") {
    LinearSvmModel m;
    m.n_classes = 3;
    // 0 beats 1, 1 beats 2, 2 beats 0: one vote each.
    using Spec = std::tuple<int, int, double>;
    for (auto [p, n, bias] : {Spec{0, 1, 1.0}, Spec{0, 2, -1.0}, Spec{1, 2, 1.0}}) {
        BinarySvm b;
        b.positive = p;
        b.negative = n;
        b.weights = {0.0};
        b.bias = bias;
        m.machines.push_back(b);
    }
    const double x = 0.0;
    CHECK(m.predict({&x, 1}) == 0);
}

TEST_CASE("SVM training needs two classes") {
    const std::vector<double> x{1, 2};
    const std::vector<int> labels{1, 1};
    CHECK_THROWS_AS(train_linear_svm({x.data(), 2, 1}, labels, 3), std::invalid_argument);
}

TEST_CASE("nearest centroid and knn on blobs") {
    const auto train = blobs(25, 4, 3, 7);
    const auto test = blobs(10, 4, 3, 8);
    const auto nc = train_nearest_centroid(train.view(), train.labels, 4);
    std::size_t nc_ok = 0;
    std::size_t knn_ok = 0;
    for (std::size_t i = 0; i < test.rows; ++i) {
        nc_ok += nc.predict(test.view().row(i)) == test.labels[i];
        knn_ok += predict_knn(train.view(), train.labels, test.view().row(i), 5) == test.labels[i];
    }
    CHECK(nc_ok >= 38);
    CHECK(knn_ok >= 38);
}

TEST_CASE("knn with k = 1 returns the nearest label") {
    const std::vector<double> x{0.0, 10.0, 20.0};
    const std::vector<int> labels{2, 0, 1};
    const double q = 11.0;
    CHECK(predict_knn({x.data(), 3, 1}, labels, {&q, 1}, 1) == 0);
    // k clamps to 3; a three-way tie goes to the nearest neighbour's class.
    CHECK(predict_knn({x.data(), 3, 1}, labels, {&q, 1}, 10) == 0);
    const double far = 1.0;
    CHECK(predict_knn({x.data(), 3, 1}, labels, {&far, 1}, 10) == 2);
}
