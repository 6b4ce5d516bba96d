#include <doctest.h>

#include <cmath>
#include <cstring>
#include <numbers>
#include <random>

#include "qlth/diff.hpp"
#include "qlth/models.hpp"

using namespace qlth;
using std::numbers::pi;

namespace {

ModelSpec make_spec(Family family, int features, int classes, int layers,
                    double range, bool reupload, std::uint64_t seed) {
    ModelSpec spec;
    spec.family = family;
    spec.n_features = features;
    spec.n_classes = classes;
    spec.n_layers = layers;
    spec.init_uniform_range = range;
    spec.data_reuploading = reupload;
    spec.seed = seed;
    return spec;
}

struct OwnedBatch {
    std::vector<double> features;
    std::vector<int> labels;
    int n_cols;
    BatchView view() const { return {features, labels, n_cols}; }
};

OwnedBatch random_batch(int rows, int cols, int classes, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> feat(0.0, pi);
    OwnedBatch batch;
    batch.n_cols = cols;
    for (int i = 0; i < rows; ++i) {
        for (int c = 0; c < cols; ++c) batch.features.push_back(feat(rng));
        batch.labels.push_back(static_cast<int>(rng() % classes));
    }
    return batch;
}

double max_abs_diff(const std::vector<double> &a, const std::vector<double> &b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        worst = std::max(worst, std::abs(a[i] - b[i]));
    }
    return worst;
}

} // namespace

TEST_CASE("expectation gradient of <Z> after a single RY-like rotation") {
    // One wire, one Rot gate, observable Z: <Z> = cos(b), d/db = -sin(b).
    Circuit circuit;
    circuit.n_qubits = 1;
    GateOp op;
    op.kind = GateOp::Kind::Rot;
    op.qubit = 0;
    op.param_base = 0;
    circuit.ops.push_back(op);
    const std::vector<double> obs = {1.0};

    for (double theta : {0.0, pi / 2, 0.3, -1.2}) {
        const std::vector<double> params = {0.0, theta, 0.0};
        const auto grad = expectation_gradient(circuit, params, {}, obs);
        CHECK(grad[1] == doctest::Approx(-std::sin(theta)).epsilon(1e-12));
    }
}

TEST_CASE("loss gradient matches central finite differences") {
    struct Instance {
        ModelSpec spec;
        std::uint64_t batch_seed;
    };
    const Instance instances[] = {
        {make_spec(Family::Mvqc, 4, 3, 2, 1.0, false, 11), 1},
        {make_spec(Family::Mvqc, 4, 3, 2, 0.5, true, 12), 2},
        {make_spec(Family::Mvqc, 3, 2, 3, 1.5, false, 13), 3},
        {make_spec(Family::Bvqc, 4, 2, 2, 1.0, false, 14), 4},
        {make_spec(Family::Bvqc, 2, 2, 4, 0.8, true, 15), 5},
        {make_spec(Family::Snn, 4, 3, 0, 0.0, false, 16), 6},
        {make_spec(Family::Snn, 5, 2, 0, 0.0, false, 17), 7},
    };
    for (const auto &inst : instances) {
        CAPTURE(family_name(inst.spec.family));
        const auto params = init_params(inst.spec);
        const auto batch = random_batch(4, inst.spec.n_features,
                                        inst.spec.n_classes, inst.batch_seed);
        const auto exact = loss_gradient(inst.spec, params, batch.view());
        const auto fd =
            finite_difference_oracle(inst.spec, params, batch.view(), 1e-4);
        CHECK(max_abs_diff(exact, fd) < 1e-5);
    }
}

TEST_CASE("finite differences converge quadratically") {
    const auto spec = make_spec(Family::Bvqc, 3, 2, 2, 1.0, false, 21);
    const auto params = init_params(spec);
    const auto batch = random_batch(3, 3, 2, 9);
    const auto exact = loss_gradient(spec, params, batch.view());
    const auto fd_h =
        finite_difference_oracle(spec, params, batch.view(), 2e-2);
    const auto fd_h2 =
        finite_difference_oracle(spec, params, batch.view(), 1e-2);
    const double err_h = max_abs_diff(exact, fd_h);
    const double err_h2 = max_abs_diff(exact, fd_h2);
    CHECK(err_h > 0.0);
    const double ratio = err_h / err_h2;
    CHECK(ratio > 2.0);
    CHECK(ratio < 8.0);
}

TEST_CASE("finite differences on rotation-independent loss are exactly zero") {
    const auto spec = make_spec(Family::Mvqc, 3, 2, 2, 1.0, false, 33);
    auto params = init_params(spec);
    const int head = prunable_count(spec);
    params[head] = 0.0; // zero head scales: logits constant in the circuit
    params[head + 2] = 0.0;
    const auto batch = random_batch(3, 3, 2, 10);
    const auto fd = finite_difference_oracle(spec, params, batch.view(), 1e-4);
    for (int i = 0; i < head; ++i) CHECK(fd[i] == 0.0);
}

TEST_CASE("masked parameters report zero gradient") {
    const auto spec = make_spec(Family::Mvqc, 4, 3, 2, 1.0, false, 41);
    const auto params = init_params(spec);
    const auto batch = random_batch(4, 4, 3, 11);
    std::vector<std::uint8_t> mask(prunable_count(spec), 1);
    for (std::size_t i = 0; i < mask.size(); i += 3) mask[i] = 0;
    const auto grad = loss_gradient(spec, params, batch.view(), mask);
    for (std::size_t i = 0; i < mask.size(); ++i) {
        if (mask[i] == 0) CHECK(grad[i] == 0.0);
    }
}

TEST_CASE("gradients are bitwise deterministic") {
    const auto spec = make_spec(Family::Mvqc, 4, 3, 3, 1.0, true, 51);
    const auto params = init_params(spec);
    const auto batch = random_batch(5, 4, 3, 12);
    const auto a = loss_gradient(spec, params, batch.view());
    const auto b = loss_gradient(spec, params, batch.view());
    REQUIRE(a.size() == b.size());
    CHECK(std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0);
}

TEST_CASE("batch validation") {
    const auto spec = make_spec(Family::Mvqc, 4, 3, 2, 1.0, false, 61);
    const auto params = init_params(spec);
    OwnedBatch empty;
    empty.n_cols = 4;
    CHECK_THROWS_AS(loss_gradient(spec, params, empty.view()),
                    std::invalid_argument);
    CHECK_THROWS_AS(
        finite_difference_oracle(spec, params, random_batch(2, 4, 3, 1).view(),
                                 0.0),
        std::invalid_argument);
}
