#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "qlth/models.hpp"

using namespace qlth;
using std::numbers::pi;

namespace {

ModelSpec vqc_spec(Family family, int features, int classes, int layers,
                   double range = 1.0, bool reupload = false,
                   std::uint64_t seed = 0) {
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

ModelSpec snn_spec(int features, int classes, std::uint64_t seed = 0) {
    ModelSpec spec;
    spec.family = Family::Snn;
    spec.n_features = features;
    spec.n_classes = classes;
    spec.seed = seed;
    return spec;
}

} // namespace

TEST_CASE("count_parameters known totals") {
    CHECK(count_parameters(vqc_spec(Family::Bvqc, 4, 2, 10)) == 122);
    CHECK(count_parameters(vqc_spec(Family::Bvqc, 13, 2, 14)) == 548);
    CHECK(count_parameters(vqc_spec(Family::Mvqc, 4, 2, 15)) == 184);
    CHECK(count_parameters(vqc_spec(Family::Mvqc, 4, 3, 16)) == 198);
    CHECK(count_parameters(vqc_spec(Family::Mvqc, 13, 2, 9)) == 355);
    CHECK(count_parameters(vqc_spec(Family::Mvqc, 13, 3, 16)) == 630);
    CHECK(count_parameters(snn_spec(4, 2)) == 170);
    CHECK(count_parameters(snn_spec(4, 3)) == 195);
    CHECK(count_parameters(snn_spec(13, 2)) == 386);
    CHECK(count_parameters(snn_spec(13, 3)) == 411);
}

TEST_CASE("prunable range excludes head and biases") {
    CHECK(prunable_count(vqc_spec(Family::Mvqc, 13, 3, 16)) == 624);
    CHECK(prunable_count(vqc_spec(Family::Bvqc, 4, 2, 10)) == 120);
    CHECK(prunable_count(snn_spec(4, 2)) == 144); // 4*24 + 24*2
}

TEST_CASE("init_params is seed-deterministic and respects the range") {
    const auto spec =
        vqc_spec(Family::Bvqc, 4, 2, 10, 1.7834073464102067, false, 3);
    const auto a = init_params(spec);
    const auto b = init_params(spec);
    CHECK(a.size() == 122);
    CHECK(a == b);
    for (int i = 0; i < prunable_count(spec); ++i) {
        CHECK(std::abs(a[i]) <= spec.init_uniform_range);
    }
    CHECK(a[120] == 1.0); // head scale
    CHECK(a[121] == 0.0); // head bias

    auto different = spec;
    different.seed = 4;
    CHECK(init_params(different) != a);

    SUBCASE("degenerate range zero") {
        auto zero = spec;
        zero.init_uniform_range = 0.0;
        const auto p = init_params(zero);
        for (int i = 0; i < prunable_count(zero); ++i) CHECK(p[i] == 0.0);
        CHECK(p[120] == 1.0);
        CHECK(p[121] == 0.0);
    }
    SUBCASE("snn init bounded by fan-in") {
        const auto s = snn_spec(4, 3, 9);
        const auto p = init_params(s);
        CHECK(p.size() == 195);
        for (int i = 0; i < 24 * 4; ++i) CHECK(std::abs(p[i]) <= 0.5);
        for (int i = 24 * 4; i < 24 * 4 + 3 * 24; ++i) {
            CHECK(std::abs(p[i]) <= 1.0 / std::sqrt(24.0));
        }
    }
}

TEST_CASE("spec validation") {
    CHECK_THROWS_AS(validate_spec(vqc_spec(Family::Bvqc, 4, 3, 10)),
                    std::invalid_argument);
    CHECK_THROWS_AS(validate_spec(vqc_spec(Family::Mvqc, 2, 3, 10)),
                    std::invalid_argument);
    CHECK_THROWS_AS(validate_spec(vqc_spec(Family::Mvqc, 4, 3, 0)),
                    std::invalid_argument);
    CHECK_NOTHROW(validate_spec(vqc_spec(Family::Mvqc, 4, 3, 1)));
}

TEST_CASE("mvqc_forward probabilities sum to one") {
    const auto spec = vqc_spec(Family::Mvqc, 4, 3, 2, 0.9, false, 17);
    const auto params = init_params(spec);
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> feat(0.0, pi);
    for (int trial = 0; trial < 5; ++trial) {
        std::vector<double> x(4);
        for (auto &v : x) v = feat(rng);
        const auto probs = mvqc_forward(spec, params, x);
        double sum = 0.0;
        for (double p : probs) {
            CHECK(p > 0.0);
            CHECK(p < 1.0);
            sum += p;
        }
        CHECK(std::abs(sum - 1.0) < 1e-12);
    }
}

TEST_CASE("all-zero rotations and zero input give uniform probabilities") {
    auto spec = vqc_spec(Family::Mvqc, 4, 3, 2, 0.0);
    const auto params = init_params(spec); // rotations 0, head (1, 0)
    const std::vector<double> x(4, 0.0);
    const auto probs = mvqc_forward(spec, params, x);
    for (double p : probs) CHECK(p == doctest::Approx(1.0 / 3).epsilon(1e-12));
}

TEST_CASE("two-qubit single-layer VQC matches the dense oracle end to end") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> angle(-pi, pi);
    std::uniform_real_distribution<double> feat(0.0, pi);

    for (int trial = 0; trial < 10; ++trial) {
        std::vector<double> params(10);
        for (auto &p : params) p = angle(rng);
        params[6] = 1.3; // head scales/biases
        params[7] = -0.2;
        params[8] = 0.7;
        params[9] = 0.05;
        const std::vector<double> x = {feat(rng), feat(rng)};

        // Dense route: embed, two Rots, CNOT ring.
        oracle::CVec state(4);
        state[0] = 1.0;
        state =
            oracle::matvec(oracle::single_qubit_full(2, 0, rx_matrix(x[0])), state);
        state =
            oracle::matvec(oracle::single_qubit_full(2, 1, rx_matrix(x[1])), state);
        state = oracle::matvec(
            oracle::single_qubit_full(
                2, 0, rot_matrix(params[0], params[1], params[2])),
            state);
        state = oracle::matvec(
            oracle::single_qubit_full(
                2, 1, rot_matrix(params[3], params[4], params[5])),
            state);
        state = oracle::matvec(oracle::cnot_full(2, 0, 1), state);
        state = oracle::matvec(oracle::cnot_full(2, 1, 0), state);
        const double z0 = std::norm(state[0]) + std::norm(state[1]) -
                          std::norm(state[2]) - std::norm(state[3]);
        const double z1 = std::norm(state[0]) - std::norm(state[1]) +
                          std::norm(state[2]) - std::norm(state[3]);

        {
            const auto spec = vqc_spec(Family::Mvqc, 2, 2, 1);
            const auto probs = mvqc_forward(spec, params, x);
            const std::vector<double> logits = {1.3 * z0 - 0.2, 0.7 * z1 + 0.05};
            const auto expected = softmax(logits);
            CHECK(std::abs(probs[0] - expected[0]) < 1e-10);
            CHECK(std::abs(probs[1] - expected[1]) < 1e-10);
        }
        {
            const auto spec = vqc_spec(Family::Bvqc, 2, 2, 1);
            std::vector<double> bparams(params.begin(), params.begin() + 8);
            const double logit = bvqc_forward(spec, bparams, x);
            CHECK(std::abs(logit - (1.3 * z0 - 0.2)) < 1e-10);
        }
    }
}

TEST_CASE("bvqc_forward basics") {
    auto spec = vqc_spec(Family::Bvqc, 4, 2, 3, 0.0);
    const auto params = init_params(spec); // rotations 0, head (1, 0)
    const std::vector<double> x(4, 0.0);
    CHECK(bvqc_forward(spec, params, x) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(predict(spec, params, x) == 1);
}

TEST_CASE("snn_forward zero weights give uniform probabilities") {
    const auto spec = snn_spec(4, 3);
    std::vector<double> params(count_parameters(spec), 0.0);
    const std::vector<double> x = {0.3, 0.1, 0.9, 0.5};
    const auto probs = snn_forward(spec, params, x);
    for (double p : probs) CHECK(p == doctest::Approx(1.0 / 3).epsilon(1e-12));
}

TEST_CASE("snn_forward tiny instance against hand arithmetic") {
    auto spec = snn_spec(2, 2);
    spec.hidden_width = 2;
    // layout: W1 row-major, W2 row-major, b1, b2
    const std::vector<double> params = {1.0, 0.0, 0.0,   -1.0, 1.0, 2.0,
                                        0.0, 1.0, 0.5, -0.25, 0.0, 0.1};
    const std::vector<double> x = {0.2, 0.4};
    // z1 = (0.7, -0.65), h = (0.7, 0), logits = (0.7, 0.1)
    const auto probs = snn_forward(spec, params, x);
    const double e0 = std::exp(0.7), e1 = std::exp(0.1);
    CHECK(probs[0] == doctest::Approx(e0 / (e0 + e1)).epsilon(1e-14));
    CHECK(probs[1] == doctest::Approx(e1 / (e0 + e1)).epsilon(1e-14));
}

TEST_CASE("data re-uploading changes deep circuits only") {
    const std::vector<double> x = {0.4, 1.1, 2.0, 0.7};
    SUBCASE("identical for a single layer") {
        auto plain = vqc_spec(Family::Mvqc, 4, 3, 1, 0.8, false, 5);
        auto dru = plain;
        dru.data_reuploading = true;
        const auto params = init_params(plain);
        const auto a = mvqc_forward(plain, params, x);
        const auto b = mvqc_forward(dru, params, x);
        for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);
    }
    SUBCASE("distinct for two layers") {
        auto plain = vqc_spec(Family::Mvqc, 4, 3, 2, 0.8, false, 5);
        auto dru = plain;
        dru.data_reuploading = true;
        const auto params = init_params(plain);
        const auto a = mvqc_forward(plain, params, x);
        const auto b = mvqc_forward(dru, params, x);
        double diff = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) diff += std::abs(a[i] - b[i]);
        CHECK(diff > 1e-6);
    }
}

TEST_CASE("forward input validation") {
    const auto spec = vqc_spec(Family::Mvqc, 4, 3, 2);
    const auto params = init_params(spec);
    CHECK_THROWS_AS(mvqc_forward(spec, params, std::vector<double>(3, 0.0)),
                    std::invalid_argument);
    const std::vector<double> short_params(params.begin(), params.end() - 1);
    CHECK_THROWS_AS(
        mvqc_forward(spec, short_params, std::vector<double>(4, 0.0)),
        std::invalid_argument);
}
