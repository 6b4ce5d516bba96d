#include "qlth/losses.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qlth {

double cross_entropy_loss(std::span<const double> probs, int label) {
    if (label < 0 || label >= static_cast<int>(probs.size())) {
        throw std::invalid_argument("cross_entropy_loss: label " +
                                    std::to_string(label) + " out of range");
    }
    const double p = probs[label] > 1e-12 ? probs[label] : 1e-12;
    return -std::log(p);
}

double bce_with_logits_loss(double logit, int label) {
    const double y = label != 0 ? 1.0 : 0.0;
    return std::max(logit, 0.0) - logit * y + std::log1p(std::exp(-std::abs(logit)));
}

double sigmoid(double logit) {
    if (logit >= 0.0) {
        return 1.0 / (1.0 + std::exp(-logit));
    }
    const double e = std::exp(logit);
    return e / (1.0 + e);
}

} // namespace qlth
