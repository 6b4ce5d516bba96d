#pragma once

#include <span>

namespace qlth {

// -log(probs[label]) with a 1e-12 probability floor.
double cross_entropy_loss(std::span<const double> probs, int label);

// Numerically stable binary cross-entropy on a raw logit,
// max(l,0) - l*y + log1p(exp(-|l|)); safe for |logit| up to ~1e4.
double bce_with_logits_loss(double logit, int label);

double sigmoid(double logit);

} // namespace qlth
