#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "qlth/models.hpp"

namespace qlth {

// Keep/prune bits over the prunable prefix of a parameter vector
// (rotation angles for VQCs, weight-matrix entries for the SNN).
struct PruningMask {
    std::vector<std::uint8_t> bits; // 1 = keep, 0 = pruned

    int size() const { return static_cast<int>(bits.size()); }
    std::string to_bitstring() const;
    static PruningMask from_bitstring(const std::string &s);
};

struct RemainingWeights {
    int count = 0;
    int prunable_count = 0;
    double percent = 0.0; // 100 * count / prunable_count
};

// All-ones mask over the spec's prunable range.
PruningMask initial_mask(const ModelSpec &spec);

// Zeroes the mask bits of the floor(fraction * surviving) smallest
// surviving weights by |value|, globally across the prunable range.
// Ties prune the lower index first; already-pruned bits stay pruned.
PruningMask magnitude_prune(std::span<const double> params,
                            const PruningMask &mask, double fraction);

// Pruned positions forced to exactly zero; the rest (including any
// parameters past the prunable range) untouched.
void apply_mask(std::span<double> params, const PruningMask &mask);
std::vector<double> apply_mask_copy(std::span<const double> params,
                                    const PruningMask &mask);

RemainingWeights remaining_weights(const PruningMask &mask);

} // namespace qlth
