#include "qlth/pruning.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qlth {

std::string PruningMask::to_bitstring() const {
    std::string s(bits.size(), '0');
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i]) s[i] = '1';
    }
    return s;
}

PruningMask PruningMask::from_bitstring(const std::string &s) {
    PruningMask mask;
    mask.bits.resize(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] != '0' && s[i] != '1') {
            throw std::invalid_argument("mask bitstring must be 0/1 only");
        }
        mask.bits[i] = s[i] == '1' ? 1 : 0;
    }
    return mask;
}

PruningMask initial_mask(const ModelSpec &spec) {
    PruningMask mask;
    mask.bits.assign(static_cast<std::size_t>(prunable_count(spec)), 1);
    return mask;
}

PruningMask magnitude_prune(std::span<const double> params,
                            const PruningMask &mask, double fraction) {
    if (!(fraction >= 0.0 && fraction <= 1.0)) {
        throw std::invalid_argument("magnitude_prune: fraction must be in [0, 1]");
    }
    if (params.size() < mask.bits.size()) {
        throw std::invalid_argument("magnitude_prune: params shorter than mask");
    }
    std::vector<int> survivors;
    survivors.reserve(mask.bits.size());
    for (int i = 0; i < mask.size(); ++i) {
        if (mask.bits[i]) survivors.push_back(i);
    }
    const auto n_prune = static_cast<std::size_t>(
        std::floor(fraction * static_cast<double>(survivors.size())));
    PruningMask out = mask;
    if (n_prune == 0) {
        return out;
    }
    // Smallest magnitudes first; ties by lower index.
    std::nth_element(survivors.begin(), survivors.begin() + (n_prune - 1),
                     survivors.end(), [&](int a, int b) {
                         const double ma = std::abs(params[a]);
                         const double mb = std::abs(params[b]);
                         return ma < mb || (ma == mb && a < b);
                     });
    for (std::size_t k = 0; k < n_prune; ++k) {
        out.bits[survivors[k]] = 0;
    }
    return out;
}

void apply_mask(std::span<double> params, const PruningMask &mask) {
    if (params.size() < mask.bits.size()) {
        throw std::invalid_argument("apply_mask: params shorter than mask");
    }
    for (std::size_t i = 0; i < mask.bits.size(); ++i) {
        if (!mask.bits[i]) params[i] = 0.0;
    }
}

std::vector<double> apply_mask_copy(std::span<const double> params,
                                    const PruningMask &mask) {
    std::vector<double> out(params.begin(), params.end());
    apply_mask(out, mask);
    return out;
}

RemainingWeights remaining_weights(const PruningMask &mask) {
    RemainingWeights rw;
    rw.prunable_count = mask.size();
    for (auto b : mask.bits) {
        rw.count += b;
    }
    rw.percent = rw.prunable_count == 0
                     ? 0.0
                     : 100.0 * rw.count / rw.prunable_count;
    return rw;
}

} // namespace qlth
