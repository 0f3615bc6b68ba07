#pragma once

#include <cstdint>
#include <optional>

#include "vesselseg/types.hpp"

namespace vseg {

struct ConfusionCounts {
    std::uint64_t tp = 0;
    std::uint64_t fp = 0;
    std::uint64_t tn = 0;
    std::uint64_t fn = 0;

    std::uint64_t total() const { return tp + fp + tn + fn; }
};

struct Rates {
    double sensitivity = 0.0;
    double specificity = 0.0;
    double accuracy = 0.0;
};

/// Pixel confusion counts over the region of interest (all pixels when roi is
/// absent). Positive class is vessel.
ConfusionCounts confusion(const BinaryMask& pred, const BinaryMask& gt,
                          const BinaryMask* roi = nullptr);

/// se = tp/(tp+fn), sp = tn/(tn+fp), acc = (tp+tn)/total. Throws
/// UndefinedRateError when a denominator is zero.
Rates rates(const ConfusionCounts& c);

/// Area under the ROC curve by the rank statistic: the probability that a
/// random positive outscores a random negative, ties counted half. Equals the
/// trapezoidal area under the full ROC sweep.
double auc(const GrayImage& scores, const BinaryMask& gt, const BinaryMask* roi = nullptr);

}  // namespace vseg
