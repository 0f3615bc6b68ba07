#include "vesselseg/metrics.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

#include "vesselseg/errors.hpp"

namespace vseg {

ConfusionCounts confusion(const BinaryMask& pred, const BinaryMask& gt, const BinaryMask* roi) {
    require_same_dims(pred.width, pred.height, gt.width, gt.height, "confusion");
    if (roi) require_same_dims(pred.width, pred.height, roi->width, roi->height, "confusion roi");

    std::uint64_t tp = 0, fp = 0, tn = 0, fn = 0;
    const std::int64_t n = static_cast<std::int64_t>(pred.data.size());
#pragma omp parallel for schedule(static) reduction(+ : tp, fp, tn, fn)
    for (std::int64_t i = 0; i < n; ++i) {
        if (roi && !roi->data[i]) continue;
        const bool p = pred.data[i] != 0;
        const bool g = gt.data[i] != 0;
        tp += p && g;
        fp += p && !g;
        tn += !p && !g;
        fn += !p && g;
    }
    return {tp, fp, tn, fn};
}

Rates rates(const ConfusionCounts& c) {
    if (c.tp + c.fn == 0)
        throw UndefinedRateError("sensitivity undefined: no positive pixels (tp+fn == 0)");
    if (c.tn + c.fp == 0)
        throw UndefinedRateError("specificity undefined: no negative pixels (tn+fp == 0)");
    Rates r;
    r.sensitivity = static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fn);
    r.specificity = static_cast<double>(c.tn) / static_cast<double>(c.tn + c.fp);
    r.accuracy = static_cast<double>(c.tp + c.tn) / static_cast<double>(c.total());
    return r;
}

double auc(const GrayImage& scores, const BinaryMask& gt, const BinaryMask* roi) {
    require_same_dims(scores.width, scores.height, gt.width, gt.height, "auc");
    if (roi) require_same_dims(scores.width, scores.height, roi->width, roi->height, "auc roi");

    std::vector<std::uint32_t> order;
    order.reserve(scores.data.size());
    for (std::uint32_t i = 0; i < scores.data.size(); ++i)
        if (!roi || roi->data[i]) order.push_back(i);

    std::uint64_t positives = 0;
    for (auto i : order) positives += gt.data[i] != 0;
    const std::uint64_t negatives = order.size() - positives;
    if (positives == 0 || negatives == 0)
        throw UndefinedRateError("auc undefined: region contains a single class");

    std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
        return scores.data[a] < scores.data[b];
    });

    // midranks over tie groups, doubled to stay integral; the positive rank
    // sum then gives the Mann-Whitney U statistic
    std::uint64_t pos_rank2_sum = 0;
    size_t i = 0;
    while (i < order.size()) {
        size_t j = i;
        while (j < order.size() && scores.data[order[j]] == scores.data[order[i]]) ++j;
        // ranks i+1 .. j (1-based); doubled midrank = i+1 + j
        const std::uint64_t midrank2 = static_cast<std::uint64_t>(i) + 1 + j;
        for (size_t k = i; k < j; ++k)
            if (gt.data[order[k]]) pos_rank2_sum += midrank2;
        i = j;
    }

    const double u = 0.5 * static_cast<double>(pos_rank2_sum) -
                     0.5 * static_cast<double>(positives) * static_cast<double>(positives + 1);
    return u / (static_cast<double>(positives) * static_cast<double>(negatives));
}

}  // namespace vseg
