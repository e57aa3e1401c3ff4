#include "lofstream/evaluation.hpp"

#include "lofstream/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace lofstream {

void ThresholdRule::validate() const {
    if (!(contamination > 0.0 && contamination < 1.0))
        throw InvalidArgument("contamination must lie strictly between 0 and 1");
}

std::size_t ThresholdRule::flag_count(std::size_t n) const {
    validate();
    const double exact = contamination * static_cast<double>(n);
    const double nearest = std::round(exact);
    const double count = std::abs(exact - nearest) <= 1e-9 * std::max(1.0, exact) ? nearest : std::ceil(exact);
    return std::min(n, static_cast<std::size_t>(count));
}

std::vector<Label> flag_outliers(std::span<const double> scores, const ThresholdRule& rule) {
    if (scores.empty()) throw InvalidArgument("cannot flag outliers in an empty score array");
    for (double s : scores)
        if (!std::isfinite(s)) throw InvalidArgument("scores must be finite");
    const std::size_t count = rule.flag_count(scores.size());

    std::vector<std::size_t> order(scores.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    const auto by_rank = [&](std::size_t a, std::size_t b) {
        return scores[a] != scores[b] ? scores[a] > scores[b] : a < b;
    };
    std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(count), order.end(), by_rank);

    std::vector<Label> flags(scores.size(), 0);
    for (std::size_t i = 0; i < count; ++i) flags[order[i]] = 1;
    return flags;
}

EvalReport make_report(std::size_t tp, std::size_t fp, std::size_t fn, std::size_t tn) {
    EvalReport r{tp, fp, fn, tn};
    r.precision = tp + fp == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(tp + fp);
    r.recall = tp + fn == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(tp + fn);
    r.f1 = r.precision + r.recall == 0.0 ? 0.0 : 2.0 * r.precision * r.recall / (r.precision + r.recall);
    return r;
}

EvalReport f1_report(std::span<const Label> predicted, std::span<const Label> truth) {
    if (predicted.size() != truth.size()) throw InvalidArgument("predicted and truth lengths differ");
    std::size_t tp = 0, fp = 0, fn = 0, tn = 0;
    for (std::size_t i = 0; i < predicted.size(); ++i) {
        const bool p = predicted[i] != 0;
        const bool t = truth[i] != 0;
        tp += p && t;
        fp += p && !t;
        fn += !p && t;
        tn += !p && !t;
    }
    return make_report(tp, fp, fn, tn);
}

}  // namespace lofstream
