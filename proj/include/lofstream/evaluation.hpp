#pragma once

#include "lofstream/dataset.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace lofstream {

// Predicted outlier proportion; the top ceil(contamination * n) scores are flagged.
struct ThresholdRule {
    double contamination = 0.05;

    void validate() const;
    // Number of points flagged among n. Products within 1e-9 of an integer
    // are treated as that integer, so 0.05 * 2280 flags 114, not 115.
    std::size_t flag_count(std::size_t n) const;
};

struct EvalReport {
    std::size_t tp = 0, fp = 0, fn = 0, tn = 0;
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;

    std::size_t total() const noexcept { return tp + fp + fn + tn; }
    bool operator==(const EvalReport&) const = default;
};

// 1 for flagged points. Ties at the cut go to the lower index.
std::vector<Label> flag_outliers(std::span<const double> scores, const ThresholdRule& rule);

EvalReport f1_report(std::span<const Label> predicted, std::span<const Label> truth);

// Confusion counts already known.
EvalReport make_report(std::size_t tp, std::size_t fp, std::size_t fn, std::size_t tn);

}  // namespace lofstream
