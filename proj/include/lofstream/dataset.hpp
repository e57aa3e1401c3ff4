#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace lofstream {

using PointIndex = std::uint32_t;
using PointView = std::span<const double>;
using Label = std::uint8_t;  // 0 normal, 1 outlier

// Ordered, append-only collection of points sharing one dimension, stored
// row-major. Labels are either absent for every point or present for every
// point.
class Dataset {
public:
    Dataset() = default;
    explicit Dataset(std::size_t dim);
    Dataset(std::size_t dim, std::vector<double> coords);
    Dataset(std::size_t dim, std::vector<double> coords, std::vector<Label> labels);

    std::size_t dim() const noexcept { return dim_; }
    std::size_t size() const noexcept { return dim_ == 0 ? 0 : coords_.size() / dim_; }
    bool empty() const noexcept { return size() == 0; }

    PointView point(std::size_t i) const noexcept { return {coords_.data() + i * dim_, dim_}; }
    PointView operator[](std::size_t i) const noexcept { return point(i); }

    bool has_labels() const noexcept { return labels_.has_value(); }
    const std::vector<Label>& labels() const;
    Label label(std::size_t i) const { return labels().at(i); }

    std::span<const double> coords() const noexcept { return coords_; }

    // Appends one point; throws DimensionMismatch or InvalidArgument on a
    // non-finite coordinate. The label must be given iff the dataset is labelled
    // (an empty dataset adopts whichever mode the first append uses).
    void append(PointView p, std::optional<Label> label = std::nullopt);
    void reserve(std::size_t n) { coords_.reserve(n * dim_); }

    // Rows [first, first + count) as a new dataset.
    Dataset slice(std::size_t first, std::size_t count) const;

    bool operator==(const Dataset&) const = default;

private:
    void validate() const;

    std::size_t dim_ = 0;
    std::vector<double> coords_;
    std::optional<std::vector<Label>> labels_;
};

// Concatenation a ++ b; dims and labelling mode must agree.
Dataset concat(const Dataset& a, const Dataset& b);

}  // namespace lofstream
