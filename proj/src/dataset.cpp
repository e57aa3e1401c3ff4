#include "lofstream/dataset.hpp"

#include "lofstream/error.hpp"

#include <cmath>
#include <string>

namespace lofstream {

Dataset::Dataset(std::size_t dim) : dim_(dim) {
    if (dim == 0) throw InvalidArgument("dataset dimension must be at least 1");
}

Dataset::Dataset(std::size_t dim, std::vector<double> coords) : dim_(dim), coords_(std::move(coords)) {
    validate();
}

Dataset::Dataset(std::size_t dim, std::vector<double> coords, std::vector<Label> labels)
    : dim_(dim), coords_(std::move(coords)), labels_(std::move(labels)) {
    validate();
}

const std::vector<Label>& Dataset::labels() const {
    if (!labels_) throw InvalidArgument("dataset carries no labels");
    return *labels_;
}

void Dataset::validate() const {
    if (dim_ == 0) throw InvalidArgument("dataset dimension must be at least 1");
    if (coords_.size() % dim_ != 0)
        throw InvalidArgument("coordinate count " + std::to_string(coords_.size()) +
                              " is not a multiple of dimension " + std::to_string(dim_));
    for (std::size_t i = 0; i < coords_.size(); ++i) {
        if (!std::isfinite(coords_[i]))
            throw InvalidArgument("non-finite coordinate at point " + std::to_string(i / dim_));
    }
    if (labels_) {
        if (labels_->size() != size())
            throw InvalidArgument("label count differs from point count");
        for (Label l : *labels_)
            if (l > 1) throw InvalidArgument("labels must be 0 or 1");
    }
}

void Dataset::append(PointView p, std::optional<Label> label) {
    if (dim_ == 0) throw InvalidArgument("dataset dimension must be at least 1");
    if (p.size() != dim_) throw DimensionMismatch(dim_, p.size());
    for (double v : p)
        if (!std::isfinite(v)) throw InvalidArgument("non-finite coordinate in appended point");
    if (empty() && !labels_ && label) labels_.emplace();
    if (labels_.has_value() != label.has_value())
        throw InvalidArgument(labels_ ? "labelled dataset requires a label" : "unlabelled dataset cannot take a label");
    if (label && *label > 1) throw InvalidArgument("labels must be 0 or 1");

    coords_.insert(coords_.end(), p.begin(), p.end());
    if (label) labels_->push_back(*label);
}

Dataset Dataset::slice(std::size_t first, std::size_t count) const {
    if (first + count > size()) throw InvalidArgument("slice out of range");
    std::vector<double> c(coords_.begin() + static_cast<std::ptrdiff_t>(first * dim_),
                          coords_.begin() + static_cast<std::ptrdiff_t>((first + count) * dim_));
    if (!labels_) return Dataset(dim_, std::move(c));
    std::vector<Label> l(labels_->begin() + static_cast<std::ptrdiff_t>(first),
                         labels_->begin() + static_cast<std::ptrdiff_t>(first + count));
    return Dataset(dim_, std::move(c), std::move(l));
}

Dataset concat(const Dataset& a, const Dataset& b) {
    if (a.empty()) return b;
    if (b.empty()) return a;
    if (a.dim() != b.dim()) throw DimensionMismatch(a.dim(), b.dim());
    if (a.has_labels() != b.has_labels()) throw InvalidArgument("cannot concatenate labelled and unlabelled datasets");
    std::vector<double> c(a.coords().begin(), a.coords().end());
    c.insert(c.end(), b.coords().begin(), b.coords().end());
    if (!a.has_labels()) return Dataset(a.dim(), std::move(c));
    std::vector<Label> l = a.labels();
    l.insert(l.end(), b.labels().begin(), b.labels().end());
    return Dataset(a.dim(), std::move(c), std::move(l));
}

}  // namespace lofstream
