#pragma once

#include "lofstream/dataset.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace lofstream {

// Square, growable n x n matrix of reach-distances, stored sparse by row.
// Row i only holds cells for the current neighbours of point i, so rows stay
// at most k long; an unstored cell reads as 0.
class ReachabilityMatrix {
public:
    struct Entry {
        PointIndex column;
        double value;
        bool operator==(const Entry&) const = default;
    };

    ReachabilityMatrix() = default;
    explicit ReachabilityMatrix(std::size_t n) : rows_(n) {}

    std::size_t size() const noexcept { return rows_.size(); }

    // Adds one empty row and (implicitly) one empty column.
    void expand() { rows_.emplace_back(); }

    std::optional<double> find(std::size_t row, std::size_t column) const;
    double at(std::size_t row, std::size_t column) const { return find(row, column).value_or(0.0); }

    // Value must be finite and non-negative; indices must be < size().
    void set(std::size_t row, std::size_t column, double value);
    bool erase(std::size_t row, std::size_t column);

    // Entries of one row, ascending by column.
    std::span<const Entry> row(std::size_t i) const { return rows_.at(i); }
    std::size_t stored_entries() const noexcept;

    bool operator==(const ReachabilityMatrix&) const = default;

private:
    std::vector<std::vector<Entry>> rows_;
};

}  // namespace lofstream
