#include "lofstream/reachability_matrix.hpp"

#include "lofstream/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace lofstream {

namespace {

template <class Row>
auto lower(Row& row, std::size_t column) {
    return std::lower_bound(row.begin(), row.end(), column,
                            [](const ReachabilityMatrix::Entry& e, std::size_t c) { return e.column < c; });
}

}  // namespace

std::optional<double> ReachabilityMatrix::find(std::size_t row, std::size_t column) const {
    const auto& r = rows_.at(row);
    const auto it = lower(r, column);
    if (it == r.end() || it->column != column) return std::nullopt;
    return it->value;
}

void ReachabilityMatrix::set(std::size_t row, std::size_t column, double value) {
    if (row >= size() || column >= size())
        throw InvalidArgument("reachability cell (" + std::to_string(row) + ", " + std::to_string(column) +
                              ") outside " + std::to_string(size()) + "x" + std::to_string(size()));
    if (!(value >= 0.0) || !std::isfinite(value)) throw InvalidArgument("reach-distance must be finite and >= 0");
    auto& r = rows_[row];
    const auto it = lower(r, column);
    if (it != r.end() && it->column == column)
        it->value = value;
    else
        r.insert(it, Entry{static_cast<PointIndex>(column), value});
}

bool ReachabilityMatrix::erase(std::size_t row, std::size_t column) {
    auto& r = rows_.at(row);
    const auto it = lower(r, column);
    if (it == r.end() || it->column != column) return false;
    r.erase(it);
    return true;
}

std::size_t ReachabilityMatrix::stored_entries() const noexcept {
    std::size_t total = 0;
    for (const auto& r : rows_) total += r.size();
    return total;
}

}  // namespace lofstream
