#pragma once

#include "lofstream/dataset.hpp"

#include <cmath>
#include <compare>
#include <cstddef>
#include <optional>
#include <vector>

namespace lofstream {

struct Neighbor {
    double distance = 0.0;
    PointIndex index = 0;

    // Total order: distance first, lower insertion index wins ties.
    friend std::partial_ordering operator<=>(const Neighbor& a, const Neighbor& b) {
        if (auto c = a.distance <=> b.distance; c != 0) return c;
        return a.index <=> b.index;
    }
    friend bool operator==(const Neighbor&, const Neighbor&) = default;
};

// The exactly-k nearest neighbours of `owner`, ascending by (distance, index).
struct NeighborList {
    PointIndex owner = 0;
    std::vector<Neighbor> neighbors;

    std::size_t size() const noexcept { return neighbors.size(); }
    double k_distance() const noexcept { return neighbors.back().distance; }

    bool contains(PointIndex idx) const noexcept;
    const Neighbor* find(PointIndex idx) const noexcept;

    // True iff `candidate` would displace the current k-th neighbour.
    bool admits(const Neighbor& candidate) const noexcept { return candidate < neighbors.back(); }

    // Inserts `candidate` in order and drops the old k-th neighbour, which is
    // returned. Returns nullopt (and changes nothing) when not admitted.
    std::optional<Neighbor> offer(const Neighbor& candidate);

    bool operator==(const NeighborList&) const = default;
};

namespace detail {

// sqrt of the coordinate-ordered sum of squared differences. Every distance in
// the library goes through here so that d(p,q) is bit-identical on all paths.
inline double distance_unchecked(PointView a, PointView b) noexcept {
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double diff = a[i] - b[i];
        sum += diff * diff;
    }
    return std::sqrt(sum);
}

}  // namespace detail

}  // namespace lofstream
