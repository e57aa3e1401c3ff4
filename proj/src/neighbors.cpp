#include "lofstream/neighbors.hpp"

#include <algorithm>

namespace lofstream {

const Neighbor* NeighborList::find(PointIndex idx) const noexcept {
    for (const Neighbor& n : neighbors)
        if (n.index == idx) return &n;
    return nullptr;
}

bool NeighborList::contains(PointIndex idx) const noexcept { return find(idx) != nullptr; }

std::optional<Neighbor> NeighborList::offer(const Neighbor& candidate) {
    if (neighbors.empty() || !admits(candidate)) return std::nullopt;
    const Neighbor evicted = neighbors.back();
    neighbors.pop_back();
    neighbors.insert(std::upper_bound(neighbors.begin(), neighbors.end(), candidate, std::less<>{}), candidate);
    return evicted;
}

}  // namespace lofstream
