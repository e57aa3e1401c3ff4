#include "lofstream/core_lof.hpp"
#include "lofstream/kernels.hpp"

#include <algorithm>

namespace lofstream::kernels {

NeighborList select_k_nearest(PointIndex owner, std::span<const double> distances, std::size_t k,
                              std::vector<Neighbor>& scratch) {
    scratch.clear();
    scratch.reserve(distances.size());
    for (std::size_t j = 0; j < distances.size(); ++j) {
        if (j == owner) continue;
        scratch.push_back({distances[j], static_cast<PointIndex>(j)});
    }
    const auto kth = scratch.begin() + static_cast<std::ptrdiff_t>(k);
    std::partial_sort(scratch.begin(), kth, scratch.end(), std::less<>{});
    return NeighborList{owner, std::vector<Neighbor>(scratch.begin(), kth)};
}

namespace serial {

void distances_to(const Dataset& ds, PointView query, std::span<double> out) {
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = detail::distance_unchecked(ds[i], query);
}

std::vector<NeighborList> all_knn(const Dataset& ds, std::size_t k) {
    const std::size_t n = ds.size();
    std::vector<NeighborList> lists(n);
    std::vector<double> dist(n);
    std::vector<Neighbor> scratch;
    for (std::size_t i = 0; i < n; ++i) {
        distances_to(ds, ds[i], dist);
        lists[i] = select_k_nearest(static_cast<PointIndex>(i), dist, k, scratch);
    }
    return lists;
}

std::vector<double> batch_lrd(std::span<const NeighborList> lists) {
    std::vector<double> out(lists.size());
    for (std::size_t i = 0; i < lists.size(); ++i) {
        double sum = 0.0;
        for (const Neighbor& o : lists[i].neighbors)
            sum += detail::reach_unchecked(o.distance, lists[o.index].k_distance());
        out[i] = detail::lrd_from_sum(sum, lists[i].size());
    }
    return out;
}

std::vector<double> batch_lof(std::span<const NeighborList> lists, std::span<const double> lrd) {
    std::vector<double> out(lists.size());
    for (std::size_t i = 0; i < lists.size(); ++i) {
        double sum = 0.0;
        for (const Neighbor& o : lists[i].neighbors) sum += lrd[o.index];
        out[i] = detail::lof_from_sum(sum, lists[i].size(), lrd[i]);
    }
    return out;
}

}  // namespace serial
}  // namespace lofstream::kernels
