#include "lofstream/core_lof.hpp"

#include "lofstream/error.hpp"
#include "lofstream/kernels.hpp"

#include <cmath>
#include <string>

namespace lofstream {

void LofParams::validate(std::size_t n) const {
    if (k == 0) throw InvalidArgument("k must be at least 1");
    if (n <= k) throw InsufficientPoints(n, k);
}

double euclidean_distance(PointView a, PointView b) {
    if (a.size() != b.size()) throw DimensionMismatch(a.size(), b.size());
    return detail::distance_unchecked(a, b);
}

NeighborList knn_query(const Dataset& ds, std::size_t idx, std::size_t k) {
    LofParams{k}.validate(ds.size());
    if (idx >= ds.size()) throw InvalidArgument("point index " + std::to_string(idx) + " out of range");
    std::vector<double> dist(ds.size());
    kernels::serial::distances_to(ds, ds[idx], dist);
    std::vector<Neighbor> scratch;
    return kernels::select_k_nearest(static_cast<PointIndex>(idx), dist, k, scratch);
}

double reach_distance(double d_pq, double k_dist_q) {
    if (!(d_pq >= 0.0) || !(k_dist_q >= 0.0) || !std::isfinite(d_pq) || !std::isfinite(k_dist_q))
        throw InvalidArgument("reach_distance inputs must be finite and non-negative");
    return detail::reach_unchecked(d_pq, k_dist_q);
}

double lrd(double mean_reach) noexcept { return 1.0 / std::max(mean_reach, kReachFloor); }

BatchLof batch_lof(const Dataset& ds, const LofParams& params) {
    params.validate(ds.size());
    BatchLof out;
    out.neighbors = kernels::all_knn(ds, params.k);
    out.lrd = kernels::batch_lrd(out.neighbors);
    out.lof = kernels::batch_lof(out.neighbors, out.lrd);
    return out;
}

std::vector<double> static_lof(const Dataset& ds, const LofParams& params) {
    return batch_lof(ds, params).lof;
}

}  // namespace lofstream
