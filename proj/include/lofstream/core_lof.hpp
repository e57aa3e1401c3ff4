#pragma once

// Batch (static) Local Outlier Factor.
//
//   reach(p, o) = max(d(p, o), k-dist(o))
//   lrd(p)      = 1 / max(mean_{o in N(p,k)} reach(p, o), kReachFloor)
//   lof(p)      = mean_{o in N(p,k)} lrd(o) / lrd(p)
//
// N(p,k) always holds exactly k points; distance ties go to the lower index.

#include "lofstream/dataset.hpp"
#include "lofstream/neighbors.hpp"

#include <algorithm>
#include <cstddef>
#include <span>
#include <vector>

namespace lofstream {

// Lower bound applied to the mean reach-distance before taking its reciprocal,
// so coincident points give a large but finite density.
inline constexpr double kReachFloor = 1e-12;

struct LofParams {
    std::size_t k = 50;

    // Throws InvalidArgument for k == 0 and InsufficientPoints unless n > k.
    void validate(std::size_t n) const;
    bool operator==(const LofParams&) const = default;
};

double euclidean_distance(PointView a, PointView b);

NeighborList knn_query(const Dataset& ds, std::size_t idx, std::size_t k);

// Checked: both inputs must be finite and non-negative.
double reach_distance(double d_pq, double k_dist_q);

double lrd(double mean_reach) noexcept;

std::vector<double> static_lof(const Dataset& ds, const LofParams& params);

// Everything the batch computation produces, for seeding the streaming engines.
struct BatchLof {
    std::vector<NeighborList> neighbors;
    std::vector<double> lrd;
    std::vector<double> lof;
};

BatchLof batch_lof(const Dataset& ds, const LofParams& params);

namespace detail {

inline double reach_unchecked(double d_pq, double k_dist_q) noexcept { return std::max(d_pq, k_dist_q); }

// The streaming engines accumulate in neighbour order and finish through these
// two functions, which is what keeps their output bit-identical to the batch
// path.
inline double lrd_from_sum(double reach_sum, std::size_t k) noexcept {
    return lrd(reach_sum / static_cast<double>(k));
}

inline double lof_from_sum(double neighbor_lrd_sum, std::size_t k, double own_lrd) noexcept {
    return (neighbor_lrd_sum / static_cast<double>(k)) / own_lrd;
}

}  // namespace detail

}  // namespace lofstream
