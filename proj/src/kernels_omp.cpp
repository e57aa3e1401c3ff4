#include "lofstream/core_lof.hpp"
#include "lofstream/kernels.hpp"

#include <cstdint>

namespace lofstream {

std::string_view to_string(Backend b) noexcept { return b == Backend::Serial ? "serial" : "openmp"; }

Backend default_backend() noexcept {
#ifdef _OPENMP
    return Backend::OpenMP;
#else
    return Backend::Serial;
#endif
}

namespace kernels {
namespace omp {

namespace {
// Below this many scalar operations a parallel region costs more than it saves.
constexpr std::int64_t kMinParallelWork = 1 << 15;
}

void distances_to(const Dataset& ds, PointView query, std::span<double> out) {
    const auto n = static_cast<std::int64_t>(out.size());
    const bool big = n * static_cast<std::int64_t>(ds.dim()) >= kMinParallelWork;
#pragma omp parallel for schedule(static) if (big)
    for (std::int64_t i = 0; i < n; ++i) out[i] = detail::distance_unchecked(ds[i], query);
}

std::vector<NeighborList> all_knn(const Dataset& ds, std::size_t k) {
    const auto n = static_cast<std::int64_t>(ds.size());
    std::vector<NeighborList> lists(ds.size());
#pragma omp parallel
    {
        std::vector<double> dist(ds.size());
        std::vector<Neighbor> scratch;
#pragma omp for schedule(dynamic, 16)
        for (std::int64_t i = 0; i < n; ++i) {
            serial::distances_to(ds, ds[i], dist);
            lists[i] = select_k_nearest(static_cast<PointIndex>(i), dist, k, scratch);
        }
    }
    return lists;
}

std::vector<double> batch_lrd(std::span<const NeighborList> lists) {
    const auto n = static_cast<std::int64_t>(lists.size());
    std::vector<double> out(lists.size());
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) {
        double sum = 0.0;
        for (const Neighbor& o : lists[i].neighbors)
            sum += detail::reach_unchecked(o.distance, lists[o.index].k_distance());
        out[i] = detail::lrd_from_sum(sum, lists[i].size());
    }
    return out;
}

std::vector<double> batch_lof(std::span<const NeighborList> lists, std::span<const double> lrd) {
    const auto n = static_cast<std::int64_t>(lists.size());
    std::vector<double> out(lists.size());
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) {
        double sum = 0.0;
        for (const Neighbor& o : lists[i].neighbors) sum += lrd[o.index];
        out[i] = detail::lof_from_sum(sum, lists[i].size(), lrd[i]);
    }
    return out;
}

}  // namespace omp

void distances_to(const Dataset& ds, PointView query, std::span<double> out, Backend backend) {
    backend == Backend::OpenMP ? omp::distances_to(ds, query, out) : serial::distances_to(ds, query, out);
}

std::vector<NeighborList> all_knn(const Dataset& ds, std::size_t k, Backend backend) {
    return backend == Backend::OpenMP ? omp::all_knn(ds, k) : serial::all_knn(ds, k);
}

std::vector<double> batch_lrd(std::span<const NeighborList> lists, Backend backend) {
    return backend == Backend::OpenMP ? omp::batch_lrd(lists) : serial::batch_lrd(lists);
}

std::vector<double> batch_lof(std::span<const NeighborList> lists, std::span<const double> lrd, Backend backend) {
    return backend == Backend::OpenMP ? omp::batch_lof(lists, lrd) : serial::batch_lof(lists, lrd);
}

}  // namespace kernels
}  // namespace lofstream
