#pragma once

// Data-parallel building blocks. Each kernel has a serial reference and an
// OpenMP variant; both must produce bit-identical output, which the tests
// check. Parallelism is across points only, never inside a single distance,
// so floating-point summation order is the same on both paths.

#include "lofstream/dataset.hpp"
#include "lofstream/neighbors.hpp"

#include <span>
#include <string_view>
#include <vector>

namespace lofstream {

enum class Backend { Serial, OpenMP };

std::string_view to_string(Backend b) noexcept;

// OpenMP when the library was built with it, Serial otherwise.
Backend default_backend() noexcept;

namespace kernels {

namespace serial {

// out[i] = d(ds[i], query) for i < out.size(); out.size() <= ds.size().
void distances_to(const Dataset& ds, PointView query, std::span<double> out);

// Exact k nearest neighbours of every point (self excluded).
std::vector<NeighborList> all_knn(const Dataset& ds, std::size_t k);

// lrd[i] from the reach-distances of i to its neighbours.
std::vector<double> batch_lrd(std::span<const NeighborList> lists);

std::vector<double> batch_lof(std::span<const NeighborList> lists, std::span<const double> lrd);

}  // namespace serial

namespace omp {

void distances_to(const Dataset& ds, PointView query, std::span<double> out);
std::vector<NeighborList> all_knn(const Dataset& ds, std::size_t k);
std::vector<double> batch_lrd(std::span<const NeighborList> lists);
std::vector<double> batch_lof(std::span<const NeighborList> lists, std::span<const double> lrd);

}  // namespace omp

void distances_to(const Dataset& ds, PointView query, std::span<double> out,
                  Backend backend = default_backend());
std::vector<NeighborList> all_knn(const Dataset& ds, std::size_t k, Backend backend = default_backend());
std::vector<double> batch_lrd(std::span<const NeighborList> lists, Backend backend = default_backend());
std::vector<double> batch_lof(std::span<const NeighborList> lists, std::span<const double> lrd,
                              Backend backend = default_backend());

// Top-k of (distances[i], i) over all i != exclude, ascending.
NeighborList select_k_nearest(PointIndex owner, std::span<const double> distances, std::size_t k,
                              std::vector<Neighbor>& scratch);

}  // namespace kernels
}  // namespace lofstream
