#pragma once

// Incremental LOF engines.
//
// Both engines keep an exact k-nearest-neighbour index for every point and a
// sparse ReachabilityMatrix whose row i holds reach(i, o) for o in N(i, k).
// They differ in what they refresh when a point arrives:
//
//  ILOF   cascades k-distance, reach-distance, LRD and LOF updates until every
//         score equals what batch LOF would give on the grown dataset.
//  EILOF  writes the new row (k cells), a new-column cell for each neighbour
//         that also has the new point among its own k nearest, refreshes those
//         neighbours' LRDs from their stored rows, and scores only the new
//         point. Existing LOF scores are never modified.

#include "lofstream/core_lof.hpp"
#include "lofstream/dataset.hpp"
#include "lofstream/neighbors.hpp"
#include "lofstream/reachability_matrix.hpp"

#include <chrono>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace lofstream {

enum class Algo { ILOF, EILOF };

std::string_view to_string(Algo a) noexcept;
Algo parse_algo(std::string_view text);

// Work done by one insertion, in cells of the conceptual n x n matrix.
struct InsertStats {
    std::size_t row_entries_written = 0;     // new row
    std::size_t column_entries_written = 0;  // new column
    // Cells of existing columns refreshed because that column's point changed
    // k-distance. A changed k-distance invalidates the whole column, i.e. one
    // cell per pre-existing row. Always 0 for EILOF.
    std::size_t column_entries_rewritten = 0;
    std::size_t lrd_recomputed = 0;  // includes the new point
    std::size_t lof_recomputed = 0;  // includes the new point
    std::chrono::nanoseconds wall_time{0};

    std::size_t touched() const noexcept {
        return row_entries_written + column_entries_written + column_entries_rewritten + lrd_recomputed +
               lof_recomputed;
    }

    InsertStats& operator+=(const InsertStats& o) noexcept;
    bool operator==(const InsertStats&) const = default;
};

class DetectorState {
public:
    Algo algo() const noexcept { return algo_; }
    const LofParams& params() const noexcept { return params_; }
    const Dataset& dataset() const noexcept { return dataset_; }
    std::size_t size() const noexcept { return dataset_.size(); }

    const std::vector<NeighborList>& neighbor_lists() const noexcept { return neighbors_; }
    // reverse_neighbors()[o] = points p with o in N(p, k), unordered.
    const std::vector<std::vector<PointIndex>>& reverse_neighbors() const noexcept { return reverse_; }
    const ReachabilityMatrix& rdm() const noexcept { return rdm_; }
    const std::vector<double>& lrd() const noexcept { return lrd_; }
    const std::vector<double>& lof() const noexcept { return lof_; }

    bool operator==(const DetectorState&) const = default;

private:
    friend DetectorState init_detector(const Dataset&, const LofParams&, Algo);
    friend InsertStats ilof_insert(DetectorState&, PointView);
    friend InsertStats eilof_insert(DetectorState&, PointView);
    friend struct EngineAccess;

    Algo algo_ = Algo::ILOF;
    LofParams params_;
    Dataset dataset_;
    std::vector<NeighborList> neighbors_;
    std::vector<std::vector<PointIndex>> reverse_;
    ReachabilityMatrix rdm_;
    std::vector<double> lrd_;
    std::vector<double> lof_;
};

// Batch-scores `ds` (which needs more than k points) as the shared starting
// point for either engine. Labels in `ds` are not kept.
DetectorState init_detector(const Dataset& ds, const LofParams& params, Algo algo);

InsertStats ilof_insert(DetectorState& state, PointView point);
InsertStats eilof_insert(DetectorState& state, PointView point);

// Dispatches on state.algo().
InsertStats insert(DetectorState& state, PointView point);

// Current LOF scores in insertion order.
inline std::span<const double> scores(const DetectorState& state) noexcept { return state.lof(); }

}  // namespace lofstream
