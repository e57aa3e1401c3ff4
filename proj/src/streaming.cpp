#include "lofstream/streaming.hpp"

#include "lofstream/error.hpp"
#include "lofstream/kernels.hpp"

#include <algorithm>
#include <string>

namespace lofstream {

std::string_view to_string(Algo a) noexcept { return a == Algo::ILOF ? "ILOF" : "EILOF"; }

Algo parse_algo(std::string_view text) {
    std::string t(text);
    std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    if (t == "ILOF") return Algo::ILOF;
    if (t == "EILOF") return Algo::EILOF;
    throw InvalidArgument("unknown algorithm '" + std::string(text) + "' (expected ilof or eilof)");
}

InsertStats& InsertStats::operator+=(const InsertStats& o) noexcept {
    row_entries_written += o.row_entries_written;
    column_entries_written += o.column_entries_written;
    column_entries_rewritten += o.column_entries_rewritten;
    lrd_recomputed += o.lrd_recomputed;
    lof_recomputed += o.lof_recomputed;
    wall_time += o.wall_time;
    return *this;
}

namespace {

using Clock = std::chrono::steady_clock;

void erase_one(std::vector<PointIndex>& v, PointIndex x) {
    const auto it = std::find(v.begin(), v.end(), x);
    if (it != v.end()) {
        *it = v.back();
        v.pop_back();
    }
}

// Collects distinct point indices in first-seen order.
class IndexSet {
public:
    explicit IndexSet(std::size_t n) : seen_(n, 0) {}
    void add(PointIndex i) {
        if (seen_[i]) return;
        seen_[i] = 1;
        items_.push_back(i);
    }
    const std::vector<PointIndex>& items() const noexcept { return items_; }

private:
    std::vector<char> seen_;
    std::vector<PointIndex> items_;
};

}  // namespace

// Shared mechanics of both engines.
struct EngineAccess {
    // A point whose neighbour list gained the new point.
    struct Admission {
        PointIndex point;
        double distance;
        double old_k_distance;
    };

    // Appends `p` and links it into the neighbour index: computes N(c, k),
    // then offers c to every existing point. Reach-distance cells of evicted
    // neighbours are dropped so rows keep mirroring the neighbour lists.
    static std::vector<Admission> append_and_link(DetectorState& s, PointView p) {
        if (p.size() != s.dataset_.dim()) throw DimensionMismatch(s.dataset_.dim(), p.size());
        const std::size_t n = s.size();
        const auto c = static_cast<PointIndex>(n);

        std::vector<double> dist(n);
        kernels::distances_to(s.dataset_, p, dist);
        std::vector<Neighbor> scratch;
        NeighborList own = kernels::select_k_nearest(c, dist, s.params_.k, scratch);

        s.dataset_.append(p);
        s.rdm_.expand();
        s.reverse_.emplace_back();
        for (const Neighbor& o : own.neighbors) s.reverse_[o.index].push_back(c);
        s.neighbors_.push_back(std::move(own));
        s.lrd_.push_back(0.0);
        s.lof_.push_back(0.0);

        std::vector<Admission> admitted;
        for (std::size_t i = 0; i < n; ++i) {
            NeighborList& list = s.neighbors_[i];
            const Neighbor candidate{dist[i], c};
            if (!list.admits(candidate)) continue;
            const double old_kd = list.k_distance();
            const Neighbor evicted = *list.offer(candidate);
            erase_one(s.reverse_[evicted.index], static_cast<PointIndex>(i));
            s.reverse_[c].push_back(static_cast<PointIndex>(i));
            s.rdm_.erase(i, evicted.index);
            admitted.push_back({static_cast<PointIndex>(i), dist[i], old_kd});
        }
        return admitted;
    }

    // LRD of i from its stored row, summed in neighbour order.
    static double row_lrd(const DetectorState& s, std::size_t i) {
        const NeighborList& list = s.neighbors_[i];
        double sum = 0.0;
        for (const Neighbor& o : list.neighbors) sum += s.rdm_.at(i, o.index);
        return detail::lrd_from_sum(sum, list.size());
    }

    static double point_lof(const DetectorState& s, std::size_t i) {
        const NeighborList& list = s.neighbors_[i];
        double sum = 0.0;
        for (const Neighbor& o : list.neighbors) sum += s.lrd_[o.index];
        return detail::lof_from_sum(sum, list.size(), s.lrd_[i]);
    }

    // New row: reach(c, o) for o in N(c), using post-insertion k-distances.
    static std::size_t write_new_row(DetectorState& s, PointIndex c) {
        for (const Neighbor& o : s.neighbors_[c].neighbors)
            s.rdm_.set(c, o.index, detail::reach_unchecked(o.distance, s.neighbors_[o.index].k_distance()));
        return s.neighbors_[c].size();
    }
};

DetectorState init_detector(const Dataset& ds, const LofParams& params, Algo algo) {
    params.validate(ds.size());
    BatchLof batch = batch_lof(ds, params);

    DetectorState s;
    s.algo_ = algo;
    s.params_ = params;
    s.dataset_ = Dataset(ds.dim(), std::vector<double>(ds.coords().begin(), ds.coords().end()));
    s.rdm_ = ReachabilityMatrix(ds.size());
    s.reverse_.resize(ds.size());
    for (std::size_t i = 0; i < ds.size(); ++i) {
        for (const Neighbor& o : batch.neighbors[i].neighbors) {
            s.rdm_.set(i, o.index, detail::reach_unchecked(o.distance, batch.neighbors[o.index].k_distance()));
            s.reverse_[o.index].push_back(static_cast<PointIndex>(i));
        }
    }
    s.neighbors_ = std::move(batch.neighbors);
    s.lrd_ = std::move(batch.lrd);
    s.lof_ = std::move(batch.lof);
    return s;
}

InsertStats ilof_insert(DetectorState& s, PointView p) {
    if (s.algo() != Algo::ILOF) throw InvalidArgument("ilof_insert called on an EILOF detector");
    const auto start = Clock::now();
    const std::size_t n_old = s.size();
    const auto c = static_cast<PointIndex>(n_old);
    InsertStats stats;

    const auto admitted = EngineAccess::append_and_link(s, p);
    const double kd_c = s.neighbors_[c].k_distance();

    // New column: reach(i, c) for every point that now counts c as a neighbour.
    for (const auto& a : admitted) s.rdm_.set(a.point, c, detail::reach_unchecked(a.distance, kd_c));
    stats.column_entries_written = admitted.size();
    stats.row_entries_written = EngineAccess::write_new_row(s, c);

    // A shrunken k-distance changes reach(j, i) for every j holding i.
    IndexSet lrd_set(s.size());
    for (const auto& a : admitted) {
        lrd_set.add(a.point);
        const double kd = s.neighbors_[a.point].k_distance();
        if (kd == a.old_k_distance) continue;
        stats.column_entries_rewritten += n_old;
        for (PointIndex j : s.reverse_[a.point]) {
            if (j == c) continue;
            const Neighbor* link = s.neighbors_[j].find(a.point);
            s.rdm_.set(j, a.point, detail::reach_unchecked(link->distance, kd));
            lrd_set.add(j);
        }
    }

    for (PointIndex j : lrd_set.items()) s.lrd_[j] = EngineAccess::row_lrd(s, j);
    s.lrd_[c] = EngineAccess::row_lrd(s, c);

    IndexSet lof_set(s.size());
    for (PointIndex j : lrd_set.items()) {
        lof_set.add(j);
        for (PointIndex r : s.reverse_[j]) lof_set.add(r);
    }
    for (PointIndex r : s.reverse_[c]) lof_set.add(r);
    lof_set.add(c);
    for (PointIndex j : lof_set.items()) s.lof_[j] = EngineAccess::point_lof(s, j);

    stats.lrd_recomputed = lrd_set.items().size() + 1;
    stats.lof_recomputed = lof_set.items().size();
    stats.wall_time = Clock::now() - start;
    return stats;
}

InsertStats eilof_insert(DetectorState& s, PointView p) {
    if (s.algo() != Algo::EILOF) throw InvalidArgument("eilof_insert called on an ILOF detector");
    const auto start = Clock::now();
    const auto c = static_cast<PointIndex>(s.size());
    InsertStats stats;

    EngineAccess::append_and_link(s, p);
    const double kd_c = s.neighbors_[c].k_distance();

    // Only neighbours of c that also count c among their own k nearest get a
    // new-column cell and a fresh LRD; everything else keeps its stored values.
    std::vector<PointIndex> updates;
    for (const Neighbor& o : s.neighbors_[c].neighbors) {
        if (!s.neighbors_[o.index].contains(c)) continue;
        s.rdm_.set(o.index, c, detail::reach_unchecked(o.distance, kd_c));
        updates.push_back(o.index);
    }
    stats.column_entries_written = updates.size();
    stats.row_entries_written = EngineAccess::write_new_row(s, c);

    for (PointIndex j : updates) s.lrd_[j] = EngineAccess::row_lrd(s, j);
    s.lrd_[c] = EngineAccess::row_lrd(s, c);
    s.lof_[c] = EngineAccess::point_lof(s, c);

    stats.lrd_recomputed = updates.size() + 1;
    stats.lof_recomputed = 1;
    stats.wall_time = Clock::now() - start;
    return stats;
}

InsertStats insert(DetectorState& state, PointView point) {
    return state.algo() == Algo::ILOF ? ilof_insert(state, point) : eilof_insert(state, point);
}

}  // namespace lofstream
