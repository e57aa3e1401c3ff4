#include "lofstream/core_lof.hpp"
#include "lofstream/dataset.hpp"
#include "lofstream/error.hpp"
#include "lofstream/kernels.hpp"
#include "lofstream/neighbors.hpp"
#include "lofstream/reachability_matrix.hpp"
#include "support/gen.hpp"

#include <doctest.h>

#include <cmath>

using namespace lofstream;

TEST_CASE("dataset append, slice and labels") {
    Dataset ds(2);
    const double a[2] = {1, 2}, b[2] = {3, 4}, bad[3] = {1, 2, 3}, nan[2] = {NAN, 0};
    ds.append(a);
    ds.append(b);
    CHECK(ds.size() == 2);
    CHECK(ds[1][0] == 3);
    CHECK_FALSE(ds.has_labels());
    CHECK_THROWS_AS(ds.labels(), InvalidArgument);
    CHECK_THROWS_AS(ds.append(bad), DimensionMismatch);
    CHECK_THROWS_AS(ds.append(nan), InvalidArgument);
    CHECK_THROWS_AS(ds.append(a, Label{1}), InvalidArgument);

    Dataset lab(2, {0, 0, 1, 1, 2, 2}, {0, 1, 0});
    CHECK(lab.label(1) == 1);
    CHECK_THROWS_AS(lab.append(a), InvalidArgument);
    CHECK_THROWS_AS(Dataset(2, {0, 0}, {2}), InvalidArgument);
    CHECK_THROWS_AS(Dataset(2, {0, 0, 1}), InvalidArgument);
    CHECK_THROWS_AS(Dataset(0), InvalidArgument);

    const Dataset mid = lab.slice(1, 2);
    CHECK(mid.size() == 2);
    CHECK(mid[0][0] == 1);
    CHECK(mid.labels() == std::vector<Label>{1, 0});
    CHECK_THROWS_AS(lab.slice(2, 2), InvalidArgument);

    const Dataset both = concat(lab.slice(0, 1), lab.slice(1, 2));
    CHECK(both == lab);
    const Dataset three(3, {1, 2, 3}, {0});
    CHECK_THROWS_AS(concat(lab, three), DimensionMismatch);
    CHECK_THROWS_AS(concat(lab, ds), InvalidArgument);
}

TEST_CASE("neighbour ordering and offers") {
    CHECK(Neighbor{1.0, 5} < Neighbor{2.0, 0});
    CHECK(Neighbor{1.0, 2} < Neighbor{1.0, 3});
    NeighborList nl{0, {{1.0, 1}, {2.0, 2}, {3.0, 3}}};
    CHECK(nl.k_distance() == 3.0);
    CHECK(nl.contains(2));
    CHECK(nl.find(4) == nullptr);
    CHECK_FALSE(nl.admits({3.0, 9}));  // ties lose to the older point
    CHECK(nl.admits({3.0, 2}));
    CHECK_FALSE(nl.offer({5.0, 9}).has_value());
    const auto ev = nl.offer({1.5, 9});
    REQUIRE(ev.has_value());
    CHECK(ev->index == 3);
    CHECK(nl.neighbors[1].index == 9);
    CHECK(nl.k_distance() == 2.0);
}

TEST_CASE("reachability matrix stores sparse rows") {
    ReachabilityMatrix m(3);
    m.set(0, 2, 1.5);
    m.set(0, 1, 0.5);
    m.set(0, 2, 2.5);
    CHECK(m.at(0, 2) == 2.5);
    CHECK(m.at(1, 0) == 0.0);
    CHECK_FALSE(m.find(1, 0).has_value());
    CHECK(m.row(0).size() == 2);
    CHECK(m.row(0)[0].column == 1);
    CHECK(m.stored_entries() == 2);
    CHECK_THROWS_AS(m.set(3, 0, 1.0), InvalidArgument);
    CHECK_THROWS_AS(m.set(0, 0, -1.0), InvalidArgument);
    CHECK_THROWS_AS(m.set(0, 0, INFINITY), InvalidArgument);
    m.expand();
    CHECK(m.size() == 4);
    m.set(3, 0, 1.0);
    CHECK(m.erase(0, 1));
    CHECK_FALSE(m.erase(0, 1));
    CHECK(m.stored_entries() == 2);
}

TEST_CASE("serial and OpenMP kernels agree bit for bit") {
    CHECK(to_string(Backend::Serial) == "serial");
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
        const std::size_t n = seed < 4 ? 300 : 2500;
        const Dataset ds = gen::clustered_points(seed, n, 1 + seed % 5);
        std::vector<double> a(n), b(n);
        kernels::distances_to(ds, ds[7], a, Backend::Serial);
        kernels::distances_to(ds, ds[7], b, Backend::OpenMP);
        CHECK(a == b);
        for (std::size_t k : {1u, 10u, 40u}) {
            const auto ls = kernels::all_knn(ds, k, Backend::Serial);
            const auto lo = kernels::all_knn(ds, k, Backend::OpenMP);
            CHECK(ls == lo);
            const auto rs = kernels::batch_lrd(ls, Backend::Serial);
            const auto ro = kernels::batch_lrd(lo, Backend::OpenMP);
            CHECK(rs == ro);
            CHECK(kernels::batch_lof(ls, rs, Backend::Serial) == kernels::batch_lof(lo, ro, Backend::OpenMP));
        }
    }
}
