#include "lofstream/core_lof.hpp"
#include "lofstream/error.hpp"
#include "lofstream/streaming.hpp"
#include "support/gen.hpp"
#include "support/oracle.hpp"

#include <doctest.h>

#include <cmath>
#include <set>

using namespace lofstream;

namespace {

// a, b, c, d, e as the baseline, p_c arrives at the origin.
const Dataset kMicroStatic(2, {4, 2.3, 3, 1, 2, 0, 6, 2, 1, 4});
const double kMicroNew[2] = {0, 0};

std::vector<double> to_vec(std::span<const double> s) { return {s.begin(), s.end()}; }

// Every row of the matrix holds exactly the point's current neighbours.
void check_index(const DetectorState& s) {
    const std::size_t n = s.size();
    std::vector<std::multiset<PointIndex>> reverse(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& nl = s.neighbor_lists()[i];
        REQUIRE(nl.size() == s.params().k);
        const auto row = s.rdm().row(i);
        CHECK(row.size() <= s.params().k);
        for (const auto& e : row) CHECK(nl.contains(e.column));
        for (const auto& o : nl.neighbors) reverse[o.index].insert(static_cast<PointIndex>(i));
    }
    for (std::size_t i = 0; i < n; ++i) {
        const auto& r = s.reverse_neighbors()[i];
        CHECK(std::multiset<PointIndex>(r.begin(), r.end()) == reverse[i]);
    }
}

}  // namespace

TEST_CASE("init matches batch lof for both engines") {
    const Dataset ds = gen::clustered_points(3, 1000, 2);
    const auto batch = static_lof(ds, LofParams{50});
    for (Algo a : {Algo::ILOF, Algo::EILOF}) {
        const DetectorState s = init_detector(ds, LofParams{50}, a);
        CHECK(to_vec(scores(s)) == batch);
        CHECK(s.rdm().stored_entries() == 1000 * 50);
    }
    const Dataset square(2, {0, 0, 1, 0, 0, 1, 1, 1});
    for (Algo a : {Algo::ILOF, Algo::EILOF}) {
        const DetectorState s = init_detector(square, LofParams{2}, a);
        for (double v : scores(s)) CHECK(v == 1.0);
    }
    CHECK_THROWS_AS(init_detector(square, LofParams{4}, Algo::ILOF), InsufficientPoints);
}

TEST_CASE("engines refuse the wrong state and wrong dimension") {
    const Dataset ds = gen::uniform_points(1, 20, 2);
    DetectorState il = init_detector(ds, LofParams{3}, Algo::ILOF);
    DetectorState el = init_detector(ds, LofParams{3}, Algo::EILOF);
    const double p[2] = {0, 0}, q[3] = {0, 0, 0};
    CHECK_THROWS_AS(eilof_insert(il, p), InvalidArgument);
    CHECK_THROWS_AS(ilof_insert(el, p), InvalidArgument);
    CHECK_THROWS_AS(insert(il, q), DimensionMismatch);
    CHECK(il.size() == 20);
}

TEST_CASE("algo names parse case-insensitively") {
    CHECK(parse_algo("ilof") == Algo::ILOF);
    CHECK(parse_algo("EiLoF") == Algo::EILOF);
    CHECK(to_string(Algo::EILOF) == "EILOF");
    CHECK_THROWS_AS(parse_algo("lof"), InvalidArgument);
}

TEST_CASE("six-point micro instance: EILOF writes two row cells and one column cell") {
    DetectorState s = init_detector(kMicroStatic, LofParams{2}, Algo::EILOF);
    const auto before = to_vec(scores(s));
    const auto b_row = std::vector(s.rdm().row(1).begin(), s.rdm().row(1).end());
    const InsertStats st = eilof_insert(s, kMicroNew);

    CHECK(st.row_entries_written == 2);
    CHECK(st.column_entries_written == 1);
    CHECK(st.column_entries_rewritten == 0);
    CHECK(st.lrd_recomputed == 2);  // c and p_c
    CHECK(st.lof_recomputed == 1);

    // N(p_c) = {c, b}; only c holds p_c in return.
    const auto& nc = s.neighbor_lists()[5];
    CHECK(nc.neighbors[0].index == 2);
    CHECK(nc.neighbors[1].index == 1);
    CHECK(s.rdm().find(5, 2).has_value());
    CHECK(s.rdm().find(5, 1).has_value());
    CHECK(s.rdm().find(2, 5).has_value());
    for (std::size_t i : {0u, 1u, 3u, 4u}) CHECK_FALSE(s.rdm().find(i, 5).has_value());
    CHECK(std::vector(s.rdm().row(1).begin(), s.rdm().row(1).end()) == b_row);
    CHECK(std::vector(scores(s).begin(), scores(s).begin() + 5) == before);
}

TEST_CASE("six-point micro instance: ILOF also rewrites the five existing cells of c's column") {
    DetectorState s = init_detector(kMicroStatic, LofParams{2}, Algo::ILOF);
    const InsertStats st = ilof_insert(s, kMicroNew);
    CHECK(st.row_entries_written == 2);
    CHECK(st.column_entries_written == 1);
    CHECK(st.column_entries_rewritten == 5);
    CHECK(st.touched() > 2 + 1 + 2 + 1);

    Dataset all = kMicroStatic;
    all.append(kMicroNew);
    CHECK(to_vec(scores(s)) == static_lof(all, LofParams{2}));
}

TEST_CASE("isolated insertion touches only the new point") {
    const Dataset ds = gen::uniform_points(5, 100, 2);
    const double far[2] = {1e4, -1e4};
    for (Algo a : {Algo::ILOF, Algo::EILOF}) {
        DetectorState s = init_detector(ds, LofParams{5}, a);
        const auto before = to_vec(scores(s));
        const InsertStats st = insert(s, far);
        CHECK(st.row_entries_written == 5);
        CHECK(st.column_entries_written == 0);
        CHECK(st.column_entries_rewritten == 0);
        CHECK(st.lrd_recomputed == 1);
        CHECK(st.lof_recomputed == 1);
        CHECK(std::vector(scores(s).begin(), scores(s).end() - 1) == before);
        CHECK(scores(s).back() > 100.0);
        Dataset all = ds;
        all.append(far);
        CHECK(scores(s).back() == static_lof(all, LofParams{5}).back());
    }
}

TEST_CASE("ILOF equals batch lof after every insertion") {
    for (std::uint64_t seed = 1; seed <= 12; ++seed) {
        const std::size_t k = std::vector<std::size_t>{3, 5, 10}[seed % 3];
        const Dataset base = gen::clustered_points(seed, 100, 2);
        const Dataset stream = gen::clustered_points(seed + 1000, 200, 2);
        DetectorState s = init_detector(base, LofParams{k}, Algo::ILOF);
        Dataset acc = base;
        for (std::size_t i = 0; i < stream.size(); ++i) {
            ilof_insert(s, stream[i]);
            acc.append(stream[i]);
            if (i % 25 != 24 && i + 1 != stream.size()) continue;
            const auto ref = static_lof(acc, LofParams{k});
            REQUIRE(s.lof().size() == ref.size());
            CHECK(s.lof() == ref);  // same summation order, so bit-equal
            check_index(s);
        }
        const auto brute = oracle::lof(gen::to_rows(acc), k);
        for (std::size_t i = 0; i < acc.size(); ++i) CHECK(oracle::rel_err(s.lof()[i], brute.lof[i]) <= 1e-9);
    }
}

TEST_CASE("ILOF rdm and lrd equal a freshly initialised detector") {
    const Dataset base = gen::uniform_points(77, 60, 3);
    const Dataset stream = gen::uniform_points(78, 60, 3);
    DetectorState s = init_detector(base, LofParams{4}, Algo::ILOF);
    for (std::size_t i = 0; i < stream.size(); ++i) ilof_insert(s, stream[i]);
    const DetectorState fresh = init_detector(concat(base, stream), LofParams{4}, Algo::ILOF);
    CHECK(s.rdm() == fresh.rdm());
    CHECK(s.lrd() == fresh.lrd());
    CHECK(s.neighbor_lists() == fresh.neighbor_lists());
}

TEST_CASE("EILOF never rewrites an existing score and respects its bounds") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const std::size_t k = 2 + seed % 9;
        const Dataset base = gen::clustered_points(seed, 80, 2);
        const Dataset stream = gen::clustered_points(seed + 500, 150, 2);
        DetectorState s = init_detector(base, LofParams{k}, Algo::EILOF);
        const auto initial = to_vec(scores(s));
        for (std::size_t i = 0; i < stream.size(); ++i) {
            const auto before = to_vec(scores(s));
            const InsertStats st = eilof_insert(s, stream[i]);
            const auto after = to_vec(scores(s));
            REQUIRE(after.size() == before.size() + 1);
            CHECK(std::equal(before.begin(), before.end(), after.begin()));
            CHECK(std::isfinite(after.back()));
            CHECK(st.row_entries_written == k);
            CHECK(st.column_entries_written <= k);
            CHECK(st.column_entries_rewritten == 0);
            CHECK(st.lrd_recomputed == st.column_entries_written + 1);
            CHECK(st.lof_recomputed == 1);
        }
        CHECK(std::equal(initial.begin(), initial.end(), s.lof().begin()));
        check_index(s);
    }
}

TEST_CASE("EILOF touches no more than ILOF on every insertion") {
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
        const Dataset base = gen::clustered_points(seed, 120, 2);
        const Dataset stream = gen::clustered_points(seed + 99, 150, 2);
        const std::size_t k = 3 + seed;
        DetectorState il = init_detector(base, LofParams{k}, Algo::ILOF);
        DetectorState el = init_detector(base, LofParams{k}, Algo::EILOF);
        for (std::size_t i = 0; i < stream.size(); ++i) {
            const InsertStats a = ilof_insert(il, stream[i]);
            const InsertStats b = eilof_insert(el, stream[i]);
            CHECK(b.touched() <= a.touched());
            CHECK(b.column_entries_written <= a.column_entries_written);
            CHECK(b.lrd_recomputed <= a.lrd_recomputed);
            // both engines keep the same exact neighbour index
            CHECK(il.neighbor_lists().back() == el.neighbor_lists().back());
        }
        CHECK(il.reverse_neighbors() == el.reverse_neighbors());
    }
}

TEST_CASE("a quiet first insertion scores the same under both engines") {
    const Dataset base = gen::uniform_points(4, 200, 2);
    // Random probes; the ones no existing list admits are the quiet ones.
    std::size_t quiet = 0;
    SplitMix64 rng(12);
    for (int trial = 0; trial < 400; ++trial) {
        const double p[2] = {40 * rng.uniform() - 20, 40 * rng.uniform() - 20};
        DetectorState il = init_detector(base, LofParams{6}, Algo::ILOF);
        DetectorState el = init_detector(base, LofParams{6}, Algo::EILOF);
        const InsertStats a = ilof_insert(il, p);
        eilof_insert(el, p);
        if (a.column_entries_written != 0) continue;
        ++quiet;
        CHECK(il.lof().back() == el.lof().back());
        CHECK(il.lof() == el.lof());
    }
    CHECK(quiet > 0);
}

TEST_CASE("coincident insertion stays finite") {
    const Dataset base = gen::clustered_points(8, 100, 2);
    for (Algo a : {Algo::ILOF, Algo::EILOF}) {
        DetectorState s = init_detector(base, LofParams{5}, a);
        for (int rep = 0; rep < 7; ++rep) insert(s, base[10]);
        for (double v : scores(s)) CHECK(std::isfinite(v));
        CHECK(s.lrd().back() == 1e12);
    }
}

TEST_CASE("identical inputs give identical states") {
    const Dataset base = gen::clustered_points(21, 100, 3);
    const Dataset stream = gen::clustered_points(22, 80, 3);
    for (Algo a : {Algo::ILOF, Algo::EILOF}) {
        DetectorState x = init_detector(base, LofParams{7}, a);
        DetectorState y = init_detector(base, LofParams{7}, a);
        for (std::size_t i = 0; i < stream.size(); ++i) {
            InsertStats sx = insert(x, stream[i]), sy = insert(y, stream[i]);
            sx.wall_time = sy.wall_time = {};
            CHECK(sx == sy);
        }
        CHECK(x == y);
    }
}
