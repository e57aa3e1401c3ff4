#include "lofstream/error.hpp"
#include "lofstream/evaluation.hpp"
#include "lofstream/rng.hpp"

#include <doctest.h>

#include <cmath>

using namespace lofstream;

namespace {

std::vector<Label> flags_of(std::vector<double> s, double c) { return flag_outliers(s, ThresholdRule{c}); }

}  // namespace

TEST_CASE("flag examples") {
    CHECK(flags_of({1.0, 1.1, 3.0, 1.05}, 0.25) == std::vector<Label>{0, 0, 1, 0});
    CHECK(flags_of({2, 2, 2, 2}, 0.5) == std::vector<Label>{1, 1, 0, 0});
    CHECK(ThresholdRule{0.07}.flag_count(1640) == 115);
    CHECK(ThresholdRule{0.05}.flag_count(2280) == 114);
    CHECK(ThresholdRule{0.05}.flag_count(1640) == 82);
    CHECK(ThresholdRule{0.01}.flag_count(4) == 1);

    std::vector<double> s(1640);
    for (std::size_t i = 0; i < s.size(); ++i) s[i] = std::sin(double(i));
    const auto f = flag_outliers(s, ThresholdRule{0.07});
    CHECK(std::count(f.begin(), f.end(), 1) == 115);
}

TEST_CASE("flag rejects bad input") {
    CHECK_THROWS_AS(flags_of({}, 0.1), InvalidArgument);
    CHECK_THROWS_AS(flags_of({1, NAN}, 0.1), InvalidArgument);
    CHECK_THROWS_AS(flags_of({1, 2}, 0.0), InvalidArgument);
    CHECK_THROWS_AS(flags_of({1, 2}, 1.0), InvalidArgument);
    CHECK_THROWS_AS(flags_of({1, 2}, -0.5), InvalidArgument);
}

TEST_CASE("flags depend only on score ranks") {
    SplitMix64 rng(3);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 1 + rng.below(300);
        std::vector<double> s(n);
        for (double& v : s) v = rng.below(4) == 0 ? double(rng.below(5)) : 10 * rng.uniform();  // some ties
        const double c = 0.01 + 0.9 * rng.uniform();
        const auto base = flag_outliers(s, ThresholdRule{c});
        std::vector<double> t(n), u(n);
        for (std::size_t i = 0; i < n; ++i) {
            t[i] = std::exp(s[i] / 3.0) + 7.0;
            u[i] = 2.5 * s[i] * s[i] * s[i] - 1.0;
        }
        CHECK(flag_outliers(t, ThresholdRule{c}) == base);
        CHECK(flag_outliers(u, ThresholdRule{c}) == base);
    }
}

TEST_CASE("f1 examples") {
    const std::vector<Label> pred{1, 1, 1, 0, 0}, truth{1, 1, 0, 1, 0};
    const EvalReport r = f1_report(pred, truth);
    CHECK(r.tp == 2);
    CHECK(r.fp == 1);
    CHECK(r.fn == 1);
    CHECK(r.tn == 1);
    CHECK(r.precision == 2.0 / 3.0);
    CHECK(r.recall == 2.0 / 3.0);
    CHECK(r.f1 == 2.0 / 3.0);

    const EvalReport none = f1_report(std::vector<Label>{0, 0, 0}, std::vector<Label>{1, 0, 1});
    CHECK(none.f1 == 0.0);
    CHECK(none.precision == 0.0);
    CHECK(f1_report(truth, truth).f1 == 1.0);
    CHECK_THROWS_AS(f1_report(pred, std::vector<Label>{1}), InvalidArgument);
}

TEST_CASE("f1 bounds and symmetry") {
    SplitMix64 rng(11);
    for (int trial = 0; trial < 2000; ++trial) {
        const std::size_t n = 1 + rng.below(60);
        std::vector<Label> p(n), t(n);
        for (std::size_t i = 0; i < n; ++i) {
            p[i] = static_cast<Label>(rng.below(2));
            t[i] = static_cast<Label>(rng.below(2));
        }
        const EvalReport a = f1_report(p, t), b = f1_report(t, p);
        CHECK(a.total() == n);
        for (double v : {a.precision, a.recall, a.f1}) {
            CHECK(v >= 0.0);
            CHECK(v <= 1.0);
        }
        CHECK(a.tp == b.tp);
        CHECK(a.fp == b.fn);
        CHECK(a.f1 == doctest::Approx(b.f1).epsilon(1e-15));
        const double lo = std::min(a.precision, a.recall), hi = std::max(a.precision, a.recall);
        CHECK(a.f1 <= 2 * lo / (1 + lo) + 1e-12);
        CHECK(a.f1 >= lo - 1e-12);
        CHECK(a.f1 <= hi + 1e-12);
    }
}
