#include "lofstream/error.hpp"
#include "lofstream/experiments.hpp"

#include <doctest.h>
#include <json.hpp>

#include <sstream>

using namespace lofstream;

namespace {

ExperimentPlan small_plan() {
    SynthRecipe r;
    r.n_initial = 200;
    r.n_stream = 160;
    ExperimentPlan p;
    p.source = r;
    p.k_values = {5, 12};
    p.m_schedule = {0, 1, 40, 80, 160};
    p.thresholds = {0.05, 0.1};
    p.eval_scope = {EvalScope::AllPoints, EvalScope::StreamedOnly};
    p.seed = 3;
    return p;
}

void zero_times(ResultGrid& g) {
    for (auto& [key, cell] : g.cells) cell.cumulative.wall_time = {};
}

}  // namespace

TEST_CASE("plan text round trips through format and parse") {
    const ExperimentPlan p = small_plan();
    const std::string text = format_plan(p);
    const ExperimentPlan q = parse_plan(text);
    CHECK(format_plan(q) == text);
    CHECK(plan_fingerprint(q) == plan_fingerprint(p));

    ExperimentPlan other = p;
    other.seed = 4;
    CHECK(plan_fingerprint(other) != plan_fingerprint(p));

    ExperimentPlan files;
    files.source = SplitFiles{"a.csv", "b.csv"};
    CHECK(format_plan(parse_plan(format_plan(files))) == format_plan(files));

    ExperimentPlan shuttle;
    PreparedSource ps;
    ps.recipe.variant = PrepVariant::Shuttle;
    ps.recipe.shuttle_features = {0, 2, 4};
    ps.recipe.shuttle_drop_class6 = true;
    ps.path = "shuttle.trn";
    shuttle.source = ps;
    shuttle.algos = {Algo::EILOF};
    CHECK(format_plan(parse_plan(format_plan(shuttle))) == format_plan(shuttle));
}

TEST_CASE("plan parser accepts comments and shorthands, rejects the unknown") {
    const ExperimentPlan p = parse_plan(
        "# sweep\nsource = synth\n  k_values = 10, 20 \nalgos = both\neval_scope = both\nthresholds=0.07\n\n");
    CHECK(p.k_values == std::vector<std::size_t>{10, 20});
    CHECK(p.algos.size() == 2);
    CHECK(p.eval_scope.size() == 2);
    CHECK(p.thresholds == std::vector<double>{0.07});
    CHECK(std::get<SynthRecipe>(p.source).dim == 2);

    CHECK_THROWS_AS(parse_plan("colour = red\n"), ParseError);
    CHECK_THROWS_AS(parse_plan("source = shuttle\npath = x\ndim = 3\n"), ParseError);
    CHECK_THROWS_AS(parse_plan("source = shuttle\n"), ParseError);
    CHECK_THROWS_AS(parse_plan("k_values = 5\nk_values = 6\n"), ParseError);
    CHECK_THROWS_AS(parse_plan("k_values = five\n"), ParseError);
    CHECK_THROWS_AS(parse_plan("just words\n"), ParseError);
    CHECK_THROWS_AS(parse_plan("thresholds = 1.5\n"), InvalidArgument);
    CHECK_THROWS_AS(parse_plan("algos = lof\n"), InvalidArgument);
    CHECK_THROWS_AS(parse_plan("source = mnist\npath = x\n"), InvalidArgument);
    CHECK_THROWS_AS(load_plan("/nonexistent/plan.txt"), IoError);
}

TEST_CASE("plan is checked against the data") {
    ExperimentPlan p = small_plan();
    p.m_schedule = {0, 161};
    CHECK_THROWS_AS(run_plan(p), InvalidArgument);
    p = small_plan();
    p.k_values = {200};
    CHECK_THROWS_AS(run_plan(p), InvalidArgument);
}

TEST_CASE("grid has one cell per combination and is reproducible") {
    const ExperimentPlan p = small_plan();
    ResultGrid a = run_plan(p), b = run_plan(p);
    CHECK(a.cells.size() == 2 * 2 * 5 * 2 * 2);
    CHECK(a.plan_fingerprint == plan_fingerprint(p));
    CHECK(a.static_count == 200);
    zero_times(a);
    zero_times(b);
    CHECK(a == b);
}

TEST_CASE("both engines start from the same baseline") {
    const ResultGrid g = run_plan(small_plan());
    for (std::size_t k : {5u, 12u})
        for (double t : {0.05, 0.1}) {
            CHECK(g.at(Algo::ILOF, k, 0, t).report == g.at(Algo::EILOF, k, 0, t).report);
            const EvalReport& e = g.at(Algo::ILOF, k, 0, t, EvalScope::StreamedOnly).report;
            CHECK(e.total() == 0);
            CHECK(g.at(Algo::ILOF, k, 0, t).report.total() == 200);
            CHECK(g.at(Algo::EILOF, k, 160, t).report.total() == 360);
            CHECK(g.at(Algo::EILOF, k, 160, t, EvalScope::StreamedOnly).report.total() == 160);
        }
    CHECK_THROWS_AS(g.at(Algo::ILOF, 7, 0, 0.05), InvalidArgument);
}

TEST_CASE("checkpoint reports equal fresh runs that stop there") {
    const ExperimentPlan p = small_plan();
    const ResultGrid full = run_plan(p);
    for (std::size_t m : {1u, 40u, 80u}) {
        ExperimentPlan q = p;
        q.m_schedule = {m};
        const ResultGrid fresh = run_plan(q);
        for (const auto& [key, cell] : fresh.cells) {
            const CellResult& c = full.cells.at(key);
            CHECK(c.report == cell.report);
            CHECK(c.cumulative.touched() == cell.cumulative.touched());
        }
    }
}

TEST_CASE("stream hash covers exactly the consumed prefix") {
    const ExperimentPlan p = small_plan();
    const LoadedData data = load_source(p);
    const ResultGrid g = run_plan(p, data);
    CHECK(g.stream_hash == sequence_hash(data.stream, 160));
    CHECK(g.stream_hash != sequence_hash(data.stream, 159));
    CHECK(sequence_hash(data.stream, 10) == sequence_hash(data.stream.slice(0, 10), 99));
}

TEST_CASE("grid exports") {
    const ResultGrid g = run_plan(small_plan());

    std::stringstream csv;
    export_grid(g, ExportFormat::Csv, csv);
    CHECK(import_grid_csv(csv) == g);

    std::stringstream js;
    export_grid(g, ExportFormat::Json, js);
    const auto j = nlohmann::json::parse(js.str());
    char hex[24];
    std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(g.plan_fingerprint));
    CHECK(j.at("plan_fingerprint") == hex);
    CHECK(j.at("cells").size() == g.cells.size());

    std::stringstream md;
    export_grid(g, ExportFormat::Markdown, md);
    const std::string text = md.str();
    std::size_t tables = 0;
    for (auto pos = text.find("### "); pos != std::string::npos; pos = text.find("### ", pos + 1)) ++tables;
    CHECK(tables == 2 * 2);  // per scope and threshold
    CHECK(text.find("| 12 |") != std::string::npos);

    std::stringstream bad("algo,k\nILOF,5\n");
    CHECK_THROWS_AS(import_grid_csv(bad), ParseError);
    CHECK(parse_export_format("md") == ExportFormat::Markdown);
    CHECK_THROWS_AS(parse_export_format("xml"), InvalidArgument);
}

TEST_CASE("bench series on the six-point micro instance") {
    LoadedData d;
    d.static_set = Dataset(2, {4, 2.3, 3, 1, 2, 0, 6, 2, 1, 4}, {0, 0, 0, 0, 0});
    d.stream = Dataset(2, {0, 0}, {1});
    ExperimentPlan p;
    p.k_values = {2};
    p.m_schedule = {1};
    const auto series = bench_updates(p, d);
    REQUIRE(series.size() == 2);
    const InsertStats& il = series[0].per_insertion.at(0);
    const InsertStats& el = series[1].per_insertion.at(0);
    CHECK(series[0].algo == Algo::ILOF);
    CHECK(el.row_entries_written == 2);
    CHECK(el.column_entries_written == 1);
    CHECK(il.row_entries_written == 2);
    CHECK(il.column_entries_written == 1);
    CHECK(il.column_entries_rewritten == 5);

    std::stringstream out;
    export_bench_csv(series, out);
    std::string line;
    std::size_t lines = 0;
    while (std::getline(out, line)) ++lines;
    CHECK(lines == 3);
}

TEST_CASE("bench series align across engines") {
    ExperimentPlan p = small_plan();
    p.m_schedule = {60};
    p.k_values = {8};
    const auto series = bench_updates(p);
    REQUIRE(series.size() == 2);
    REQUIRE(series[0].per_insertion.size() == 60);
    REQUIRE(series[1].per_insertion.size() == 60);
    std::size_t a = 0, b = 0;
    for (std::size_t i = 0; i < 60; ++i) {
        a += series[0].per_insertion[i].touched();
        b += series[1].per_insertion[i].touched();
        CHECK(b <= a);
    }
    CHECK(series[0].cumulative.touched() == a);
    CHECK(series[0].median_total.count() > 0);
}

TEST_CASE("documented example plan parses") {
    const ExperimentPlan p = parse_plan(R"(# default synthetic sweep, both evaluation scopes
source = synth            # synth | shuttle | credit | passthrough | files
dim = 2
n_initial = 1000
n_stream = 1280
outlier_fraction = 0.05
k_values = 10, 50, 100
m_schedule = 0, 320, 640, 1280
thresholds = 0.05, 0.07
algos = both              # ilof, eilof or both
eval_scope = both         # all_points, streamed_only or both
repetitions = 3
seed = 42
)");
    CHECK(p.k_values.size() == 3);
    CHECK(p.thresholds.size() == 2);
    CHECK(p.repetitions == 3);
}
