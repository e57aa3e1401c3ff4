#pragma once

#include "lofstream/data_ingest.hpp"
#include "lofstream/evaluation.hpp"
#include "lofstream/streaming.hpp"
#include "lofstream/synth_data.hpp"

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace lofstream {

enum class EvalScope { AllPoints, StreamedOnly };

std::string_view to_string(EvalScope s) noexcept;
EvalScope parse_scope(std::string_view text);

// Raw file run through one of the preprocessing recipes.
struct PreparedSource {
    PrepRecipe recipe;
    std::string path;
};

// Already-split canonical CSVs (as written by `simulate` or `prep`).
struct SplitFiles {
    std::string initial;
    std::string stream;
};

using DataSource = std::variant<SynthRecipe, PreparedSource, SplitFiles>;

struct ExperimentPlan {
    DataSource source = SynthRecipe{};
    std::vector<std::size_t> k_values = {50};
    std::vector<std::size_t> m_schedule = {0, 1, 5, 10, 20, 40, 80, 160, 320, 640, 1280};
    std::vector<double> thresholds = {0.05};
    std::vector<Algo> algos = {Algo::ILOF, Algo::EILOF};
    std::vector<EvalScope> eval_scope = {EvalScope::AllPoints};
    std::size_t repetitions = 1;
    std::uint64_t seed = 42;

    // Checks that need no data (sizes are checked once the data is loaded).
    void validate() const;
};

// Flat `key = value` text; lists comma separated, `#` starts a comment.
// Unknown keys are rejected.
ExperimentPlan parse_plan(std::string_view text);
ExperimentPlan load_plan(const std::string& path);
// Canonical text: fixed key order, every key spelled out.
std::string format_plan(const ExperimentPlan& plan);
std::uint64_t plan_fingerprint(const ExperimentPlan& plan);

struct LoadedData {
    Dataset static_set;
    Dataset stream;
};

// Materialises the plan's source; synthetic and credit sources take plan.seed.
LoadedData load_source(const ExperimentPlan& plan);

// FNV-1a over the coordinate bytes of `ds`.
std::uint64_t sequence_hash(const Dataset& ds, std::size_t count);

struct CellKey {
    Algo algo;
    std::size_t k;
    std::size_t m;
    double threshold;
    EvalScope scope;
    auto operator<=>(const CellKey&) const = default;
};

struct CellResult {
    EvalReport report;
    InsertStats cumulative;  // over the first m insertions; wall_time is the median over repetitions
    bool operator==(const CellResult&) const = default;
};

struct ResultGrid {
    std::uint64_t plan_fingerprint = 0;
    std::uint64_t stream_hash = 0;  // of the stream prefix every engine consumed
    std::size_t static_count = 0;
    std::map<CellKey, CellResult> cells;

    const CellResult& at(Algo a, std::size_t k, std::size_t m, double threshold,
                         EvalScope scope = EvalScope::AllPoints) const;
    bool operator==(const ResultGrid&) const = default;
};

ResultGrid run_plan(const ExperimentPlan& plan);
// Same, on data already loaded (the plan's source is ignored).
ResultGrid run_plan(const ExperimentPlan& plan, const LoadedData& data);

struct BenchSeries {
    Algo algo;
    std::size_t k;
    std::vector<InsertStats> per_insertion;  // wall_time: median over repetitions
    InsertStats cumulative;
    std::chrono::nanoseconds median_total{0};  // median over repetitions of the summed insertion time
};

// Per-insertion work for every (algo, k) over the first max(m_schedule)
// stream points. One warm-up pass is discarded, then plan.repetitions passes
// (at least 3) are timed. Runs serially.
std::vector<BenchSeries> bench_updates(const ExperimentPlan& plan);
std::vector<BenchSeries> bench_updates(const ExperimentPlan& plan, const LoadedData& data);

enum class ExportFormat { Csv, Json, Markdown };
ExportFormat parse_export_format(std::string_view text);

void export_grid(const ResultGrid& grid, ExportFormat format, std::ostream& out);
void export_grid(const ResultGrid& grid, ExportFormat format, const std::string& path);
ResultGrid import_grid_csv(std::istream& in);

void export_bench_csv(const std::vector<BenchSeries>& series, std::ostream& out);

}  // namespace lofstream
