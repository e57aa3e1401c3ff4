// lofstream command line: simulate, prep, run, bench, score.
#include "lofstream/core_lof.hpp"
#include "lofstream/data_ingest.hpp"
#include "lofstream/error.hpp"
#include "lofstream/evaluation.hpp"
#include "lofstream/experiments.hpp"
#include "lofstream/synth_data.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using namespace lofstream;

namespace {

enum Exit { kOk = 0, kUsage = 2, kIo = 3, kEngine = 4 };

std::string default_out_dir() {
    const char* env = std::getenv("LOFSTREAM_OUT_DIR");
    return env && *env ? env : ".";
}

void ensure_dir(const std::string& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) throw IoError("cannot create output directory '" + dir + "'");
}

std::string hex(std::uint64_t v) {
    char buf[24];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

std::size_t count_outliers(const Dataset& ds) {
    std::size_t n = 0;
    for (Label l : ds.labels()) n += l;
    return n;
}

// ---------------------------------------------------------------- simulate

struct SimulateArgs {
    SynthRecipe recipe;
    bool per_point_direction = false;
    std::string out_dir = default_out_dir();
};

void add_simulate(CLI::App& app, SimulateArgs& a) {
    auto* cmd = app.add_subcommand("simulate", "generate a labelled synthetic initial/stream pair");
    cmd->add_option("--dim", a.recipe.dim, "dimensions")->capture_default_str();
    cmd->add_option("--n-initial", a.recipe.n_initial, "static points")->capture_default_str();
    cmd->add_option("--n-stream", a.recipe.n_stream, "stream points")->capture_default_str();
    cmd->add_option("--fraction", a.recipe.outlier_fraction, "outlier fraction")->capture_default_str();
    cmd->add_option("--scale", a.recipe.outlier_scale, "outlier spread")->capture_default_str();
    cmd->add_option("--shift", a.recipe.outlier_shift, "outlier offset from the core")->capture_default_str();
    cmd->add_option("--seed", a.recipe.seed, "rng seed")->capture_default_str();
    cmd->add_flag("--per-point-direction", a.per_point_direction, "draw a fresh offset direction per outlier");
    cmd->add_option("--out-dir", a.out_dir, "output directory (env LOFSTREAM_OUT_DIR)")->capture_default_str();
}

int cmd_simulate(SimulateArgs& a) {
    a.recipe.shared_direction = !a.per_point_direction;
    a.recipe.validate();
    const SynthData data = generate(a.recipe);
    ensure_dir(a.out_dir);
    write_csv((fs::path(a.out_dir) / "initial.csv").string(), data.initial);
    write_csv((fs::path(a.out_dir) / "stream.csv").string(), data.stream);
    std::cout << "initial.csv: " << data.initial.size() << " rows, " << count_outliers(data.initial)
              << " outliers\nstream.csv: " << data.stream.size() << " rows, " << count_outliers(data.stream)
              << " outliers\nwritten to " << a.out_dir << "\n";
    return kOk;
}

// -------------------------------------------------------------------- prep

struct PrepArgs {
    std::string variant;
    std::string input;
    PrepRecipe recipe;
    bool no_standardize = false;
    std::string features;
    std::uint64_t seed = 0;
    std::string out_dir = default_out_dir();
};

void add_prep(CLI::App& app, PrepArgs& a) {
    auto* cmd = app.add_subcommand("prep", "turn a raw dataset into an initial/stream pair");
    cmd->add_option("--variant", a.variant, "shuttle, credit or passthrough")->required();
    cmd->add_option("--input", a.input, "raw data file")->required()->check(CLI::ExistingFile);
    cmd->add_option("--static-count", a.recipe.static_count, "static points")->capture_default_str();
    cmd->add_option("--stream-count", a.recipe.stream_count, "stream points")->capture_default_str();
    cmd->add_flag("--no-standardize", a.no_standardize, "keep raw feature values");
    cmd->add_flag("--drop-class6", a.recipe.shuttle_drop_class6, "shuttle: drop class 6 rows");
    cmd->add_option("--features", a.features, "shuttle: comma separated feature columns (default 0..6)");
    cmd->add_option("--fraud-fraction", a.recipe.target_fraud_fraction, "credit: target fraud fraction")
        ->capture_default_str();
    cmd->add_option("--seed", a.seed, "credit: subsampling seed")->capture_default_str();
    cmd->add_option("--out-dir", a.out_dir, "output directory (env LOFSTREAM_OUT_DIR)")->capture_default_str();
}

std::vector<std::size_t> parse_size_list(const std::string& text, const char* what) {
    std::vector<std::size_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        std::size_t pos = 0;
        unsigned long long v = 0;
        try {
            v = std::stoull(item, &pos);
        } catch (const std::exception&) {
            pos = 0;
        }
        if (pos != item.size() || item.front() == '-')
            throw InvalidArgument(std::string("bad ") + what + " value '" + item + "'");
        out.push_back(v);
    }
    if (out.empty()) throw InvalidArgument(std::string("empty ") + what + " list");
    return out;
}

int cmd_prep(PrepArgs& a) {
    a.recipe.variant = parse_variant(a.variant);
    a.recipe.standardize = !a.no_standardize;
    a.recipe.subsample_seed = a.seed;
    if (!a.features.empty()) a.recipe.shuttle_features = parse_size_list(a.features, "feature");
    a.recipe.validate();
    Split split;
    switch (a.recipe.variant) {
        case PrepVariant::Shuttle: split = prep_shuttle(load_shuttle_raw(a.input), a.recipe); break;
        case PrepVariant::CreditFraud: split = prep_credit(load_credit_raw(a.input), a.recipe); break;
        case PrepVariant::Passthrough:
            split = prep_passthrough(load_csv(a.input, canonical_schema(true)), a.recipe);
            break;
    }
    for (const auto& w : split.warnings) std::cerr << "warning: " << w << "\n";
    ensure_dir(a.out_dir);
    write_csv((fs::path(a.out_dir) / "initial.csv").string(), split.static_set);
    write_csv((fs::path(a.out_dir) / "stream.csv").string(), split.stream);
    std::cout << to_string(a.recipe.variant) << ": " << split.static_set.size() << " static ("
              << count_outliers(split.static_set) << " outliers) + " << split.stream.size() << " stream ("
              << count_outliers(split.stream) << " outliers), dim " << split.static_set.dim() << "\n";
    if (a.recipe.variant == PrepVariant::Shuttle)
        std::cout << "class 6: " << (a.recipe.shuttle_drop_class6 ? "dropped" : "outlier") << "\n";
    std::cout << "written to " << a.out_dir << "\n";
    return kOk;
}

// ------------------------------------------------------------- run / bench

struct PlanArgs {
    std::string plan_file;
    std::string algo;
    std::vector<std::size_t> k;
    std::vector<double> thresholds;
    std::vector<std::size_t> m;
    std::string initial, stream;
    std::string scope;
    std::size_t repetitions = 0;
    std::uint64_t seed = 0;
    CLI::Option* seed_opt = nullptr;
};

void add_plan_options(CLI::App* cmd, PlanArgs& a) {
    cmd->add_option("--plan", a.plan_file, "plan file (key = value)")->check(CLI::ExistingFile);
    cmd->add_option("--algo", a.algo, "ilof, eilof or both (default both)");
    cmd->add_option("--k", a.k, "neighbourhood sizes, comma separated (default 50)")->delimiter(',');
    cmd->add_option("--initial", a.initial, "static CSV (canonical, labelled)")->check(CLI::ExistingFile);
    cmd->add_option("--stream", a.stream, "stream CSV (canonical, labelled)")->check(CLI::ExistingFile);
    cmd->add_option("--repetitions", a.repetitions, "timing repetitions");
    a.seed_opt = cmd->add_option("--seed", a.seed, "seed for synthetic data (default 42)");
}

ExperimentPlan build_plan(const PlanArgs& a) {
    ExperimentPlan plan = a.plan_file.empty() ? ExperimentPlan{} : load_plan(a.plan_file);
    if (a.initial.empty() != a.stream.empty()) throw InvalidArgument("--initial and --stream go together");
    if (!a.initial.empty()) plan.source = SplitFiles{a.initial, a.stream};
    if (!a.algo.empty()) {
        if (a.algo == "both")
            plan.algos = {Algo::ILOF, Algo::EILOF};
        else
            plan.algos = {parse_algo(a.algo)};
    }
    if (!a.k.empty()) plan.k_values = a.k;
    if (!a.thresholds.empty()) plan.thresholds = a.thresholds;
    if (!a.m.empty()) plan.m_schedule = a.m;
    if (!a.scope.empty()) {
        if (a.scope == "both")
            plan.eval_scope = {EvalScope::AllPoints, EvalScope::StreamedOnly};
        else
            plan.eval_scope = {parse_scope(a.scope)};
    }
    if (a.repetitions) plan.repetitions = a.repetitions;
    if (a.seed_opt->count()) plan.seed = a.seed;
    plan.validate();
    return plan;
}

struct RunArgs {
    PlanArgs plan;
    std::string format = "csv";
    std::string out;
};

void add_run(CLI::App& app, RunArgs& a) {
    auto* cmd = app.add_subcommand("run", "evaluate ILOF/EILOF over a k x m grid");
    add_plan_options(cmd, a.plan);
    cmd->add_option("--thresholds", a.plan.thresholds, "contamination values (default 0.05)")->delimiter(',');
    cmd->add_option("--m-checkpoints", a.plan.m, "stream checkpoints")->delimiter(',');
    cmd->add_option("--eval-scope", a.plan.scope, "all_points, streamed_only or both");
    cmd->add_option("--format", a.format, "grid export format: csv, json or md")->capture_default_str();
    cmd->add_option("--out", a.out, "grid export path (default $LOFSTREAM_OUT_DIR/grid.<format>)");
}

int cmd_run(RunArgs& a) {
    const ExperimentPlan plan = build_plan(a.plan);
    const ExportFormat format = parse_export_format(a.format);
    const LoadedData data = load_source(plan);
    const ResultGrid grid = run_plan(plan, data);

    // The summary is rendered from the CSV export, never from the in-memory grid.
    std::stringstream csv;
    export_grid(grid, ExportFormat::Csv, csv);
    const ResultGrid exported = import_grid_csv(csv);
    if (!(exported == grid)) throw Error("grid export does not round-trip");

    std::string out = a.out;
    if (out.empty()) {
        ensure_dir(default_out_dir());
        const char* ext = format == ExportFormat::Csv ? "csv" : format == ExportFormat::Json ? "json" : "md";
        out = (fs::path(default_out_dir()) / (std::string("grid.") + ext)).string();
    }
    export_grid(grid, format, out);
    // The plan beside the grid records the exact recipe (class-6 mode, features, seed).
    {
        std::ofstream plan_file(out + ".plan");
        if (!plan_file) throw IoError("cannot open '" + out + ".plan' for writing");
        plan_file << format_plan(plan);
    }

    std::cout << "static " << grid.static_count << ", stream hash " << hex(exported.stream_hash)
              << ", plan " << hex(exported.plan_fingerprint) << "\n\n";
    export_grid(exported, ExportFormat::Markdown, std::cout);
    std::cout << "\ngrid written to " << out << " (plan in " << out << ".plan)\n";
    return kOk;
}

struct BenchArgs {
    PlanArgs plan;
    std::size_t m = 0;
    std::string out;
};

void add_bench(CLI::App& app, BenchArgs& a) {
    auto* cmd = app.add_subcommand("bench", "per-insertion update counts and timings, ILOF vs EILOF");
    add_plan_options(cmd, a.plan);
    cmd->add_option("--m", a.m, "insertions to run (default: whole stream)");
    cmd->add_option("--out", a.out, "series CSV path (default $LOFSTREAM_OUT_DIR/bench.csv)");
}

int cmd_bench(BenchArgs& a) {
    ExperimentPlan plan = build_plan(a.plan);
    const LoadedData data = load_source(plan);
    plan.m_schedule = {a.m ? a.m : data.stream.size()};
    const auto series = bench_updates(plan, data);

    std::string out = a.out;
    if (out.empty()) {
        ensure_dir(default_out_dir());
        out = (fs::path(default_out_dir()) / "bench.csv").string();
    }
    std::ofstream file(out);
    if (!file) throw IoError("cannot open '" + out + "' for writing");
    export_bench_csv(series, file);
    if (!file) throw IoError("write failure on '" + out + "'");

    std::cout << "stream hash " << hex(sequence_hash(data.stream, plan.m_schedule.front())) << ", "
              << plan.m_schedule.front() << " insertions, median of " << std::max<std::size_t>(3, plan.repetitions)
              << " timed passes\n\n"
              << "| algo | k | row | column | rewritten | lrd | lof | touched | total ms |\n"
              << "|---|---|---|---|---|---|---|---|---|\n";
    for (const auto& s : series) {
        const auto& c = s.cumulative;
        std::cout << "| " << to_string(s.algo) << " | " << s.k << " | " << c.row_entries_written << " | "
                  << c.column_entries_written << " | " << c.column_entries_rewritten << " | " << c.lrd_recomputed
                  << " | " << c.lof_recomputed << " | " << c.touched() << " | " << std::fixed << std::setprecision(3)
                  << static_cast<double>(s.median_total.count()) / 1e6 << " |\n";
    }
    std::cout << "\nseries written to " << out << "\n";
    return kOk;
}

// ------------------------------------------------------------------ score

struct ScoreArgs {
    std::string input;
    std::size_t k = 50;
    double contamination = 0.05;
    std::string label_column = "label";
    std::string output;
};

void add_score(CLI::App& app, ScoreArgs& a) {
    auto* cmd = app.add_subcommand("score", "batch LOF of a CSV; appends lof and flag columns");
    cmd->add_option("--input", a.input, "CSV file")->required()->check(CLI::ExistingFile);
    cmd->add_option("--k", a.k, "neighbourhood size")->capture_default_str();
    cmd->add_option("--contamination", a.contamination, "fraction flagged")->capture_default_str();
    cmd->add_option("--label-column", a.label_column, "column excluded from the features if present")
        ->capture_default_str();
    cmd->add_option("--output", a.output, "output CSV (default stdout)");
}

int cmd_score(ScoreArgs& a) {
    const ThresholdRule rule{a.contamination};
    rule.validate();
    const NumericTable table = read_numeric_csv(a.input);
    CsvSchema schema;
    for (std::size_t c = 0; c < table.width(); ++c)
        if (table.columns[c] != a.label_column) schema.feature_columns.emplace_back(c);
    if (schema.feature_columns.empty()) throw InvalidArgument("no feature columns in '" + a.input + "'");
    const Dataset ds = to_dataset(table, schema);
    LofParams{a.k}.validate(ds.size());
    const BatchLof result = batch_lof(ds, LofParams{a.k});
    const auto flags = flag_outliers(result.lof, rule);

    std::ofstream file;
    if (!a.output.empty()) {
        file.open(a.output);
        if (!file) throw IoError("cannot open '" + a.output + "' for writing");
    }
    std::ostream& out = a.output.empty() ? std::cout : file;
    out << std::setprecision(17);
    for (const auto& name : table.columns) out << name << ',';
    out << "lof,flag\n";
    for (std::size_t r = 0; r < table.rows; ++r) {
        for (std::size_t c = 0; c < table.width(); ++c) out << table.at(r, c) << ',';
        out << result.lof[r] << ',' << int(flags[r]) << "\n";
    }
    if (!out) throw IoError("write failure");
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"streaming local outlier factor: ILOF and EILOF engines with their experiment harness"};
    app.require_subcommand(1);
    SimulateArgs simulate;
    PrepArgs prep;
    RunArgs run;
    BenchArgs bench;
    ScoreArgs score;
    add_simulate(app, simulate);
    add_prep(app, prep);
    add_run(app, run);
    add_bench(app, bench);
    add_score(app, score);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (app.got_subcommand("simulate")) return cmd_simulate(simulate);
        if (app.got_subcommand("prep")) return cmd_prep(prep);
        if (app.got_subcommand("run")) return cmd_run(run);
        if (app.got_subcommand("bench")) return cmd_bench(bench);
        if (app.got_subcommand("score")) return cmd_score(score);
    } catch (const InvalidArgument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kIo;
    } catch (const std::exception& e) {
        std::cerr << "engine failure: " << e.what() << "\n";
        return kEngine;
    }
    return kUsage;
}
