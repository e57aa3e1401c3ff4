#include "lofstream/experiments.hpp"

#include "lofstream/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <exception>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

namespace lofstream {

std::string_view to_string(EvalScope s) noexcept { return s == EvalScope::AllPoints ? "all_points" : "streamed_only"; }

EvalScope parse_scope(std::string_view text) {
    if (text == "all_points" || text == "all") return EvalScope::AllPoints;
    if (text == "streamed_only" || text == "streamed") return EvalScope::StreamedOnly;
    throw InvalidArgument("unknown eval scope '" + std::string(text) + "' (all_points, streamed_only)");
}

// ---------------------------------------------------------------- plan text

namespace {

std::string trim(std::string_view s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string_view::npos) return {};
    const auto b = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(a, b - a + 1));
}

std::vector<std::string> split_list(const std::string& value) {
    std::vector<std::string> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

std::string fmt_double(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

std::string hex64(std::uint64_t v) {
    char buf[24];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

std::uint64_t parse_hex64(const std::string& s) {
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v, 16);
    if (ec != std::errc{} || ptr != s.data() + s.size()) throw ParseError("bad hex value '" + s + "'", 0, 0);
    return v;
}

class KeyValues {
public:
    explicit KeyValues(std::string_view text) {
        std::size_t line_no = 0;
        std::stringstream ss{std::string(text)};
        std::string line;
        while (std::getline(ss, line)) {
            ++line_no;
            if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
            if (trim(line).empty()) continue;
            const auto eq = line.find('=');
            if (eq == std::string::npos) throw ParseError("expected 'key = value'", line_no, 0);
            std::string key = trim(std::string_view(line).substr(0, eq));
            if (values_.count(key)) throw ParseError("duplicate key '" + key + "'", line_no, 0);
            values_[key] = trim(std::string_view(line).substr(eq + 1));
            lines_[key] = line_no;
        }
    }

    bool has(const std::string& key) const { return values_.count(key) != 0; }

    std::string str(const std::string& key) {
        used_.insert(key);
        return values_.at(key);
    }

    template <class T>
    T number(const std::string& key) {
        return parse_number<T>(key, str(key));
    }

    template <class T>
    std::vector<T> list(const std::string& key) {
        std::vector<T> out;
        for (const auto& item : split_list(str(key))) out.push_back(parse_number<T>(key, item));
        return out;
    }

    bool boolean(const std::string& key) {
        const std::string v = str(key);
        if (v == "true" || v == "1" || v == "yes") return true;
        if (v == "false" || v == "0" || v == "no") return false;
        throw ParseError("key '" + key + "' expects true/false, got '" + v + "'", lines_.at(key), 0);
    }

    // Every key must have been consumed by now.
    void reject_unused(const std::string& source) const {
        for (const auto& [key, value] : values_)
            if (!used_.count(key))
                throw ParseError("unknown key '" + key + "' for source '" + source + "'", lines_.at(key), 0);
    }

private:
    template <class T>
    T parse_number(const std::string& key, const std::string& text) const {
        T v{};
        const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
        if (ec != std::errc{} || ptr != text.data() + text.size())
            throw ParseError("key '" + key + "' expects a number, got '" + text + "'", lines_.at(key), 0);
        return v;
    }

    std::map<std::string, std::string> values_;
    std::map<std::string, std::size_t> lines_;
    std::set<std::string> used_;
};

template <class T>
std::string join(const std::vector<T>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ",";
        if constexpr (std::is_floating_point_v<T>)
            out += fmt_double(v[i]);
        else
            out += std::to_string(v[i]);
    }
    return out;
}

}  // namespace

void ExperimentPlan::validate() const {
    if (k_values.empty()) throw InvalidArgument("plan needs at least one k");
    for (std::size_t k : k_values)
        if (k == 0) throw InvalidArgument("k must be at least 1");
    if (m_schedule.empty()) throw InvalidArgument("plan needs at least one m checkpoint");
    if (thresholds.empty()) throw InvalidArgument("plan needs at least one threshold");
    for (double t : thresholds) ThresholdRule{t}.validate();
    if (algos.empty()) throw InvalidArgument("plan needs at least one algorithm");
    if (eval_scope.empty()) throw InvalidArgument("plan needs at least one eval scope");
    if (repetitions == 0) throw InvalidArgument("repetitions must be at least 1");
    if (const auto* synth = std::get_if<SynthRecipe>(&source)) synth->validate();
    if (const auto* prepared = std::get_if<PreparedSource>(&source)) prepared->recipe.validate();
}

ExperimentPlan parse_plan(std::string_view text) {
    KeyValues kv(text);
    ExperimentPlan plan;
    const std::string source = kv.has("source") ? kv.str("source") : "synth";

    if (source == "synth") {
        SynthRecipe r;
        if (kv.has("dim")) r.dim = kv.number<std::size_t>("dim");
        if (kv.has("n_initial")) r.n_initial = kv.number<std::size_t>("n_initial");
        if (kv.has("n_stream")) r.n_stream = kv.number<std::size_t>("n_stream");
        if (kv.has("outlier_fraction")) r.outlier_fraction = kv.number<double>("outlier_fraction");
        if (kv.has("outlier_scale")) r.outlier_scale = kv.number<double>("outlier_scale");
        if (kv.has("outlier_shift")) r.outlier_shift = kv.number<double>("outlier_shift");
        if (kv.has("shared_direction")) r.shared_direction = kv.boolean("shared_direction");
        plan.source = r;
    } else if (source == "files") {
        SplitFiles f;
        if (!kv.has("initial") || !kv.has("stream")) throw ParseError("source 'files' needs initial and stream", 0, 0);
        f.initial = kv.str("initial");
        f.stream = kv.str("stream");
        plan.source = f;
    } else {
        PreparedSource p;
        p.recipe.variant = parse_variant(source);
        if (!kv.has("path")) throw ParseError("source '" + source + "' needs a path", 0, 0);
        p.path = kv.str("path");
        if (kv.has("static_count")) p.recipe.static_count = kv.number<std::size_t>("static_count");
        if (kv.has("stream_count")) p.recipe.stream_count = kv.number<std::size_t>("stream_count");
        if (kv.has("standardize")) p.recipe.standardize = kv.boolean("standardize");
        if (p.recipe.variant == PrepVariant::CreditFraud && kv.has("target_fraud_fraction"))
            p.recipe.target_fraud_fraction = kv.number<double>("target_fraud_fraction");
        if (p.recipe.variant == PrepVariant::Shuttle) {
            if (kv.has("drop_class6")) p.recipe.shuttle_drop_class6 = kv.boolean("drop_class6");
            if (kv.has("features")) p.recipe.shuttle_features = kv.list<std::size_t>("features");
        }
        plan.source = p;
    }

    if (kv.has("k_values")) plan.k_values = kv.list<std::size_t>("k_values");
    if (kv.has("m_schedule")) plan.m_schedule = kv.list<std::size_t>("m_schedule");
    if (kv.has("thresholds")) plan.thresholds = kv.list<double>("thresholds");
    if (kv.has("algos")) {
        plan.algos.clear();
        for (const auto& a : split_list(kv.str("algos"))) {
            if (a == "both") {
                plan.algos = {Algo::ILOF, Algo::EILOF};
                continue;
            }
            plan.algos.push_back(parse_algo(a));
        }
    }
    if (kv.has("eval_scope")) {
        plan.eval_scope.clear();
        for (const auto& s : split_list(kv.str("eval_scope"))) {
            if (s == "both") {
                plan.eval_scope = {EvalScope::AllPoints, EvalScope::StreamedOnly};
                continue;
            }
            plan.eval_scope.push_back(parse_scope(s));
        }
    }
    if (kv.has("repetitions")) plan.repetitions = kv.number<std::size_t>("repetitions");
    if (kv.has("seed")) plan.seed = kv.number<std::uint64_t>("seed");
    kv.reject_unused(source);
    plan.validate();
    return plan;
}

ExperimentPlan load_plan(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open plan '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_plan(ss.str());
}

std::string format_plan(const ExperimentPlan& plan) {
    std::ostringstream out;
    if (const auto* r = std::get_if<SynthRecipe>(&plan.source)) {
        out << "source = synth\n"
            << "dim = " << r->dim << "\n"
            << "n_initial = " << r->n_initial << "\n"
            << "n_stream = " << r->n_stream << "\n"
            << "outlier_fraction = " << fmt_double(r->outlier_fraction) << "\n"
            << "outlier_scale = " << fmt_double(r->outlier_scale) << "\n"
            << "outlier_shift = " << fmt_double(r->outlier_shift) << "\n"
            << "shared_direction = " << (r->shared_direction ? "true" : "false") << "\n";
    } else if (const auto* f = std::get_if<SplitFiles>(&plan.source)) {
        out << "source = files\ninitial = " << f->initial << "\nstream = " << f->stream << "\n";
    } else {
        const auto& p = std::get<PreparedSource>(plan.source);
        out << "source = " << to_string(p.recipe.variant) << "\n"
            << "path = " << p.path << "\n"
            << "static_count = " << p.recipe.static_count << "\n"
            << "stream_count = " << p.recipe.stream_count << "\n"
            << "standardize = " << (p.recipe.standardize ? "true" : "false") << "\n";
        if (p.recipe.variant == PrepVariant::CreditFraud)
            out << "target_fraud_fraction = " << fmt_double(p.recipe.target_fraud_fraction) << "\n";
        if (p.recipe.variant == PrepVariant::Shuttle)
            out << "drop_class6 = " << (p.recipe.shuttle_drop_class6 ? "true" : "false") << "\n"
                << "features = " << join(p.recipe.shuttle_features) << "\n";
    }
    std::string algos, scopes;
    for (Algo a : plan.algos) algos += (algos.empty() ? "" : ",") + std::string(to_string(a));
    for (EvalScope s : plan.eval_scope) scopes += (scopes.empty() ? "" : ",") + std::string(to_string(s));
    out << "k_values = " << join(plan.k_values) << "\n"
        << "m_schedule = " << join(plan.m_schedule) << "\n"
        << "thresholds = " << join(plan.thresholds) << "\n"
        << "algos = " << algos << "\n"
        << "eval_scope = " << scopes << "\n"
        << "repetitions = " << plan.repetitions << "\n"
        << "seed = " << plan.seed << "\n";
    return out.str();
}

namespace {

constexpr std::uint64_t kFnvOffset = 0xcbf29ce484222325ULL;
constexpr std::uint64_t kFnvPrime = 0x100000001b3ULL;

std::uint64_t fnv1a(const void* data, std::size_t size, std::uint64_t h = kFnvOffset) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < size; ++i) {
        h ^= p[i];
        h *= kFnvPrime;
    }
    return h;
}

}  // namespace

std::uint64_t plan_fingerprint(const ExperimentPlan& plan) {
    const std::string text = format_plan(plan);
    return fnv1a(text.data(), text.size());
}

std::uint64_t sequence_hash(const Dataset& ds, std::size_t count) {
    count = std::min(count, ds.size());
    return fnv1a(ds.coords().data(), count * ds.dim() * sizeof(double));
}

// ------------------------------------------------------------------ loading

LoadedData load_source(const ExperimentPlan& plan) {
    LoadedData data;
    if (const auto* r = std::get_if<SynthRecipe>(&plan.source)) {
        SynthRecipe recipe = *r;
        recipe.seed = plan.seed;
        SynthData d = generate(recipe);
        data.static_set = std::move(d.initial);
        data.stream = std::move(d.stream);
    } else if (const auto* f = std::get_if<SplitFiles>(&plan.source)) {
        data.static_set = load_csv(f->initial, canonical_schema(true));
        data.stream = load_csv(f->stream, canonical_schema(true));
    } else {
        const auto& p = std::get<PreparedSource>(plan.source);
        PrepRecipe recipe = p.recipe;
        Split split;
        switch (recipe.variant) {
            case PrepVariant::Shuttle: split = prep_shuttle(load_shuttle_raw(p.path), recipe); break;
            case PrepVariant::CreditFraud:
                recipe.subsample_seed = plan.seed;
                split = prep_credit(load_credit_raw(p.path), recipe);
                break;
            case PrepVariant::Passthrough:
                split = prep_passthrough(load_csv(p.path, canonical_schema(true)), recipe);
                break;
        }
        data.static_set = std::move(split.static_set);
        data.stream = std::move(split.stream);
    }
    return data;
}

// ------------------------------------------------------------------ running

const CellResult& ResultGrid::at(Algo a, std::size_t k, std::size_t m, double threshold, EvalScope scope) const {
    const auto it = cells.find(CellKey{a, k, m, threshold, scope});
    if (it == cells.end())
        throw InvalidArgument("no grid cell for " + std::string(to_string(a)) + " k=" + std::to_string(k) +
                              " m=" + std::to_string(m) + " threshold=" + fmt_double(threshold));
    return it->second;
}

namespace {

void check_against_data(const ExperimentPlan& plan, const LoadedData& data) {
    plan.validate();
    if (!data.static_set.has_labels() || !data.stream.has_labels())
        throw InvalidArgument("experiment data must carry ground-truth labels");
    if (data.static_set.dim() != data.stream.dim() && !data.stream.empty())
        throw DimensionMismatch(data.static_set.dim(), data.stream.dim());
    for (std::size_t m : plan.m_schedule)
        if (m > data.stream.size())
            throw InvalidArgument("checkpoint m=" + std::to_string(m) + " exceeds stream size " +
                                  std::to_string(data.stream.size()));
    for (std::size_t k : plan.k_values)
        if (k >= data.static_set.size())
            throw InvalidArgument("k=" + std::to_string(k) + " must be below the static count " +
                                  std::to_string(data.static_set.size()));
}

std::vector<std::size_t> checkpoints(const ExperimentPlan& plan) {
    std::vector<std::size_t> cps = plan.m_schedule;
    std::sort(cps.begin(), cps.end());
    cps.erase(std::unique(cps.begin(), cps.end()), cps.end());
    return cps;
}

template <class T>
T median(std::vector<T> v) {
    std::sort(v.begin(), v.end());
    return v[(v.size() - 1) / 2];
}

struct JobOutput {
    std::vector<std::vector<double>> snapshots;  // per checkpoint
    std::vector<InsertStats> cumulative;         // per checkpoint
    std::uint64_t hash = 0;
};

JobOutput run_job(Algo algo, std::size_t k, const LoadedData& data, const std::vector<std::size_t>& cps,
                  std::size_t repetitions) {
    const std::size_t max_m = cps.back();
    JobOutput out;
    std::vector<std::vector<std::chrono::nanoseconds>> walls(cps.size());
    for (std::size_t rep = 0; rep < repetitions; ++rep) {
        DetectorState state = init_detector(data.static_set, LofParams{k}, algo);
        InsertStats cum;
        std::size_t ci = 0;
        for (std::size_t m = 0; m <= max_m; ++m) {
            for (; ci < cps.size() && cps[ci] == m; ++ci) {
                walls[ci].push_back(cum.wall_time);
                if (rep == 0) {
                    const auto s = scores(state);
                    out.snapshots.emplace_back(s.begin(), s.end());
                    out.cumulative.push_back(cum);
                }
            }
            if (m < max_m) cum += insert(state, data.stream[m]);
        }
    }
    for (std::size_t ci = 0; ci < cps.size(); ++ci) out.cumulative[ci].wall_time = median(walls[ci]);
    out.hash = sequence_hash(data.stream, max_m);
    return out;
}

EvalReport evaluate(std::span<const double> scores, std::span<const Label> truth, double threshold) {
    if (scores.empty()) return EvalReport{};
    return f1_report(flag_outliers(scores, ThresholdRule{threshold}), truth);
}

}  // namespace

ResultGrid run_plan(const ExperimentPlan& plan) { return run_plan(plan, load_source(plan)); }

ResultGrid run_plan(const ExperimentPlan& plan, const LoadedData& data) {
    check_against_data(plan, data);
    const auto cps = checkpoints(plan);

    struct Job {
        Algo algo;
        std::size_t k;
    };
    std::vector<Job> jobs;
    for (Algo a : plan.algos)
        for (std::size_t k : plan.k_values) jobs.push_back({a, k});

    // Cells are independent; each owns its detector.
    std::vector<JobOutput> outputs(jobs.size());
    std::vector<std::exception_ptr> errors(jobs.size());
    const auto n_jobs = static_cast<std::int64_t>(jobs.size());
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t j = 0; j < n_jobs; ++j) {
        try {
            outputs[j] = run_job(jobs[j].algo, jobs[j].k, data, cps, plan.repetitions);
        } catch (...) {
            errors[j] = std::current_exception();
        }
    }
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);

    std::vector<Label> truth(data.static_set.labels());
    truth.insert(truth.end(), data.stream.labels().begin(), data.stream.labels().end());
    const std::size_t n0 = data.static_set.size();

    ResultGrid grid;
    grid.plan_fingerprint = plan_fingerprint(plan);
    grid.static_count = n0;
    grid.stream_hash = outputs.front().hash;
    for (std::size_t j = 0; j < jobs.size(); ++j) {
        if (outputs[j].hash != grid.stream_hash)
            throw Error("engines consumed different stream sequences");
        for (std::size_t ci = 0; ci < cps.size(); ++ci) {
            const auto& snap = outputs[j].snapshots[ci];
            for (double t : plan.thresholds) {
                for (EvalScope scope : plan.eval_scope) {
                    const std::size_t from = scope == EvalScope::AllPoints ? 0 : n0;
                    const std::span<const double> s(snap.data() + from, snap.size() - from);
                    const std::span<const Label> y(truth.data() + from, snap.size() - from);
                    grid.cells[CellKey{jobs[j].algo, jobs[j].k, cps[ci], t, scope}] =
                        CellResult{evaluate(s, y, t), outputs[j].cumulative[ci]};
                }
            }
        }
    }
    return grid;
}

std::vector<BenchSeries> bench_updates(const ExperimentPlan& plan) { return bench_updates(plan, load_source(plan)); }

std::vector<BenchSeries> bench_updates(const ExperimentPlan& plan, const LoadedData& data) {
    check_against_data(plan, data);
    const std::size_t max_m = checkpoints(plan).back();
    const std::size_t reps = std::max<std::size_t>(3, plan.repetitions);

    std::vector<BenchSeries> out;
    for (std::size_t k : plan.k_values) {
        for (Algo algo : plan.algos) {
            BenchSeries series{algo, k, {}, {}, {}};
            std::vector<std::vector<std::chrono::nanoseconds>> per(max_m);
            std::vector<std::chrono::nanoseconds> totals;
            for (std::size_t rep = 0; rep <= reps; ++rep) {  // rep 0 is warm-up
                DetectorState state = init_detector(data.static_set, LofParams{k}, algo);
                std::chrono::nanoseconds total{0};
                for (std::size_t m = 0; m < max_m; ++m) {
                    const InsertStats st = insert(state, data.stream[m]);
                    total += st.wall_time;
                    if (rep == 0) continue;
                    per[m].push_back(st.wall_time);
                    if (rep == 1) series.per_insertion.push_back(st);
                }
                if (rep != 0) totals.push_back(total);
            }
            for (std::size_t m = 0; m < max_m; ++m) {
                series.per_insertion[m].wall_time = median(per[m]);
                series.cumulative += series.per_insertion[m];
            }
            series.median_total = totals.empty() ? std::chrono::nanoseconds{0} : median(totals);
            out.push_back(std::move(series));
        }
    }
    return out;
}

// ------------------------------------------------------------------ exports

ExportFormat parse_export_format(std::string_view text) {
    if (text == "csv") return ExportFormat::Csv;
    if (text == "json") return ExportFormat::Json;
    if (text == "md" || text == "markdown") return ExportFormat::Markdown;
    throw InvalidArgument("unknown export format '" + std::string(text) + "' (csv, json, md)");
}

namespace {

constexpr const char* kCsvHeader =
    "algo,k,m,threshold,scope,tp,fp,fn,tn,precision,recall,f1,row_entries,column_entries,column_rewritten,"
    "lrd_recomputed,lof_recomputed,wall_ns";

void write_csv_grid(const ResultGrid& g, std::ostream& out) {
    out << "# plan_fingerprint=" << hex64(g.plan_fingerprint) << " stream_hash=" << hex64(g.stream_hash)
        << " static_count=" << g.static_count << "\n"
        << kCsvHeader << "\n";
    for (const auto& [key, cell] : g.cells) {
        const auto& r = cell.report;
        const auto& s = cell.cumulative;
        out << to_string(key.algo) << ',' << key.k << ',' << key.m << ',' << fmt_double(key.threshold) << ','
            << to_string(key.scope) << ',' << r.tp << ',' << r.fp << ',' << r.fn << ',' << r.tn << ','
            << fmt_double(r.precision) << ',' << fmt_double(r.recall) << ',' << fmt_double(r.f1) << ','
            << s.row_entries_written << ',' << s.column_entries_written << ',' << s.column_entries_rewritten << ','
            << s.lrd_recomputed << ',' << s.lof_recomputed << ',' << s.wall_time.count() << "\n";
    }
}

void write_json_grid(const ResultGrid& g, std::ostream& out) {
    nlohmann::ordered_json j;
    j["plan_fingerprint"] = hex64(g.plan_fingerprint);
    j["stream_hash"] = hex64(g.stream_hash);
    j["static_count"] = g.static_count;
    auto& cells = j["cells"] = nlohmann::ordered_json::array();
    for (const auto& [key, cell] : g.cells) {
        const auto& r = cell.report;
        const auto& s = cell.cumulative;
        cells.push_back({{"algo", to_string(key.algo)},
                         {"k", key.k},
                         {"m", key.m},
                         {"threshold", key.threshold},
                         {"scope", to_string(key.scope)},
                         {"tp", r.tp},
                         {"fp", r.fp},
                         {"fn", r.fn},
                         {"tn", r.tn},
                         {"precision", r.precision},
                         {"recall", r.recall},
                         {"f1", r.f1},
                         {"row_entries", s.row_entries_written},
                         {"column_entries", s.column_entries_written},
                         {"column_rewritten", s.column_entries_rewritten},
                         {"lrd_recomputed", s.lrd_recomputed},
                         {"lof_recomputed", s.lof_recomputed},
                         {"wall_ns", s.wall_time.count()}});
    }
    out << j.dump(2) << "\n";
}

// One table per (scope, threshold): k rows, m x algo columns, F1 cells.
void write_markdown_grid(const ResultGrid& g, std::ostream& out) {
    std::set<EvalScope> scopes;
    std::set<double> thresholds;
    std::set<std::size_t> ks, ms;
    std::set<Algo> algos;
    for (const auto& [key, cell] : g.cells) {
        scopes.insert(key.scope);
        thresholds.insert(key.threshold);
        ks.insert(key.k);
        ms.insert(key.m);
        algos.insert(key.algo);
    }
    out << std::fixed << std::setprecision(4);
    bool first = true;
    for (EvalScope scope : scopes) {
        for (double t : thresholds) {
            if (!first) out << "\n";
            first = false;
            out << "### F1, threshold " << fmt_double(t * 100.0) << "%, " << to_string(scope) << "\n\n| k |";
            for (std::size_t m : ms)
                for (Algo a : algos) out << " m=" << m << ' ' << to_string(a) << " |";
            out << "\n|---|";
            for (std::size_t i = 0; i < ms.size() * algos.size(); ++i) out << "---|";
            out << "\n";
            for (std::size_t k : ks) {
                out << "| " << k << " |";
                for (std::size_t m : ms)
                    for (Algo a : algos) {
                        const auto it = g.cells.find(CellKey{a, k, m, t, scope});
                        if (it == g.cells.end())
                            out << "  |";
                        else
                            out << ' ' << it->second.report.f1 << " |";
                    }
                out << "\n";
            }
        }
    }
}

}  // namespace

void export_grid(const ResultGrid& grid, ExportFormat format, std::ostream& out) {
    switch (format) {
        case ExportFormat::Csv: write_csv_grid(grid, out); break;
        case ExportFormat::Json: write_json_grid(grid, out); break;
        case ExportFormat::Markdown: write_markdown_grid(grid, out); break;
    }
}

void export_grid(const ResultGrid& grid, ExportFormat format, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    export_grid(grid, format, out);
    if (!out) throw IoError("write failure on '" + path + "'");
}

ResultGrid import_grid_csv(std::istream& in) {
    ResultGrid g;
    std::string line;
    std::size_t line_no = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line.starts_with("#")) {
            std::istringstream meta(line.substr(1));
            std::string field;
            while (meta >> field) {
                const auto eq = field.find('=');
                if (eq == std::string::npos) continue;
                const std::string key = field.substr(0, eq), value = field.substr(eq + 1);
                if (key == "plan_fingerprint") g.plan_fingerprint = parse_hex64(value);
                if (key == "stream_hash") g.stream_hash = parse_hex64(value);
                if (key == "static_count") g.static_count = std::stoull(value);
            }
            continue;
        }
        if (!header_seen) {
            if (line != kCsvHeader) throw ParseError("unexpected grid CSV header", line_no, 0);
            header_seen = true;
            continue;
        }
        const auto f = split_list(line);
        if (f.size() != 18) throw ParseError("expected 18 fields", line_no, 0);
        try {
            CellKey key{parse_algo(f[0]), std::stoull(f[1]), std::stoull(f[2]), std::stod(f[3]), parse_scope(f[4])};
            CellResult cell;
            cell.report = make_report(std::stoull(f[5]), std::stoull(f[6]), std::stoull(f[7]), std::stoull(f[8]));
            cell.report.precision = std::stod(f[9]);
            cell.report.recall = std::stod(f[10]);
            cell.report.f1 = std::stod(f[11]);
            cell.cumulative.row_entries_written = std::stoull(f[12]);
            cell.cumulative.column_entries_written = std::stoull(f[13]);
            cell.cumulative.column_entries_rewritten = std::stoull(f[14]);
            cell.cumulative.lrd_recomputed = std::stoull(f[15]);
            cell.cumulative.lof_recomputed = std::stoull(f[16]);
            cell.cumulative.wall_time = std::chrono::nanoseconds(std::stoll(f[17]));
            g.cells[key] = cell;
        } catch (const std::logic_error& e) {
            throw ParseError(std::string("malformed grid row: ") + e.what(), line_no, 0);
        }
    }
    return g;
}

void export_bench_csv(const std::vector<BenchSeries>& series, std::ostream& out) {
    out << "algo,k,insertion,row_entries,column_entries,column_rewritten,lrd_recomputed,lof_recomputed,touched,"
           "wall_ns\n";
    for (const auto& s : series) {
        for (std::size_t i = 0; i < s.per_insertion.size(); ++i) {
            const auto& st = s.per_insertion[i];
            out << to_string(s.algo) << ',' << s.k << ',' << i + 1 << ',' << st.row_entries_written << ','
                << st.column_entries_written << ',' << st.column_entries_rewritten << ',' << st.lrd_recomputed
                << ',' << st.lof_recomputed << ',' << st.touched() << ',' << st.wall_time.count() << "\n";
        }
    }
}

}  // namespace lofstream
