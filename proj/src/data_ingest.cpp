#include "lofstream/data_ingest.hpp"

#include "lofstream/error.hpp"
#include "lofstream/rng.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <set>
#include <sstream>

namespace lofstream {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    s = s.substr(first, last - first + 1);
    if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
    return s;
}

std::vector<std::string_view> split(std::string_view line, char delimiter) {
    std::vector<std::string_view> cells;
    if (delimiter == ' ') {
        std::size_t i = 0;
        while (i < line.size()) {
            while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
            if (i == line.size()) break;
            std::size_t j = i;
            while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
            cells.push_back(trim(line.substr(i, j - i)));
            i = j;
        }
        return cells;
    }
    std::size_t start = 0;
    for (;;) {
        const auto pos = line.find(delimiter, start);
        cells.push_back(trim(line.substr(start, pos == std::string_view::npos ? pos : pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return cells;
}

std::optional<double> parse_number(std::string_view cell) {
    if (!cell.empty() && cell.front() == '+') cell.remove_prefix(1);
    if (cell.empty()) return std::nullopt;
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
    if (ec != std::errc{} || ptr != cell.data() + cell.size()) return std::nullopt;
    return v;
}

bool is_blank(std::string_view line) { return line.find_first_not_of(" \t\r\n") == std::string_view::npos; }

}  // namespace

std::size_t NumericTable::resolve(const ColumnRef& ref) const {
    if (const auto* idx = std::get_if<std::size_t>(&ref)) {
        if (*idx >= width())
            throw ParseError("column index " + std::to_string(*idx) + " out of range for " +
                                 std::to_string(width()) + " columns",
                             0, *idx + 1);
        return *idx;
    }
    const auto& name = std::get<std::string>(ref);
    const auto it = std::find(columns.begin(), columns.end(), name);
    if (it == columns.end()) throw ParseError("missing column '" + name + "'", 0, 0);
    return static_cast<std::size_t>(it - columns.begin());
}

NumericTable read_numeric_csv(std::istream& in, const CsvOptions& options) {
    NumericTable table;
    std::string line;
    std::size_t line_no = 0;
    bool first = true;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view view = line;
        if (line_no == 1 && view.starts_with("\xEF\xBB\xBF")) view.remove_prefix(3);
        if (is_blank(view)) continue;
        const auto cells = split(view, options.delimiter);

        if (first) {
            first = false;
            bool header = options.header == HeaderMode::Present;
            if (options.header == HeaderMode::Auto)
                header = std::any_of(cells.begin(), cells.end(), [](auto c) { return !parse_number(c); });
            if (header) {
                for (auto c : cells) table.columns.emplace_back(c);
                continue;
            }
            for (std::size_t c = 0; c < cells.size(); ++c) table.columns.push_back("c" + std::to_string(c));
        }

        if (cells.size() != table.width())
            throw ParseError("expected " + std::to_string(table.width()) + " fields, found " +
                                 std::to_string(cells.size()),
                             line_no, std::min(cells.size(), table.width()) + 1);
        for (std::size_t c = 0; c < cells.size(); ++c) {
            const auto v = parse_number(cells[c]);
            if (!v) throw ParseError("non-numeric value '" + std::string(cells[c]) + "'", line_no, c + 1);
            if (!std::isfinite(*v))
                throw ParseError("non-finite value '" + std::string(cells[c]) + "'", line_no, c + 1);
            table.cells.push_back(*v);
        }
        ++table.rows;
    }
    if (in.bad()) throw IoError("read failure");
    return table;
}

NumericTable read_numeric_csv(const std::string& path, const CsvOptions& options) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "' for reading");
    return read_numeric_csv(in, options);
}

CsvSchema canonical_schema(bool labelled) {
    CsvSchema s;
    if (labelled) s.label_column = ColumnRef{std::string("label")};
    s.options = {',', HeaderMode::Present};
    return s;
}

Dataset to_dataset(const NumericTable& table, const CsvSchema& schema) {
    std::optional<std::size_t> label;
    if (schema.label_column) label = table.resolve(*schema.label_column);
    std::vector<std::size_t> features;
    if (schema.feature_columns.empty()) {
        for (std::size_t c = 0; c < table.width(); ++c)
            if (c != label) features.push_back(c);
    } else {
        for (const auto& ref : schema.feature_columns) features.push_back(table.resolve(ref));
    }
    if (features.empty()) throw ParseError("no feature columns", 0, 0);

    std::vector<double> coords;
    coords.reserve(table.rows * features.size());
    std::vector<Label> labels;
    for (std::size_t r = 0; r < table.rows; ++r) {
        for (std::size_t c : features) coords.push_back(table.at(r, c));
        if (label) {
            const double v = table.at(r, *label);
            if (v != 0.0 && v != 1.0)
                throw ParseError("label must be 0 or 1, found " + std::to_string(v), r + 1, *label + 1);
            labels.push_back(static_cast<Label>(v));
        }
    }
    if (label) return Dataset(features.size(), std::move(coords), std::move(labels));
    return Dataset(features.size(), std::move(coords));
}

Dataset load_csv(const std::string& path, const CsvSchema& schema) {
    return to_dataset(read_numeric_csv(path, schema.options), schema);
}

void write_csv(std::ostream& out, const Dataset& ds) {
    for (std::size_t d = 0; d < ds.dim(); ++d) out << (d ? "," : "") << 'f' << d;
    if (ds.has_labels()) out << ",label";
    out << '\n' << std::setprecision(17);
    for (std::size_t i = 0; i < ds.size(); ++i) {
        const auto p = ds[i];
        for (std::size_t d = 0; d < p.size(); ++d) out << (d ? "," : "") << p[d];
        if (ds.has_labels()) out << ',' << static_cast<int>(ds.label(i));
        out << '\n';
    }
}

void write_csv(const std::string& path, const Dataset& ds) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    write_csv(out, ds);
    if (!out) throw IoError("write failure on '" + path + "'");
}

Dataset standardize(const Dataset& ds) {
    const std::size_t n = ds.size(), dim = ds.dim();
    if (n == 0) return ds;
    std::vector<double> coords(ds.coords().begin(), ds.coords().end());
    for (std::size_t d = 0; d < dim; ++d) {
        double mean = 0.0;
        for (std::size_t i = 0; i < n; ++i) mean += coords[i * dim + d];
        mean /= static_cast<double>(n);
        double var = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double diff = coords[i * dim + d] - mean;
            var += diff * diff;
        }
        const double sd = std::sqrt(var / static_cast<double>(n));
        // Spread this small relative to the mean is rounding noise, not signal.
        const bool constant = sd <= 1e-12 * std::max(1.0, std::abs(mean));
        for (std::size_t i = 0; i < n; ++i) {
            double& x = coords[i * dim + d];
            x = constant ? 0.0 : (x - mean) / sd;
        }
    }
    if (ds.has_labels()) return Dataset(dim, std::move(coords), ds.labels());
    return Dataset(dim, std::move(coords));
}

void PrepRecipe::validate() const {
    if (static_count == 0 || stream_count == 0) throw InvalidArgument("static and stream counts must be positive");
    if (variant == PrepVariant::CreditFraud && !(target_fraud_fraction > 0.0 && target_fraud_fraction < 1.0))
        throw InvalidArgument("target fraud fraction must lie strictly between 0 and 1");
    if (variant == PrepVariant::Shuttle && shuttle_features.empty())
        throw InvalidArgument("shuttle recipe needs at least one feature column");
}

namespace {

Split finish(const Dataset& selected, const PrepRecipe& recipe, std::vector<std::string> warnings) {
    const std::size_t want = recipe.static_count + recipe.stream_count;
    if (selected.size() < want)
        throw InvalidArgument("only " + std::to_string(selected.size()) + " rows available, " +
                              std::to_string(want) + " required");
    Split out;
    out.static_set = selected.slice(0, recipe.static_count);
    out.stream = selected.slice(recipe.static_count, recipe.stream_count);
    if (recipe.standardize) {
        out.static_set = standardize(out.static_set);
        out.stream = standardize(out.stream);
    }
    out.warnings = std::move(warnings);
    return out;
}

RawData raw_from_table(const NumericTable& t, std::size_t class_col, std::optional<std::size_t> time_col) {
    RawData raw;
    std::vector<std::size_t> features;
    for (std::size_t c = 0; c < t.width(); ++c)
        if (c != class_col && c != time_col) features.push_back(c);
    if (features.empty()) throw ParseError("no feature columns", 0, 0);
    std::vector<double> coords;
    coords.reserve(t.rows * features.size());
    for (std::size_t r = 0; r < t.rows; ++r) {
        for (std::size_t c : features) coords.push_back(t.at(r, c));
        const double cls = t.at(r, class_col);
        if (cls != std::floor(cls)) throw ParseError("class must be an integer", r + 1, class_col + 1);
        raw.classes.push_back(static_cast<long>(cls));
        if (time_col) raw.time.push_back(t.at(r, *time_col));
    }
    raw.features = Dataset(features.size(), std::move(coords));
    return raw;
}

}  // namespace

RawData load_shuttle_raw(const std::string& path, const CsvOptions& options) {
    const NumericTable t = read_numeric_csv(path, options);
    if (t.width() < 2) throw ParseError("shuttle file needs features and a class column", 0, 0);
    return raw_from_table(t, t.width() - 1, std::nullopt);
}

RawData load_credit_raw(const std::string& path, const CsvOptions& options) {
    const NumericTable t = read_numeric_csv(path, options);
    return raw_from_table(t, t.resolve(std::string("Class")), t.resolve(std::string("Time")));
}

Split prep_shuttle(const RawData& raw, const PrepRecipe& recipe) {
    recipe.validate();
    const Dataset& f = raw.features;
    for (std::size_t c : recipe.shuttle_features)
        if (c >= f.dim()) throw InvalidArgument("shuttle feature column " + std::to_string(c) + " out of range");

    // Raw classes run 1..7, so a 0 marks an already-binarised file.
    const bool binary = std::all_of(raw.classes.begin(), raw.classes.end(), [](long c) { return c == 0 || c == 1; }) &&
                        std::find(raw.classes.begin(), raw.classes.end(), 0L) != raw.classes.end();
    std::vector<std::string> warnings;
    if (!binary) {
        std::set<long> seen(raw.classes.begin(), raw.classes.end());
        for (long c = 1; c <= 7; ++c)
            if (!seen.count(c)) warnings.push_back("class " + std::to_string(c) + " absent from input");
        for (long c : seen)
            if (c < 1 || c > 7) throw InvalidArgument("unexpected shuttle class " + std::to_string(c));
    }

    Dataset kept(recipe.shuttle_features.size());
    std::vector<double> row(recipe.shuttle_features.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        const long cls = raw.classes[i];
        Label label;
        if (binary) {
            label = static_cast<Label>(cls);
        } else {
            if (cls == 4 || (cls == 6 && recipe.shuttle_drop_class6)) continue;
            label = cls == 1 ? 0 : 1;
        }
        for (std::size_t j = 0; j < row.size(); ++j) row[j] = f[i][recipe.shuttle_features[j]];
        kept.append(row, label);
        if (kept.size() == recipe.static_count + recipe.stream_count) break;
    }
    return finish(kept, recipe, std::move(warnings));
}

Split prep_credit(const RawData& raw, const PrepRecipe& recipe) {
    recipe.validate();
    if (raw.time.size() != raw.features.size()) throw InvalidArgument("credit data needs a time value per row");
    std::vector<std::size_t> fraud, legit;
    for (std::size_t i = 0; i < raw.classes.size(); ++i) {
        if (raw.classes[i] == 1)
            fraud.push_back(i);
        else if (raw.classes[i] == 0)
            legit.push_back(i);
        else
            throw InvalidArgument("credit class must be 0 or 1");
    }
    if (fraud.empty()) throw InvalidArgument("credit data contains no fraud rows");
    const double f = recipe.target_fraud_fraction;
    const auto legit_needed =
        static_cast<std::size_t>(std::llround(static_cast<double>(fraud.size()) * (1.0 - f) / f));
    if (legit_needed > legit.size())
        throw InvalidArgument("insufficient legitimate rows: need " + std::to_string(legit_needed) + ", have " +
                              std::to_string(legit.size()));

    SplitMix64 rng(recipe.subsample_seed);
    for (std::size_t i = 0; i < legit_needed; ++i) {
        const auto j = i + static_cast<std::size_t>(rng.below(legit.size() - i));
        std::swap(legit[i], legit[j]);
    }
    std::vector<std::size_t> chosen = fraud;
    chosen.insert(chosen.end(), legit.begin(), legit.begin() + static_cast<std::ptrdiff_t>(legit_needed));
    std::sort(chosen.begin(), chosen.end(), [&](std::size_t a, std::size_t b) {
        return raw.time[a] != raw.time[b] ? raw.time[a] < raw.time[b] : a < b;
    });

    Dataset selected(raw.features.dim());
    const std::size_t take = std::min(chosen.size(), recipe.static_count + recipe.stream_count);
    for (std::size_t i = 0; i < take; ++i) selected.append(raw.features[chosen[i]], static_cast<Label>(raw.classes[chosen[i]]));
    return finish(selected, recipe, {});
}

Split prep_passthrough(const Dataset& ds, const PrepRecipe& recipe) {
    recipe.validate();
    if (!ds.has_labels()) throw InvalidArgument("passthrough input must be labelled");
    return finish(ds.slice(0, std::min(ds.size(), recipe.static_count + recipe.stream_count)), recipe, {});
}

PrepVariant parse_variant(const std::string& text) {
    if (text == "shuttle") return PrepVariant::Shuttle;
    if (text == "credit" || text == "creditfraud" || text == "credit_fraud") return PrepVariant::CreditFraud;
    if (text == "passthrough") return PrepVariant::Passthrough;
    throw InvalidArgument("unknown preprocessing variant '" + text + "' (shuttle, credit, passthrough)");
}

std::string to_string(PrepVariant v) {
    switch (v) {
        case PrepVariant::Shuttle: return "shuttle";
        case PrepVariant::CreditFraud: return "credit";
        case PrepVariant::Passthrough: return "passthrough";
    }
    return "?";
}

}  // namespace lofstream
