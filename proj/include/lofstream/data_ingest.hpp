#pragma once

#include "lofstream/dataset.hpp"

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace lofstream {

// A column named by header text or by 0-based position.
using ColumnRef = std::variant<std::size_t, std::string>;

enum class HeaderMode { Auto, Present, Absent };

struct CsvOptions {
    char delimiter = ',';  // ' ' splits on runs of blanks
    HeaderMode header = HeaderMode::Auto;
};

// Every cell parsed as a finite double. Surrounding quotes are stripped.
struct NumericTable {
    std::vector<std::string> columns;  // header names, or "c0", "c1", ... when absent
    std::size_t rows = 0;
    std::vector<double> cells;  // row-major

    std::size_t width() const noexcept { return columns.size(); }
    double at(std::size_t row, std::size_t col) const { return cells[row * width() + col]; }
    std::size_t resolve(const ColumnRef& ref) const;
};

NumericTable read_numeric_csv(std::istream& in, const CsvOptions& options = {});
NumericTable read_numeric_csv(const std::string& path, const CsvOptions& options = {});

struct CsvSchema {
    std::vector<ColumnRef> feature_columns;  // empty: every column except the label
    std::optional<ColumnRef> label_column;
    CsvOptions options;
};

// Schema for files written by write_csv: f0..f{D-1} plus optional "label".
CsvSchema canonical_schema(bool labelled);

Dataset to_dataset(const NumericTable& table, const CsvSchema& schema);
Dataset load_csv(const std::string& path, const CsvSchema& schema);

// Header f0,...,f{D-1}[,label]; values with 17 significant digits.
void write_csv(std::ostream& out, const Dataset& ds);
void write_csv(const std::string& path, const Dataset& ds);

// Per-feature z-score over this dataset alone (population std); constant
// features become 0. Labels are carried over.
Dataset standardize(const Dataset& ds);

struct Split {
    Dataset static_set;
    Dataset stream;
    std::vector<std::string> warnings;
};

enum class PrepVariant { Shuttle, CreditFraud, Passthrough };

struct PrepRecipe {
    PrepVariant variant = PrepVariant::Passthrough;
    std::size_t static_count = 1000;
    std::size_t stream_count = 640;
    bool standardize = true;

    // Shuttle: features taken from the raw feature matrix, default the first 7.
    std::vector<std::size_t> shuttle_features = {0, 1, 2, 3, 4, 5, 6};
    bool shuttle_drop_class6 = false;  // false: class 6 counts as outlier

    // CreditFraud
    double target_fraud_fraction = 0.05;
    std::uint64_t subsample_seed = 0;

    void validate() const;
};

// Raw rows with their original integer class (Shuttle 1..7, Credit 0/1) and,
// for the credit data, the transaction time.
struct RawData {
    Dataset features;
    std::vector<long> classes;
    std::vector<double> time;
};

// Shuttle layout: the class is the last column, all others are features.
// Credit layout: "Time" and "Class" columns by name, everything else a feature.
RawData load_shuttle_raw(const std::string& path, const CsvOptions& options = {' ', HeaderMode::Auto});
RawData load_credit_raw(const std::string& path, const CsvOptions& options = {});

// Drops class 4, maps 1 -> normal and {2,3,5,7} (and 6 unless dropped) ->
// outlier, keeps the first static+stream rows in file order, then splits.
// Already-binary labels (0/1) are taken as pre-filtered.
Split prep_shuttle(const RawData& raw, const PrepRecipe& recipe);

// Keeps every fraud row, subsamples legitimate rows to the target fraud
// fraction, restores time order, takes the first static+stream rows and
// splits. Each part is standardised on its own.
Split prep_credit(const RawData& raw, const PrepRecipe& recipe);

// Leading rows of a labelled dataset split as-is (optionally standardised).
Split prep_passthrough(const Dataset& ds, const PrepRecipe& recipe);

PrepVariant parse_variant(const std::string& text);
std::string to_string(PrepVariant v);

}  // namespace lofstream
