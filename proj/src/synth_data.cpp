#include "lofstream/synth_data.hpp"

#include "lofstream/error.hpp"
#include "lofstream/rng.hpp"

#include <cmath>
#include <vector>

namespace lofstream {

void SynthRecipe::validate() const {
    if (dim == 0) throw InvalidArgument("dim must be at least 1");
    if (n_initial == 0 || n_stream == 0) throw InvalidArgument("n_initial and n_stream must be positive");
    if (!(outlier_fraction > 0.0 && outlier_fraction < 1.0))
        throw InvalidArgument("outlier fraction must lie strictly between 0 and 1");
    if (!(outlier_scale > 1.0) || !std::isfinite(outlier_scale)) throw InvalidArgument("outlier scale must exceed 1");
    if (!(outlier_shift >= 0.0) || !std::isfinite(outlier_shift))
        throw InvalidArgument("outlier shift must be finite and non-negative");
    if (total_outliers() - initial_outliers() > n_stream)
        throw InvalidArgument("stream too short for the requested outlier count");
}

std::size_t SynthRecipe::total_outliers() const {
    const double exact = outlier_fraction * static_cast<double>(n_initial + n_stream);
    return static_cast<std::size_t>(std::floor(exact + 1e-9));
}

std::size_t SynthRecipe::initial_outliers() const {
    const auto half = static_cast<std::size_t>(std::llround(outlier_fraction / 2.0 * static_cast<double>(n_initial)));
    return std::min(half, total_outliers());
}

namespace {

void unit_direction(std::vector<double>& dir, SplitMix64& rng) {
    double norm = 0.0;
    while (norm == 0.0) {
        for (double& v : dir) {
            v = rng.normal();
            norm += v * v;
        }
    }
    norm = std::sqrt(norm);
    for (double& v : dir) v /= norm;
}

Dataset draw(const SynthRecipe& r, std::size_t n, std::size_t outliers, const std::vector<double>& shared,
             SplitMix64& rng) {
    std::vector<Label> labels(n, 0);
    std::fill(labels.begin(), labels.begin() + static_cast<std::ptrdiff_t>(outliers), Label{1});
    shuffle(labels.begin(), labels.end(), rng);

    std::vector<double> coords(n * r.dim);
    std::vector<double> dir(r.dim);
    for (std::size_t i = 0; i < n; ++i) {
        double* x = coords.data() + i * r.dim;
        if (labels[i] == 0) {
            for (std::size_t d = 0; d < r.dim; ++d) x[d] = rng.normal();
            continue;
        }
        if (r.shared_direction)
            dir = shared;
        else
            unit_direction(dir, rng);
        for (std::size_t d = 0; d < r.dim; ++d) x[d] = r.outlier_shift * dir[d] + r.outlier_scale * rng.normal();
    }
    return Dataset(r.dim, std::move(coords), std::move(labels));
}

}  // namespace

SynthData generate(const SynthRecipe& recipe) {
    recipe.validate();
    SplitMix64 rng(recipe.seed);
    std::vector<double> shared(recipe.dim);
    if (recipe.shared_direction) unit_direction(shared, rng);
    const std::size_t in_initial = recipe.initial_outliers();
    SynthData out;
    out.initial = draw(recipe, recipe.n_initial, in_initial, shared, rng);
    out.stream = draw(recipe, recipe.n_stream, recipe.total_outliers() - in_initial, shared, rng);
    return out;
}

}  // namespace lofstream
