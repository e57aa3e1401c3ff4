#pragma once

#include "lofstream/dataset.hpp"

#include <cstddef>
#include <cstdint>

namespace lofstream {

// Gaussian core at the origin plus scattered outliers drawn from
// N(shift * u, scale^2 I), u a random unit direction. With shared_direction
// one u is drawn per dataset, so outliers form a single diffuse cluster;
// otherwise every outlier draws its own u.
struct SynthRecipe {
    std::size_t dim = 2;
    std::size_t n_initial = 1000;
    std::size_t n_stream = 1280;
    double outlier_fraction = 0.05;
    double outlier_scale = 3.0;
    double outlier_shift = 5.0;
    bool shared_direction = true;
    std::uint64_t seed = 42;

    void validate() const;

    // floor(fraction * total) outliers overall; the initial set carries
    // round(fraction / 2 * n_initial) of them and the stream the rest.
    std::size_t total_outliers() const;
    std::size_t initial_outliers() const;
};

struct SynthData {
    Dataset initial;
    Dataset stream;
};

SynthData generate(const SynthRecipe& recipe);

}  // namespace lofstream
