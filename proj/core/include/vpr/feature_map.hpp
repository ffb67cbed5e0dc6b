#pragma once

#include <cstdint>
#include <vector>

#include "vpr/error.hpp"

namespace vpr {

// Global descriptor: fixed-length real vector compared by Euclidean distance.
using Descriptor = std::vector<double>;

// Dense activation tensor of one stream (visual or structural) of one
// sample. Layout is channel-last row-major: data[(y * w + x) * k + c].
// Entries are stored single-precision, matching the on-disk format; all
// arithmetic downstream runs in double.
struct FeatureMap {
    std::uint32_t h = 0;
    std::uint32_t w = 0;
    std::uint32_t k = 0;
    std::vector<float> data;

    FeatureMap() = default;
    FeatureMap(std::uint32_t h_, std::uint32_t w_, std::uint32_t k_)
        : h(h_), w(w_), k(k_), data(static_cast<std::size_t>(h_) * w_ * k_, 0.0f) {}

    std::size_t locations() const { return static_cast<std::size_t>(h) * w; }
    std::size_t size() const { return locations() * k; }

    float& at(std::uint32_t y, std::uint32_t x, std::uint32_t c) {
        return data[(static_cast<std::size_t>(y) * w + x) * k + c];
    }
    float at(std::uint32_t y, std::uint32_t x, std::uint32_t c) const {
        return data[(static_cast<std::size_t>(y) * w + x) * k + c];
    }

    // Throws unless dimensions are consistent and every entry is finite.
    void validate() const;
};

} // namespace vpr
