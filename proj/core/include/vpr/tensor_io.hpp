#pragma once

#include <iosfwd>
#include <string>

#include "vpr/feature_map.hpp"
#include "vpr/retrieval.hpp"

namespace vpr {

// Feature-map container:
//   "FMAP" | u16 version | u32 h | u32 w | u32 k | h*w*k f32, channel-last
// Descriptor container (ids live in a "<path>.ids" text sidecar):
//   "DESC" | u32 count | u32 dim | count*dim f32
// All integers and floats are little-endian.  Truncated or corrupt input
// raises FormatError with the offending byte offset.

inline constexpr std::uint16_t kFeatureMapVersion = 1;

void write_feature_map(std::ostream& out, const FeatureMap& map);
FeatureMap read_feature_map(std::istream& in);
void save_feature_map(const std::string& path, const FeatureMap& map);
FeatureMap load_feature_map(const std::string& path);

// Raw descriptor block as stored on disk.
struct DescriptorBlock {
    std::uint32_t count = 0;
    std::uint32_t dim = 0;
    std::vector<float> data;
};

void write_descriptors(std::ostream& out, const DescriptorBlock& block);
DescriptorBlock read_descriptors(std::istream& in);

// File-level helpers pairing the binary block with its id sidecar.
void save_descriptor_set(const std::string& path, const DescriptorSet& set);
DescriptorSet load_descriptor_set(const std::string& path);

} // namespace vpr
