#include "vpr/tensor_io.hpp"

#include <cstring>
#include <fstream>
#include <limits>

namespace vpr {

namespace {

constexpr std::uint64_t kMaxElements = 1u << 30; // refuse absurd headers

class ByteReader {
public:
    explicit ByteReader(std::istream& in) : in_(in) {}

    std::uint64_t offset() const { return offset_; }

    void read(void* dst, std::size_t n) {
        in_.read(static_cast<char*>(dst), static_cast<std::streamsize>(n));
        if (static_cast<std::size_t>(in_.gcount()) != n)
            throw FormatError("unexpected end of input",
                              offset_ + static_cast<std::uint64_t>(in_.gcount()));
        offset_ += n;
    }

    std::uint16_t read_u16() {
        unsigned char b[2];
        read(b, 2);
        return static_cast<std::uint16_t>(b[0] | (b[1] << 8));
    }

    std::uint32_t read_u32() {
        unsigned char b[4];
        read(b, 4);
        return static_cast<std::uint32_t>(b[0]) |
               (static_cast<std::uint32_t>(b[1]) << 8) |
               (static_cast<std::uint32_t>(b[2]) << 16) |
               (static_cast<std::uint32_t>(b[3]) << 24);
    }

    void read_f32(float* dst, std::size_t n) {
        for (std::size_t i = 0; i < n; ++i) {
            const std::uint32_t bits = read_u32();
            std::memcpy(&dst[i], &bits, 4);
        }
    }

    void expect_magic(const char (&magic)[5]) {
        char got[4];
        read(got, 4);
        if (std::memcmp(got, magic, 4) != 0)
            throw FormatError(std::string("bad magic, expected \"") + magic + "\"",
                              0);
    }

private:
    std::istream& in_;
    std::uint64_t offset_ = 0;
};

class ByteWriter {
public:
    explicit ByteWriter(std::ostream& out) : out_(out) {}

    void write(const void* src, std::size_t n) {
        out_.write(static_cast<const char*>(src), static_cast<std::streamsize>(n));
    }

    void write_u16(std::uint16_t v) {
        const unsigned char b[2] = {static_cast<unsigned char>(v & 0xff),
                                    static_cast<unsigned char>(v >> 8)};
        write(b, 2);
    }

    void write_u32(std::uint32_t v) {
        const unsigned char b[4] = {static_cast<unsigned char>(v & 0xff),
                                    static_cast<unsigned char>((v >> 8) & 0xff),
                                    static_cast<unsigned char>((v >> 16) & 0xff),
                                    static_cast<unsigned char>(v >> 24)};
        write(b, 4);
    }

    void write_f32(const float* src, std::size_t n) {
        for (std::size_t i = 0; i < n; ++i) {
            std::uint32_t bits;
            std::memcpy(&bits, &src[i], 4);
            write_u32(bits);
        }
    }

private:
    std::ostream& out_;
};

std::ifstream open_in(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("cannot open '" + path + "' for reading");
    return in;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw FormatError("cannot open '" + path + "' for writing");
    return out;
}

} // namespace

void write_feature_map(std::ostream& out, const FeatureMap& map) {
    if (map.h == 0 || map.w == 0 || map.k == 0)
        throw InvalidInput("write_feature_map: dimensions must be >= 1");
    if (map.data.size() != map.size())
        throw InvalidInput("write_feature_map: buffer does not match h*w*k");
    ByteWriter writer(out);
    writer.write("FMAP", 4);
    writer.write_u16(kFeatureMapVersion);
    writer.write_u32(map.h);
    writer.write_u32(map.w);
    writer.write_u32(map.k);
    writer.write_f32(map.data.data(), map.data.size());
    if (!out) throw FormatError("feature map write failed");
}

FeatureMap read_feature_map(std::istream& in) {
    ByteReader reader(in);
    reader.expect_magic("FMAP");
    const std::uint16_t version = reader.read_u16();
    if (version != kFeatureMapVersion)
        throw FormatError("unsupported feature map version " +
                              std::to_string(version),
                          4);
    FeatureMap map;
    map.h = reader.read_u32();
    map.w = reader.read_u32();
    map.k = reader.read_u32();
    if (map.h == 0 || map.w == 0 || map.k == 0)
        throw FormatError("feature map dimensions must be >= 1", 6);
    const std::uint64_t total =
        static_cast<std::uint64_t>(map.h) * map.w * map.k;
    if (total > kMaxElements)
        throw FormatError("feature map header claims " + std::to_string(total) +
                              " elements",
                          6);
    map.data.resize(total);
    reader.read_f32(map.data.data(), total);
    return map;
}

void save_feature_map(const std::string& path, const FeatureMap& map) {
    auto out = open_out(path);
    write_feature_map(out, map);
    if (!out.good()) throw FormatError("short write to '" + path + "'");
}

FeatureMap load_feature_map(const std::string& path) {
    auto in = open_in(path);
    try {
        return read_feature_map(in);
    } catch (const FormatError& e) {
        throw FormatError("'" + path + "': " + e.what());
    }
}

void write_descriptors(std::ostream& out, const DescriptorBlock& block) {
    if (block.dim == 0)
        throw InvalidInput("write_descriptors: dim must be >= 1");
    if (block.data.size() !=
        static_cast<std::size_t>(block.count) * block.dim)
        throw InvalidInput("write_descriptors: buffer does not match count*dim");
    ByteWriter writer(out);
    writer.write("DESC", 4);
    writer.write_u32(block.count);
    writer.write_u32(block.dim);
    writer.write_f32(block.data.data(), block.data.size());
    if (!out) throw FormatError("descriptor write failed");
}

DescriptorBlock read_descriptors(std::istream& in) {
    ByteReader reader(in);
    reader.expect_magic("DESC");
    DescriptorBlock block;
    block.count = reader.read_u32();
    block.dim = reader.read_u32();
    if (block.dim == 0) throw FormatError("descriptor dim must be >= 1", 8);
    const std::uint64_t total =
        static_cast<std::uint64_t>(block.count) * block.dim;
    if (total > kMaxElements)
        throw FormatError("descriptor header claims " + std::to_string(total) +
                              " elements",
                          4);
    block.data.resize(total);
    reader.read_f32(block.data.data(), total);
    return block;
}

void save_descriptor_set(const std::string& path, const DescriptorSet& set) {
    set.validate();
    if (set.count() > std::numeric_limits<std::uint32_t>::max())
        throw InvalidInput("save_descriptor_set: too many descriptors");
    DescriptorBlock block;
    block.count = static_cast<std::uint32_t>(set.count());
    block.dim = static_cast<std::uint32_t>(set.dim);
    block.data.resize(set.data.size());
    for (std::size_t i = 0; i < set.data.size(); ++i)
        block.data[i] = static_cast<float>(set.data[i]);
    auto out = open_out(path);
    write_descriptors(out, block);
    if (!out.good()) throw FormatError("short write to '" + path + "'");

    auto ids = open_out(path + ".ids");
    for (const auto& id : set.ids) ids << id << '\n';
    if (!ids.good()) throw FormatError("short write to '" + path + ".ids'");
}

DescriptorSet load_descriptor_set(const std::string& path) {
    auto in = open_in(path);
    DescriptorBlock block;
    try {
        block = read_descriptors(in);
    } catch (const FormatError& e) {
        throw FormatError("'" + path + "': " + e.what());
    }

    DescriptorSet set;
    set.dim = block.dim;
    set.data.assign(block.data.begin(), block.data.end());

    auto ids = open_in(path + ".ids");
    std::string line;
    while (std::getline(ids, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        set.ids.push_back(line);
    }
    if (set.ids.size() != block.count)
        throw FormatError("'" + path + ".ids' lists " +
                          std::to_string(set.ids.size()) + " ids for " +
                          std::to_string(block.count) + " descriptors");
    set.validate();
    return set;
}

} // namespace vpr
