#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace vpr {

// Caller handed us something outside an operation's domain.
class InvalidInput : public std::invalid_argument {
public:
    explicit InvalidInput(const std::string& what) : std::invalid_argument(what) {}
};

// A binary or text artifact on disk is malformed. Carries the byte offset
// (or line number for text inputs) where decoding stopped.
class FormatError : public std::runtime_error {
public:
    FormatError(const std::string& what, std::uint64_t offset)
        : std::runtime_error(what + " (at byte " + std::to_string(offset) + ")"),
          offset_(offset) {}
    explicit FormatError(const std::string& what) : std::runtime_error(what), offset_(0) {}

    std::uint64_t offset() const { return offset_; }

private:
    std::uint64_t offset_;
};

// Configuration rejected: unknown key or out-of-range value.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace vpr
