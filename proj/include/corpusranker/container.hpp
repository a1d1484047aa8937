#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace corpusranker {

// Little-endian payload encoder for container sections.
class ByteWriter {
public:
    void u8(std::uint8_t v) { buf_.push_back(static_cast<char>(v)); }
    void u32(std::uint32_t v);
    void u64(std::uint64_t v);
    void i32(std::int32_t v) { u32(static_cast<std::uint32_t>(v)); }
    void f64(double v);
    void str(std::string_view s);
    void string_map(const std::map<std::string, std::string>& m);

    const std::string& bytes() const { return buf_; }
    std::string take() { return std::move(buf_); }

private:
    std::string buf_;
};

// Bounds-checked decoder. Reading past the end raises FormatError, which is
// how truncation inside a section surfaces.
class ByteReader {
public:
    explicit ByteReader(std::string_view data) : data_(data) {}

    std::uint8_t u8();
    std::uint32_t u32();
    std::uint64_t u64();
    std::int32_t i32() { return static_cast<std::int32_t>(u32()); }
    double f64();
    std::string str();
    std::map<std::string, std::string> string_map();

    bool exhausted() const { return pos_ == data_.size(); }

private:
    void need(std::size_t n) const;

    std::string_view data_;
    std::size_t pos_ = 0;
};

// Container file: magic "CRKR", u32 version, u32 section count, section table
// (4-byte tag, u64 offset, u64 length, u32 crc32 of the payload), then the
// payloads. Everything little-endian.
inline constexpr char kContainerMagic[4] = {'C', 'R', 'K', 'R'};
inline constexpr std::uint32_t kContainerVersion = 1;

class ContainerWriter {
public:
    // Tags are exactly 4 ASCII characters and must be unique per file.
    void add_section(std::string_view tag, std::string payload);
    void write_file(const std::string& path) const;
    std::string serialize() const;

private:
    std::vector<std::pair<std::string, std::string>> sections_;
};

class ContainerReader {
public:
    explicit ContainerReader(std::string bytes);
    static ContainerReader from_file(const std::string& path);

    bool has(std::string_view tag) const;
    // Validates the section CRC; mismatch raises FormatError.
    std::string_view section(std::string_view tag) const;
    std::vector<std::string> tags() const;

private:
    struct Entry {
        std::uint64_t offset;
        std::uint64_t length;
        std::uint32_t crc;
    };

    std::string bytes_;
    std::vector<std::pair<std::string, Entry>> entries_;
};

}  // namespace corpusranker
