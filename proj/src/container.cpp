#include "corpusranker/container.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <sstream>

#include "corpusranker/errors.hpp"
#include "corpusranker/hash.hpp"

namespace corpusranker {

void ByteWriter::u32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) {
        buf_.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
    }
}

void ByteWriter::u64(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) {
        buf_.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
    }
}

void ByteWriter::f64(double v) {
    u64(std::bit_cast<std::uint64_t>(v));
}

void ByteWriter::str(std::string_view s) {
    if (s.size() > 0xFFFFFFFFull) {
        throw FormatError("string too long for container encoding");
    }
    u32(static_cast<std::uint32_t>(s.size()));
    buf_.append(s.data(), s.size());
}

void ByteWriter::string_map(const std::map<std::string, std::string>& m) {
    u32(static_cast<std::uint32_t>(m.size()));
    for (const auto& [k, v] : m) {
        str(k);
        str(v);
    }
}

void ByteReader::need(std::size_t n) const {
    if (pos_ + n > data_.size()) {
        throw FormatError("container section truncated");
    }
}

std::uint8_t ByteReader::u8() {
    need(1);
    return static_cast<std::uint8_t>(data_[pos_++]);
}

std::uint32_t ByteReader::u32() {
    need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) {
        v |= static_cast<std::uint32_t>(static_cast<unsigned char>(data_[pos_ + i])) << (8 * i);
    }
    pos_ += 4;
    return v;
}

std::uint64_t ByteReader::u64() {
    need(8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) {
        v |= static_cast<std::uint64_t>(static_cast<unsigned char>(data_[pos_ + i])) << (8 * i);
    }
    pos_ += 8;
    return v;
}

double ByteReader::f64() {
    return std::bit_cast<double>(u64());
}

std::string ByteReader::str() {
    std::uint32_t len = u32();
    need(len);
    std::string out(data_.substr(pos_, len));
    pos_ += len;
    return out;
}

std::map<std::string, std::string> ByteReader::string_map() {
    std::map<std::string, std::string> m;
    std::uint32_t count = u32();
    for (std::uint32_t i = 0; i < count; ++i) {
        std::string k = str();
        m[k] = str();
    }
    return m;
}

void ContainerWriter::add_section(std::string_view tag, std::string payload) {
    if (tag.size() != 4) {
        throw FormatError("section tag must be 4 characters: " + std::string(tag));
    }
    for (const auto& [existing, _] : sections_) {
        if (existing == tag) {
            throw FormatError("duplicate section tag: " + std::string(tag));
        }
    }
    sections_.emplace_back(std::string(tag), std::move(payload));
}

std::string ContainerWriter::serialize() const {
    // Header: magic(4) + version(4) + count(4); table entry: tag(4) + offset(8)
    // + length(8) + crc(4).
    const std::size_t header_size = 12 + sections_.size() * 24;

    ByteWriter header;
    for (char c : kContainerMagic) header.u8(static_cast<std::uint8_t>(c));
    header.u32(kContainerVersion);
    header.u32(static_cast<std::uint32_t>(sections_.size()));

    std::uint64_t offset = header_size;
    for (const auto& [tag, payload] : sections_) {
        for (char c : tag) header.u8(static_cast<std::uint8_t>(c));
        header.u64(offset);
        header.u64(payload.size());
        header.u32(crc32(payload.data(), payload.size()));
        offset += payload.size();
    }

    std::string out = header.take();
    for (const auto& [tag, payload] : sections_) {
        out += payload;
    }
    return out;
}

void ContainerWriter::write_file(const std::string& path) const {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot write file: " + path);
    }
    std::string bytes = serialize();
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) {
        throw IoError("write failed: " + path);
    }
}

ContainerReader::ContainerReader(std::string bytes) : bytes_(std::move(bytes)) {
    if (bytes_.size() < 12) {
        throw FormatError("container truncated: file shorter than header");
    }
    if (std::memcmp(bytes_.data(), kContainerMagic, 4) != 0) {
        throw FormatError("bad magic bytes: not a container file");
    }
    ByteReader reader(std::string_view(bytes_).substr(4));
    std::uint32_t version = reader.u32();
    if (version != kContainerVersion) {
        throw FormatError("unsupported container version " + std::to_string(version) +
                          " (expected " + std::to_string(kContainerVersion) + ")");
    }
    std::uint32_t count = reader.u32();
    for (std::uint32_t i = 0; i < count; ++i) {
        std::string tag;
        for (int c = 0; c < 4; ++c) tag.push_back(static_cast<char>(reader.u8()));
        Entry entry{};
        entry.offset = reader.u64();
        entry.length = reader.u64();
        entry.crc = reader.u32();
        if (entry.offset + entry.length > bytes_.size() || entry.offset + entry.length < entry.offset) {
            throw FormatError("container truncated: section '" + tag + "' exceeds file size");
        }
        entries_.emplace_back(std::move(tag), entry);
    }
}

ContainerReader ContainerReader::from_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open file: " + path);
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return ContainerReader(buffer.str());
}

bool ContainerReader::has(std::string_view tag) const {
    for (const auto& [t, _] : entries_) {
        if (t == tag) return true;
    }
    return false;
}

std::string_view ContainerReader::section(std::string_view tag) const {
    for (const auto& [t, entry] : entries_) {
        if (t != tag) continue;
        std::string_view payload =
            std::string_view(bytes_).substr(entry.offset, entry.length);
        if (crc32(payload.data(), payload.size()) != entry.crc) {
            throw FormatError("container corrupted: CRC mismatch in section '" + t + "'");
        }
        return payload;
    }
    throw FormatError("container missing section '" + std::string(tag) + "'");
}

std::vector<std::string> ContainerReader::tags() const {
    std::vector<std::string> out;
    out.reserve(entries_.size());
    for (const auto& [t, _] : entries_) out.push_back(t);
    return out;
}

}  // namespace corpusranker
