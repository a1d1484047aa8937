#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

namespace corpusranker {

// CRC-32 (IEEE 802.3 polynomial, reflected). Used by the binary container to
// detect corrupted sections.
std::uint32_t crc32(const void* data, std::size_t size, std::uint32_t seed = 0);

// FNV-1a 64-bit. Used for provenance hashes of configs and data files.
std::uint64_t fnv1a64(std::string_view data);

// fnv1a64 rendered as 16 lowercase hex digits.
std::string fnv1a64_hex(std::string_view data);

}  // namespace corpusranker
