#pragma once

#include <cstddef>
#include <cstdint>

namespace clb {

// CRC-32 (IEEE 802.3, reflected polynomial 0xEDB88320), the checksum used by
// the CLBENCH1 container format and record files.
uint32_t crc32(const void* data, std::size_t len, uint32_t seed = 0);

// FNV-1a, used for cheap model checksums in round logs and run metadata.
uint64_t fnv1a64(const void* data, std::size_t len, uint64_t seed = 0xcbf29ce484222325ULL);

} // namespace clb
