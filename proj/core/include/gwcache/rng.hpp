#pragma once

#include <cstdint>
#include <random>

namespace gwcache {

// splitmix64 step; used to key independent engines from (seed, stream) pairs.
std::uint64_t splitmix64(std::uint64_t x);

// Deterministic engine for a named stream: same (seed, stream_id) always yields
// the same sequence, different stream ids are decorrelated.
std::mt19937_64 stream_engine(std::uint64_t seed, std::uint64_t stream_id);

// Uniformly distributed double in [0, 1), 53 random bits. Used instead of the
// standard distributions, whose output is implementation-defined; this keeps
// seeded runs identical across toolchains.
inline double uniform01(std::mt19937_64& eng) {
    return static_cast<double>(eng() >> 11) * 0x1p-53;
}

}  // namespace gwcache
