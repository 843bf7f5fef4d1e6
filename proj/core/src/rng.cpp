#include "gwcache/rng.hpp"

namespace gwcache {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::mt19937_64 stream_engine(std::uint64_t seed, std::uint64_t stream_id) {
    std::uint64_t s = splitmix64(seed) ^ splitmix64(stream_id + 0x517cc1b727220a95ULL);
    return std::mt19937_64(splitmix64(s));
}

}  // namespace gwcache
