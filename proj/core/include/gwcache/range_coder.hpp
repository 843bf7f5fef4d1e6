#pragma once

#include <cstdint>
#include <vector>

#include "gwcache/bitstring.hpp"

namespace gwcache {

// Static binary arithmetic coder (range coder, 64-bit low / 32-bit range, byte
// renormalization). Encodes an iid Bern(p_one) bit stream at close to its
// entropy; overhead is a few bytes of flush plus the probability quantization
// to 1/65536 steps. p_one is clamped to [2^-16, 1 - 2^-16] internally; streams
// with p_one exactly 0 or 1 encode to zero bytes.
std::vector<std::uint8_t> rc_encode(const BitString& bits, double p_one);

// Inverse of rc_encode; n_bits must be the original length and p_one must match
// bit for bit the value used at encode time.
BitString rc_decode(const std::vector<std::uint8_t>& bytes, double p_one, size_t n_bits);

}  // namespace gwcache
