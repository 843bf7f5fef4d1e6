#include "gwcache/bitstring.hpp"

#include <stdexcept>

namespace gwcache {

BitString BitString::slice(size_t begin, size_t end) const {
    if (begin > end || end > bits_.size()) throw std::out_of_range("BitString::slice");
    return BitString(std::vector<std::uint8_t>(bits_.begin() + begin, bits_.begin() + end));
}

void BitString::append(const BitString& other) {
    bits_.insert(bits_.end(), other.bits_.begin(), other.bits_.end());
}

BitString operator^(const BitString& a, const BitString& b) {
    if (a.size() != b.size()) throw std::invalid_argument("BitString xor: length mismatch");
    BitString r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r.bits_[i] = a.bits_[i] ^ b.bits_[i];
    return r;
}

std::vector<std::uint8_t> BitString::packed() const {
    std::vector<std::uint8_t> out((bits_.size() + 7) / 8, 0);
    for (size_t i = 0; i < bits_.size(); ++i)
        if (bits_[i]) out[i >> 3] |= static_cast<std::uint8_t>(0x80u >> (i & 7));
    return out;
}

BitString BitString::unpack(const std::vector<std::uint8_t>& bytes, size_t n_bits) {
    if (n_bits > bytes.size() * 8) throw std::out_of_range("BitString::unpack");
    BitString r(n_bits);
    for (size_t i = 0; i < n_bits; ++i)
        r.bits_[i] = (bytes[i >> 3] >> (7 - (i & 7))) & 1;
    return r;
}

}  // namespace gwcache
