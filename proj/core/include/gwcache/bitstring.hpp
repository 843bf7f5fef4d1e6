#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace gwcache {

// Sequence of bits with cheap slicing and xor, one byte per bit internally.
// Sizes in this codebase stay in the low millions, so clarity wins over packing.
class BitString {
  public:
    BitString() = default;
    explicit BitString(size_t n) : bits_(n, 0) {}
    explicit BitString(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {}

    size_t size() const { return bits_.size(); }
    bool empty() const { return bits_.empty(); }

    std::uint8_t operator[](size_t i) const { return bits_[i]; }
    void set(size_t i, std::uint8_t v) { bits_[i] = v & 1; }
    void push_back(std::uint8_t v) { bits_.push_back(v & 1); }

    BitString slice(size_t begin, size_t end) const;  // [begin, end)
    void append(const BitString& other);

    const std::vector<std::uint8_t>& bits() const { return bits_; }

    bool operator==(const BitString& other) const { return bits_ == other.bits_; }

    // Bitwise xor of equal-length strings.
    friend BitString operator^(const BitString& a, const BitString& b);

    // 8 bits per byte, MSB first, zero padded; for transcripts and hashing.
    std::vector<std::uint8_t> packed() const;
    static BitString unpack(const std::vector<std::uint8_t>& bytes, size_t n_bits);

  private:
    std::vector<std::uint8_t> bits_;  // each element 0 or 1
};

}  // namespace gwcache
