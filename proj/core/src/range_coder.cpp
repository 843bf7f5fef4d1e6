#include "gwcache/range_coder.hpp"

#include <cmath>

#include "gwcache/types.hpp"

namespace gwcache {

namespace {

// Probability of a zero bit in 1/65536 units, kept away from the degenerate
// ends so both symbols stay codable.
std::uint32_t scale_p0(double p_one) {
    double s = std::nearbyint((1.0 - p_one) * 65536.0);
    if (s < 1) s = 1;
    if (s > 65535) s = 65535;
    return static_cast<std::uint32_t>(s);
}

constexpr std::uint32_t kTop = 1u << 24;

// Carry-propagating byte-at-a-time range encoder (the arrangement used by
// LZMA): low is 33+ bits, the byte below the output point is buffered in
// cache, and a run of 0xFF bytes is held in cache_size until the carry is
// resolved.
struct Encoder {
    std::uint64_t low = 0;
    std::uint32_t range = 0xFFFFFFFFu;
    std::uint8_t cache = 0;
    std::uint64_t cache_size = 1;
    std::vector<std::uint8_t> out;

    void shift_low() {
        if (static_cast<std::uint32_t>(low) < 0xFF000000u || (low >> 32) != 0) {
            std::uint8_t carry = static_cast<std::uint8_t>(low >> 32);
            std::uint8_t b = cache;
            do {
                out.push_back(static_cast<std::uint8_t>(b + carry));
                b = 0xFF;
            } while (--cache_size != 0);
            cache = static_cast<std::uint8_t>(low >> 24);
        }
        ++cache_size;
        low = static_cast<std::uint32_t>(low) << 8;
    }

    void encode(int bit, std::uint32_t p0) {
        std::uint32_t bound = (range >> 16) * p0;
        if (bit == 0) {
            range = bound;
        } else {
            low += bound;
            range -= bound;
        }
        while (range < kTop) {
            shift_low();
            range <<= 8;
        }
    }

    void flush() {
        for (int i = 0; i < 5; ++i) shift_low();
    }
};

struct Decoder {
    const std::vector<std::uint8_t>& in;
    size_t pos = 0;
    std::uint32_t range = 0xFFFFFFFFu;
    std::uint32_t code = 0;

    explicit Decoder(const std::vector<std::uint8_t>& bytes) : in(bytes) {
        next();  // the encoder's initial cache byte, always zero
        for (int i = 0; i < 4; ++i) code = (code << 8) | next();
    }

    std::uint8_t next() { return pos < in.size() ? in[pos++] : 0; }

    int decode(std::uint32_t p0) {
        std::uint32_t bound = (range >> 16) * p0;
        int bit;
        if (code < bound) {
            bit = 0;
            range = bound;
        } else {
            bit = 1;
            code -= bound;
            range -= bound;
        }
        while (range < kTop) {
            code = (code << 8) | next();
            range <<= 8;
        }
        return bit;
    }
};

}  // namespace

std::vector<std::uint8_t> rc_encode(const BitString& bits, double p_one) {
    if (!(p_one >= 0.0 && p_one <= 1.0)) throw ValidationError("rc_encode: p_one outside [0, 1]");
    if (bits.size() == 0) return {};
    if (p_one == 0.0 || p_one == 1.0) {
        int expect = p_one == 1.0 ? 1 : 0;
        for (size_t i = 0; i < bits.size(); ++i)
            if (bits[i] != expect)
                throw ValidationError("rc_encode: bit contradicts a deterministic bias");
        return {};
    }
    std::uint32_t p0 = scale_p0(p_one);
    Encoder enc;
    for (size_t i = 0; i < bits.size(); ++i) enc.encode(bits[i], p0);
    enc.flush();
    return std::move(enc.out);
}

BitString rc_decode(const std::vector<std::uint8_t>& bytes, double p_one, size_t n_bits) {
    if (!(p_one >= 0.0 && p_one <= 1.0)) throw ValidationError("rc_decode: p_one outside [0, 1]");
    BitString bits(n_bits);
    if (n_bits == 0) return bits;
    if (p_one == 0.0 || p_one == 1.0) {
        int v = p_one == 1.0 ? 1 : 0;
        for (size_t i = 0; i < n_bits; ++i) bits.set(i, v);
        return bits;
    }
    std::uint32_t p0 = scale_p0(p_one);
    Decoder dec(bytes);
    for (size_t i = 0; i < n_bits; ++i) bits.set(i, dec.decode(p0));
    return bits;
}

}  // namespace gwcache
