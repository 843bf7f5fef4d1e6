#include <doctest.h>

#include <stdexcept>
#include <vector>

#include "gwcache/bitstring.hpp"
#include "gwcache/info.hpp"
#include "gwcache/range_coder.hpp"
#include "gwcache/rng.hpp"
#include "gwcache/types.hpp"

using namespace gwcache;

namespace {

BitString random_bits(size_t n, double p_one, std::uint64_t stream) {
    auto eng = stream_engine(0xb17c0de, stream);
    BitString b(n);
    for (size_t i = 0; i < n; ++i) b.set(i, uniform01(eng) < p_one ? 1 : 0);
    return b;
}

}  // namespace

TEST_CASE("bitstring stores single bits and masks writes") {
    BitString empty;
    CHECK(empty.size() == 0);
    CHECK(empty.empty());

    BitString b(5);
    CHECK(b.size() == 5);
    for (size_t i = 0; i < 5; ++i) CHECK(b[i] == 0);

    b.set(1, 1);
    b.set(3, 2);  // only the low bit is kept
    CHECK(b[1] == 1);
    CHECK(b[3] == 0);

    b.push_back(1);
    b.push_back(3);
    CHECK(b.size() == 7);
    CHECK(b[5] == 1);
    CHECK(b[6] == 1);

    BitString c(std::vector<std::uint8_t>{0, 1, 0, 0, 0, 1, 1});
    CHECK(b == c);
    CHECK(c.bits() == std::vector<std::uint8_t>{0, 1, 0, 0, 0, 1, 1});
}

TEST_CASE("slice is half open and bounds checked") {
    BitString b(10);
    for (size_t i = 0; i < 10; ++i) b.set(i, i % 2);

    BitString mid = b.slice(2, 6);
    CHECK(mid.bits() == std::vector<std::uint8_t>{0, 1, 0, 1});
    CHECK(b.slice(0, 10) == b);
    CHECK(b.slice(4, 4).empty());
    CHECK(b.slice(10, 10).empty());

    CHECK_THROWS_AS(b.slice(5, 4), std::out_of_range);
    CHECK_THROWS_AS(b.slice(0, 11), std::out_of_range);
}

TEST_CASE("append concatenates in order") {
    BitString a(std::vector<std::uint8_t>{1, 1, 0});
    BitString b(std::vector<std::uint8_t>{0, 1});
    a.append(b);
    CHECK(a.bits() == std::vector<std::uint8_t>{1, 1, 0, 0, 1});
    a.append(BitString());
    CHECK(a.size() == 5);
}

TEST_CASE("xor is an involution and rejects length mismatch") {
    BitString a = random_bits(64, 0.5, 1);
    BitString b = random_bits(64, 0.5, 2);
    BitString zero(64);

    CHECK((a ^ a) == zero);
    CHECK((a ^ zero) == a);
    CHECK(((a ^ b) ^ b) == a);

    CHECK_THROWS_AS(a ^ BitString(63), std::invalid_argument);
}

TEST_CASE("packed layout is msb first with zero padding") {
    BitString b(std::vector<std::uint8_t>{1, 0, 1, 1, 0, 0, 1, 0});
    CHECK(b.packed() == std::vector<std::uint8_t>{0xB2});

    BitString ten(std::vector<std::uint8_t>{1, 1, 1, 1, 1, 1, 1, 1, 1, 1});
    CHECK(ten.packed() == std::vector<std::uint8_t>{0xFF, 0xC0});

    CHECK(BitString().packed().empty());
    CHECK(BitString(1).packed() == std::vector<std::uint8_t>{0x00});

    // pad bits are ignored on the way back in
    CHECK(BitString::unpack({0xFF}, 3).bits() == std::vector<std::uint8_t>{1, 1, 1});
    CHECK_THROWS_AS(BitString::unpack({0xFF}, 9), std::out_of_range);

    for (size_t n : {0u, 1u, 7u, 8u, 9u, 17u, 1000u}) {
        BitString x = random_bits(n, 0.5, 100 + n);
        CHECK(BitString::unpack(x.packed(), n) == x);
    }
}

TEST_CASE("range coder round trips across biases and lengths") {
    std::uint64_t stream = 0;
    for (double p : {0.5, 0.1, 0.9, 0.01}) {
        for (size_t n : {0u, 1u, 7u, 8u, 9u, 1000u, 10000u}) {
            BitString bits = random_bits(n, p, ++stream);
            auto bytes = rc_encode(bits, p);
            CHECK(rc_decode(bytes, p, n) == bits);
            if (n == 0) CHECK(bytes.empty());
        }
    }
}

TEST_CASE("round trip survives streams the model finds maximally surprising") {
    BitString ones(4096);
    for (size_t i = 0; i < ones.size(); ++i) ones.set(i, 1);
    BitString zeros(4096);

    CHECK(rc_decode(rc_encode(ones, 0.01), 0.01, 4096) == ones);
    CHECK(rc_decode(rc_encode(zeros, 0.99), 0.99, 4096) == zeros);
    // surprising streams cost more bits than they contain
    CHECK(rc_encode(ones, 0.01).size() > 4096 / 8);
}

TEST_CASE("encoded size tracks the source entropy") {
    const size_t n = 50000;
    std::uint64_t stream = 40;
    for (double p : {0.5, 0.1, 0.9, 0.01}) {
        BitString bits = random_bits(n, p, ++stream);
        double rate = 8.0 * static_cast<double>(rc_encode(bits, p).size()) / n;
        CHECK(rate >= binary_entropy(p) - 0.03);
        CHECK(rate <= binary_entropy(p) + 0.03);
    }
}

TEST_CASE("encoding is a pure function of bits and bias") {
    BitString bits = random_bits(2048, 0.3, 77);
    auto a = rc_encode(bits, 0.3);
    auto b = rc_encode(bits, 0.3);
    CHECK(a == b);

    BitString again = random_bits(2048, 0.3, 77);
    CHECK(rc_encode(again, 0.3) == a);
}

TEST_CASE("deterministic biases encode to nothing and reject contradictions") {
    BitString zeros(100);
    BitString ones(100);
    for (size_t i = 0; i < 100; ++i) ones.set(i, 1);

    CHECK(rc_encode(zeros, 0.0).empty());
    CHECK(rc_encode(ones, 1.0).empty());
    CHECK(rc_decode({}, 0.0, 100) == zeros);
    CHECK(rc_decode({}, 1.0, 100) == ones);

    CHECK_THROWS_AS(rc_encode(ones, 0.0), ValidationError);
    CHECK_THROWS_AS(rc_encode(zeros, 1.0), ValidationError);
}

TEST_CASE("out of range biases are rejected") {
    BitString bits(8);
    CHECK_THROWS_AS(rc_encode(bits, -0.1), ValidationError);
    CHECK_THROWS_AS(rc_encode(bits, 1.5), ValidationError);
    CHECK_THROWS_AS(rc_encode(bits, std::nan("")), ValidationError);
    CHECK_THROWS_AS(rc_decode({}, -0.1, 8), ValidationError);
    CHECK_THROWS_AS(rc_decode({}, std::nan(""), 8), ValidationError);
}
