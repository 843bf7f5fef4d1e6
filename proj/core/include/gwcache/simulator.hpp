#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "gwcache/bitstring.hpp"
#include "gwcache/pmf.hpp"
#include "gwcache/types.hpp"

namespace gwcache {

// Source families the protocol can describe losslessly at a fixed operating
// point: a pair with an embedded common bit V, and the binary symmetric pair in
// its noise representation X_i = U xor Z_i. Both expose the latent streams the
// description coder needs; generic pmfs are out of scope for the simulator.
enum class SourceFamily { SharedComponent, DsbsWyner };

struct SourceSpec {
    SourceFamily family = SourceFamily::SharedComponent;
    double pv = 0.5, p1p = 0.5, p2p = 0.5;  // shared-component biases
    double p0 = 0.2;                        // pair disagreement probability

    JointPmf2 pmf() const;
};

struct LibraryRealization {
    SourceSpec spec;
    int n = 0;
    std::vector<std::uint8_t> x1, x2;  // file symbols
    BitString common;                  // V or U stream
    BitString priv1, priv2;            // X1'/X2' or Z1/Z2 streams
};

// RNG streams: 0 = common, 1 = first private, 2 = second private, each keyed
// through stream_engine(seed, id).
LibraryRealization gen_shared_component(int n, double pv, double p1p, double p2p,
                                        std::uint64_t seed);
LibraryRealization gen_dsbs_wyner(int n, double p0, std::uint64_t seed);

// Build a realization from explicit latent streams (exhaustive enumeration).
LibraryRealization lib_from_latent(const SourceSpec& spec, const BitString& common,
                                   const BitString& priv1, const BitString& priv2);

// One latent stream's code: raw-packed when the stream is Bern(1/2), empty when
// it is constant, arithmetic-coded otherwise.
struct StreamCode {
    std::size_t n_bits = 0;
    double bias = 0.5;
    bool raw = false;
    BitString code;
};

struct Descriptions {
    SourceSpec spec;
    int n = 0;
    StreamCode w0, w1, w2;
    std::size_t private_len = 0;  // common length L the private codes are padded to (even)

    Bits r0() const { return static_cast<Bits>(w0.code.size()) / n; }
    Bits rho() const { return static_cast<Bits>(private_len) / n; }
    Bits capacity() const { return r0() + 2 * rho(); }
};

Descriptions gw_encode(const LibraryRealization& lib);

// Reconstruct file k (1 or 2) from the full common codeword plus that file's
// private codeword (padding beyond the true code length is ignored).
std::vector<std::uint8_t> gw_decode_file(const Descriptions& d, int k,
                                         const BitString& w0_code, const BitString& wk_code);

// Private-layer placement: the position range [0, L) of both private codewords
// is partitioned into segments, each run at one of the four corner schemes;
// intermediate budgets split the range between the two adjacent corners.
enum class TcCorner {
    None,        // nothing cached on the segment
    XorHalves,   // receiver k caches c1 xor c2 on the k-th half of the segment
    OwnHalves,   // receiver k caches both files on the k-th half
    Both,        // receiver k caches both files on the whole segment
};

struct TcSegment {
    std::size_t off = 0, len = 0;
    TcCorner corner = TcCorner::None;
};

struct TcPlan {
    std::size_t L = 0;
    std::size_t budget = 0;
    std::size_t stored = 0;  // bits actually stored per receiver; budget, or budget-1
                             // when an odd budget meets the halving constraint
    std::vector<TcSegment> segs;
};

// budget in bits per receiver, budget <= 2L; L must be even.
TcPlan tc_place(std::size_t L, std::size_t budget);

struct CacheManifest {
    int regime = 0;             // 1: private layer only; 2: + w0 prefix; 3: w0 full
    std::size_t budget = 0;     // per-receiver bits
    std::size_t w0_cached = 0;  // prefix of the common codeword, cached at both
    TcPlan tc;
};

struct CacheSet {
    CacheManifest manifest;
    BitString r1, r2;
};

// m in bits per source symbol; budget = floor(n*m) bits, which must not exceed
// the full library size n0 + 2L.
CacheSet cache_encode(const Descriptions& d, double m);
CacheSet cache_encode_bits(const Descriptions& d, std::size_t budget_bits);

struct Demand {
    int d1 = 1, d2 = 2;
};

BitString multicast_encode(const Descriptions& d, const CacheSet& caches, const Demand& dem);

// receiver is 1 or 2; cache is that receiver's cache contents.
std::vector<std::uint8_t> decode_receiver(const Descriptions& d, const CacheManifest& man,
                                          const BitString& cache, int receiver,
                                          const Demand& dem, const BitString& codeword);

struct DeliveryTranscript {
    Demand demand;
    BitString codeword;
    std::size_t bits_sent = 0;
    bool ok1 = false, ok2 = false;
};

DeliveryTranscript run_delivery(const LibraryRealization& lib, const Descriptions& d,
                                const CacheSet& caches, const Demand& dem);

struct DemandOutcome {
    Demand demand;
    std::size_t bits_sent = 0;
    bool ok = false;
};

struct MemoryOutcome {
    double m = 0;
    CacheManifest manifest;
    std::array<DemandOutcome, 4> demands;  // (1,1), (1,2), (2,1), (2,2)
    double peak_rate = 0;                  // max bits_sent / n
    double ideal = 0;                      // r_ach at the measured operating point
    bool all_ok = false;
};

struct SimRun {
    SourceSpec spec;
    int n = 0;
    std::uint64_t seed = 0;
    Bits r0 = 0, rho = 0;  // measured description rates
    std::vector<MemoryOutcome> points;
};

SimRun run_experiment(const SourceSpec& spec, const std::vector<double>& m_grid, int n,
                      std::uint64_t seed);

// Brute force over every fair-bit shared-component realization of blocklength n
// (3n latent bits), every budget, all four demands. mutate, when set, corrupts
// caches/codeword before decoding; used as the negative control.
using Mutator = std::function<void(BitString& cache1, BitString& cache2, BitString& codeword)>;

struct ExhaustiveReport {
    std::uint64_t cases = 0;
    std::uint64_t failures = 0;
    std::string first_failure;  // empty when all cases decode exactly
};

ExhaustiveReport exhaustive_verify(int n, const std::vector<std::size_t>& budgets,
                                   const Mutator& mutate = nullptr);

}  // namespace gwcache
