#include "gwcache/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "gwcache/achievable.hpp"
#include "gwcache/gray_wyner.hpp"
#include "gwcache/range_coder.hpp"
#include "gwcache/rng.hpp"

namespace gwcache {

namespace {

void check_bias(double p, const char* what) {
    if (!(p >= 0.0 && p <= 1.0)) throw ValidationError(std::string(what) + " outside [0, 1]");
}

BitString draw_bits(int n, double p, std::mt19937_64& eng) {
    BitString b(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) b.set(i, uniform01(eng) < p ? 1 : 0);
    return b;
}

StreamCode encode_stream(const BitString& bits, double bias) {
    StreamCode sc;
    sc.n_bits = bits.size();
    sc.bias = bias;
    if (bias <= 0.0 || bias >= 1.0) {
        int v = bias >= 1.0 ? 1 : 0;
        for (size_t i = 0; i < bits.size(); ++i)
            if (bits[i] != v) throw ValidationError("stream contradicts its deterministic bias");
        return sc;  // constant stream, nothing to store
    }
    if (bias == 0.5) {
        sc.raw = true;
        sc.code = bits;
        return sc;
    }
    std::vector<std::uint8_t> bytes = rc_encode(bits, bias);
    sc.code = BitString::unpack(bytes, bytes.size() * 8);
    return sc;
}

BitString decode_stream(const StreamCode& sc, const BitString& code, size_t n) {
    if (sc.bias <= 0.0 || sc.bias >= 1.0) {
        BitString b(n);
        if (sc.bias >= 1.0)
            for (size_t i = 0; i < n; ++i) b.set(i, 1);
        return b;
    }
    if (sc.raw) return code.slice(0, n);
    return rc_decode(code.slice(0, sc.code.size()).packed(), sc.bias, n);
}

// Private codeword padded with virtual zeros to the common length L.
BitString padded(const BitString& code, size_t L) {
    BitString out = code;
    while (out.size() < L) out.push_back(0);
    return out;
}

size_t cache_block_bits(const TcSegment& s) {
    switch (s.corner) {
        case TcCorner::None: return 0;
        case TcCorner::XorHalves: return s.len / 2;
        case TcCorner::OwnHalves: return s.len;
        case TcCorner::Both: return 2 * s.len;
    }
    return 0;
}

size_t payload_bits(const TcSegment& s, bool mixed) {
    switch (s.corner) {
        case TcCorner::None: return mixed ? 2 * s.len : s.len;
        case TcCorner::XorHalves: return s.len;
        case TcCorner::OwnHalves: return s.len / 2;
        case TcCorner::Both: return 0;
    }
    return 0;
}

void check_demand(const Demand& dem) {
    if ((dem.d1 != 1 && dem.d1 != 2) || (dem.d2 != 1 && dem.d2 != 2))
        throw ValidationError("demand indices must be 1 or 2");
}

}  // namespace

JointPmf2 SourceSpec::pmf() const {
    if (family == SourceFamily::SharedComponent) return shared_component_pmf(pv, p1p, p2p);
    return dsbs(p0);
}

LibraryRealization gen_shared_component(int n, double pv, double p1p, double p2p,
                                        std::uint64_t seed) {
    if (n < 1) throw ValidationError("blocklength must be >= 1");
    check_bias(pv, "pv");
    check_bias(p1p, "p1'");
    check_bias(p2p, "p2'");
    SourceSpec spec;
    spec.family = SourceFamily::SharedComponent;
    spec.pv = pv;
    spec.p1p = p1p;
    spec.p2p = p2p;
    std::mt19937_64 e0 = stream_engine(seed, 0), e1 = stream_engine(seed, 1),
                    e2 = stream_engine(seed, 2);
    return lib_from_latent(spec, draw_bits(n, pv, e0), draw_bits(n, p1p, e1),
                           draw_bits(n, p2p, e2));
}

LibraryRealization gen_dsbs_wyner(int n, double p0, std::uint64_t seed) {
    if (n < 1) throw ValidationError("blocklength must be >= 1");
    double p1 = dsbs_p1(p0);
    SourceSpec spec;
    spec.family = SourceFamily::DsbsWyner;
    spec.p0 = p0;
    std::mt19937_64 e0 = stream_engine(seed, 0), e1 = stream_engine(seed, 1),
                    e2 = stream_engine(seed, 2);
    return lib_from_latent(spec, draw_bits(n, 0.5, e0), draw_bits(n, p1, e1),
                           draw_bits(n, p1, e2));
}

LibraryRealization lib_from_latent(const SourceSpec& spec, const BitString& common,
                                   const BitString& priv1, const BitString& priv2) {
    size_t n = common.size();
    if (n == 0 || priv1.size() != n || priv2.size() != n)
        throw ValidationError("latent streams must share one nonzero length");
    LibraryRealization lib;
    lib.spec = spec;
    lib.n = static_cast<int>(n);
    lib.common = common;
    lib.priv1 = priv1;
    lib.priv2 = priv2;
    lib.x1.resize(n);
    lib.x2.resize(n);
    for (size_t i = 0; i < n; ++i) {
        if (spec.family == SourceFamily::SharedComponent) {
            lib.x1[i] = static_cast<std::uint8_t>(2 * priv1[i] + common[i]);
            lib.x2[i] = static_cast<std::uint8_t>(2 * priv2[i] + common[i]);
        } else {
            lib.x1[i] = static_cast<std::uint8_t>(common[i] ^ priv1[i]);
            lib.x2[i] = static_cast<std::uint8_t>(common[i] ^ priv2[i]);
        }
    }
    return lib;
}

Descriptions gw_encode(const LibraryRealization& lib) {
    if (lib.common.size() != static_cast<size_t>(lib.n) || lib.priv1.size() != lib.common.size() ||
        lib.priv2.size() != lib.common.size())
        throw ValidationError("realization lacks its latent streams");
    Descriptions d;
    d.spec = lib.spec;
    d.n = lib.n;
    double b0, b1, b2;
    if (lib.spec.family == SourceFamily::SharedComponent) {
        b0 = lib.spec.pv;
        b1 = lib.spec.p1p;
        b2 = lib.spec.p2p;
    } else {
        double p1 = dsbs_p1(lib.spec.p0);
        b0 = 0.5;
        b1 = p1;
        b2 = p1;
    }
    d.w0 = encode_stream(lib.common, b0);
    d.w1 = encode_stream(lib.priv1, b1);
    d.w2 = encode_stream(lib.priv2, b2);
    size_t L = std::max(d.w1.code.size(), d.w2.code.size());
    if (L % 2) ++L;  // even length so every corner splits into clean halves
    d.private_len = L;
    return d;
}

std::vector<std::uint8_t> gw_decode_file(const Descriptions& d, int k, const BitString& w0_code,
                                         const BitString& wk_code) {
    if (k != 1 && k != 2) throw ValidationError("file index must be 1 or 2");
    size_t n = static_cast<size_t>(d.n);
    BitString common = decode_stream(d.w0, w0_code, n);
    BitString priv = decode_stream(k == 1 ? d.w1 : d.w2, wk_code, n);
    std::vector<std::uint8_t> x(n);
    for (size_t i = 0; i < n; ++i)
        x[i] = d.spec.family == SourceFamily::SharedComponent
                   ? static_cast<std::uint8_t>(2 * priv[i] + common[i])
                   : static_cast<std::uint8_t>(common[i] ^ priv[i]);
    return x;
}

TcPlan tc_place(std::size_t L, std::size_t budget) {
    if (L % 2) throw ValidationError("tc_place: L must be even");
    if (budget > 2 * L) throw ValidationError("tc_place: budget exceeds 2L");
    TcPlan plan;
    plan.L = L;
    plan.budget = budget;
    auto seg = [&](std::size_t off, std::size_t len, TcCorner c) {
        if (len > 0) plan.segs.push_back({off, len, c});
    };
    if (2 * budget <= L) {
        // Between the empty corner and the XOR corner: the first 2b positions
        // run the XOR scheme (b bits stored), the rest are uncached.
        seg(0, 2 * budget, TcCorner::XorHalves);
        seg(2 * budget, L - 2 * budget, TcCorner::None);
        plan.stored = budget;
    } else if (budget <= L) {
        std::size_t lx = 2 * (L - budget);
        seg(0, lx, TcCorner::XorHalves);
        seg(lx, L - lx, TcCorner::OwnHalves);
        plan.stored = budget;
    } else {
        // Between the own-halves corner and full caching. The both-files block
        // must have even length so the own-halves block keeps clean halves; an
        // odd budget leaves one bit unused.
        std::size_t b = budget - ((budget - L) & 1);
        std::size_t lo = 2 * L - b;
        seg(0, lo, TcCorner::OwnHalves);
        seg(lo, L - lo, TcCorner::Both);
        plan.stored = b;
    }
    return plan;
}

CacheSet cache_encode_bits(const Descriptions& d, std::size_t budget_bits) {
    size_t n0 = d.w0.code.size(), L = d.private_len;
    if (budget_bits > n0 + 2 * L)
        throw ValidationError("cache budget exceeds the library size");
    CacheManifest man;
    man.budget = budget_bits;
    if (budget_bits < L) {
        man.regime = 1;
        man.w0_cached = 0;
        man.tc = tc_place(L, budget_bits);
    } else if (budget_bits < n0 + L) {
        man.regime = 2;
        man.w0_cached = budget_bits - L;
        man.tc = tc_place(L, L);
    } else {
        man.regime = 3;
        man.w0_cached = n0;
        man.tc = tc_place(L, std::min(budget_bits - n0, 2 * L));
    }

    BitString pc1 = padded(d.w1.code, L), pc2 = padded(d.w2.code, L);
    CacheSet cs;
    cs.manifest = man;
    for (int k = 1; k <= 2; ++k) {
        BitString& cache = k == 1 ? cs.r1 : cs.r2;
        cache = d.w0.code.slice(0, man.w0_cached);
        for (const TcSegment& s : man.tc.segs) {
            size_t half = s.len / 2;
            size_t hk = s.off + (k == 1 ? 0 : half);  // this receiver's half
            switch (s.corner) {
                case TcCorner::None:
                    break;
                case TcCorner::XorHalves:
                    cache.append(pc1.slice(hk, hk + half) ^ pc2.slice(hk, hk + half));
                    break;
                case TcCorner::OwnHalves:
                    cache.append(pc1.slice(hk, hk + half));
                    cache.append(pc2.slice(hk, hk + half));
                    break;
                case TcCorner::Both:
                    cache.append(pc1.slice(s.off, s.off + s.len));
                    cache.append(pc2.slice(s.off, s.off + s.len));
                    break;
            }
        }
    }
    return cs;
}

CacheSet cache_encode(const Descriptions& d, double m) {
    if (!(m >= 0)) throw ValidationError("memory must be >= 0");
    double budget = std::floor(m * d.n + 1e-9);
    if (budget > static_cast<double>(d.w0.code.size() + 2 * d.private_len))
        throw ValidationError("cache budget exceeds the library size");
    return cache_encode_bits(d, static_cast<size_t>(budget));
}

BitString multicast_encode(const Descriptions& d, const CacheSet& caches, const Demand& dem) {
    check_demand(dem);
    const CacheManifest& man = caches.manifest;
    size_t L = d.private_len;
    BitString pc[2] = {padded(d.w1.code, L), padded(d.w2.code, L)};
    const BitString& ca = pc[dem.d1 - 1];  // receiver 1's file
    const BitString& cb = pc[dem.d2 - 1];  // receiver 2's file
    bool mixed = dem.d1 != dem.d2;

    BitString out = d.w0.code.slice(man.w0_cached, d.w0.code.size());
    for (const TcSegment& s : man.tc.segs) {
        size_t half = s.len / 2;
        size_t p1 = s.off, p2 = s.off + half;
        switch (s.corner) {
            case TcCorner::None:
                out.append(ca.slice(s.off, s.off + s.len));
                if (mixed) out.append(cb.slice(s.off, s.off + s.len));
                break;
            case TcCorner::XorHalves:
                if (mixed) {
                    // receiver 1 reads its second half directly and cancels its
                    // cached XOR with receiver 2's first half; mirrored for 2.
                    out.append(ca.slice(p2, p2 + half));
                    out.append(cb.slice(p1, p1 + half));
                } else {
                    out.append(ca.slice(s.off, s.off + s.len));
                }
                break;
            case TcCorner::OwnHalves:
                if (mixed)
                    out.append(ca.slice(p2, p2 + half) ^ cb.slice(p1, p1 + half));
                else
                    out.append(ca.slice(p1, p1 + half) ^ ca.slice(p2, p2 + half));
                break;
            case TcCorner::Both:
                break;
        }
    }
    return out;
}

std::vector<std::uint8_t> decode_receiver(const Descriptions& d, const CacheManifest& man,
                                          const BitString& cache, int receiver, const Demand& dem,
                                          const BitString& codeword) {
    check_demand(dem);
    if (receiver != 1 && receiver != 2) throw ValidationError("receiver must be 1 or 2");
    size_t n0 = d.w0.code.size(), L = d.private_len;
    bool mixed = dem.d1 != dem.d2;
    int want = receiver == 1 ? dem.d1 : dem.d2;

    BitString w0_code = cache.slice(0, man.w0_cached);
    w0_code.append(codeword.slice(0, n0 - man.w0_cached));

    BitString pw(L);  // the demanded private codeword, rebuilt segment by segment
    size_t cc = man.w0_cached;              // cache cursor
    size_t pc = n0 - man.w0_cached;         // codeword cursor
    for (const TcSegment& s : man.tc.segs) {
        size_t half = s.len / 2;
        size_t mine = s.off + (receiver == 1 ? 0 : half);   // this receiver's half
        size_t other = s.off + (receiver == 1 ? half : 0);  // the opposite half
        BitString cblk = cache.slice(cc, cc + cache_block_bits(s));
        BitString pblk = codeword.slice(pc, pc + payload_bits(s, mixed));
        cc += cblk.size();
        pc += pblk.size();
        auto put = [&](size_t at, const BitString& bits) {
            for (size_t i = 0; i < bits.size(); ++i) pw.set(at + i, bits[i]);
        };
        switch (s.corner) {
            case TcCorner::None:
                // mixed payload is (receiver 1's file, receiver 2's file)
                put(s.off, pblk.slice(mixed && receiver == 2 ? s.len : 0,
                                      mixed && receiver == 2 ? 2 * s.len : s.len));
                break;
            case TcCorner::XorHalves:
                if (mixed) {
                    // payload = (d1 file on half 2, d2 file on half 1); the
                    // cached block is the XOR of both files on this half.
                    BitString a = pblk.slice(0, half), b = pblk.slice(half, s.len);
                    if (receiver == 1) {
                        put(s.off + half, a);
                        put(s.off, cblk ^ b);
                    } else {
                        put(s.off, b);
                        put(s.off + half, cblk ^ a);
                    }
                } else {
                    put(s.off, pblk);  // demanded file sent whole
                }
                break;
            case TcCorner::OwnHalves: {
                // cache block = (file 1, file 2) on this receiver's half
                BitString own_want = cblk.slice((want - 1) * half, want * half);
                put(mine, own_want);
                if (mixed) {
                    // payload = d1 file on half 2 xor d2 file on half 1; cancel
                    // with the cached copy of the other receiver's file.
                    int oth = receiver == 1 ? dem.d2 : dem.d1;
                    BitString own_oth = cblk.slice((oth - 1) * half, oth * half);
                    put(other, pblk ^ own_oth);
                } else {
                    put(other, pblk ^ own_want);
                }
                break;
            }
            case TcCorner::Both:
                put(s.off, cblk.slice((want - 1) * s.len, want * s.len));
                break;
        }
    }
    return gw_decode_file(d, want, w0_code, pw);
}

DeliveryTranscript run_delivery(const LibraryRealization& lib, const Descriptions& d,
                                const CacheSet& caches, const Demand& dem) {
    DeliveryTranscript t;
    t.demand = dem;
    t.codeword = multicast_encode(d, caches, dem);
    t.bits_sent = t.codeword.size();
    auto expect = [&](int file) -> const std::vector<std::uint8_t>& {
        return file == 1 ? lib.x1 : lib.x2;
    };
    t.ok1 = decode_receiver(d, caches.manifest, caches.r1, 1, dem, t.codeword) == expect(dem.d1);
    t.ok2 = decode_receiver(d, caches.manifest, caches.r2, 2, dem, t.codeword) == expect(dem.d2);
    return t;
}

SimRun run_experiment(const SourceSpec& spec, const std::vector<double>& m_grid, int n,
                      std::uint64_t seed) {
    LibraryRealization lib =
        spec.family == SourceFamily::SharedComponent
            ? gen_shared_component(n, spec.pv, spec.p1p, spec.p2p, seed)
            : gen_dsbs_wyner(n, spec.p0, seed);
    Descriptions d = gw_encode(lib);
    SimRun run;
    run.spec = lib.spec;
    run.n = n;
    run.seed = seed;
    run.r0 = d.r0();
    run.rho = d.rho();
    const Demand all[4] = {{1, 1}, {1, 2}, {2, 1}, {2, 2}};
    for (double m : m_grid) {
        MemoryOutcome mo;
        mo.m = m;
        CacheSet caches = cache_encode(d, m);
        mo.manifest = caches.manifest;
        mo.all_ok = true;
        size_t peak = 0;
        for (int i = 0; i < 4; ++i) {
            DeliveryTranscript t = run_delivery(lib, d, caches, all[i]);
            mo.demands[i] = {t.demand, t.bits_sent, t.ok1 && t.ok2};
            mo.all_ok = mo.all_ok && t.ok1 && t.ok2;
            peak = std::max(peak, t.bits_sent);
        }
        mo.peak_rate = static_cast<double>(peak) / n;
        mo.ideal = r_ach({run.r0, run.rho}, m);
        run.points.push_back(std::move(mo));
    }
    return run;
}

ExhaustiveReport exhaustive_verify(int n, const std::vector<std::size_t>& budgets,
                                   const Mutator& mutate) {
    if (n < 1 || n > 8) throw ValidationError("exhaustive_verify: n must be in [1, 8]");
    SourceSpec spec;  // fair-bit shared component: every stream raw-packs
    ExhaustiveReport rep;
    const Demand all[4] = {{1, 1}, {1, 2}, {2, 1}, {2, 2}};
    std::uint64_t total = 1ull << (3 * n);
    for (std::uint64_t mask = 0; mask < total; ++mask) {
        BitString common(static_cast<size_t>(n)), p1(static_cast<size_t>(n)),
            p2(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i) {
            common.set(i, (mask >> i) & 1);
            p1.set(i, (mask >> (n + i)) & 1);
            p2.set(i, (mask >> (2 * n + i)) & 1);
        }
        LibraryRealization lib = lib_from_latent(spec, common, p1, p2);
        Descriptions d = gw_encode(lib);
        for (std::size_t budget : budgets) {
            CacheSet caches = cache_encode_bits(d, budget);
            for (const Demand& dem : all) {
                ++rep.cases;
                BitString codeword = multicast_encode(d, caches, dem);
                BitString c1 = caches.r1, c2 = caches.r2;
                if (mutate) mutate(c1, c2, codeword);
                bool ok1 = decode_receiver(d, caches.manifest, c1, 1, dem, codeword) ==
                           (dem.d1 == 1 ? lib.x1 : lib.x2);
                bool ok2 = decode_receiver(d, caches.manifest, c2, 2, dem, codeword) ==
                           (dem.d2 == 1 ? lib.x1 : lib.x2);
                if (!ok1 || !ok2) {
                    ++rep.failures;
                    if (rep.first_failure.empty()) {
                        char buf[96];
                        std::snprintf(buf, sizeof buf,
                                      "mask=%llu budget=%zu demand=(%d,%d) receiver=%d",
                                      static_cast<unsigned long long>(mask), budget, dem.d1,
                                      dem.d2, !ok1 ? 1 : 2);
                        rep.first_failure = buf;
                    }
                }
            }
        }
    }
    return rep;
}

}  // namespace gwcache
