#include <doctest.h>

#include <cstdlib>
#include <vector>

#include "gwcache/achievable.hpp"
#include "gwcache/gray_wyner.hpp"
#include "gwcache/info.hpp"
#include "gwcache/pmf.hpp"
#include "gwcache/simulator.hpp"
#include "gwcache/types.hpp"

using namespace gwcache;

namespace {

BitString pad_to(const BitString& code, size_t len) {
    BitString out = code;
    while (out.size() < len) out.push_back(0);
    return out;
}

// Segments must tile [0, L) and the per-receiver storage must match `stored`.
void check_plan_shape(const TcPlan& plan) {
    size_t pos = 0, stored = 0;
    for (const TcSegment& s : plan.segs) {
        CHECK(s.off == pos);
        CHECK(s.len > 0);
        if (s.corner != TcCorner::Both) CHECK(s.len % 2 == 0);
        pos += s.len;
        switch (s.corner) {
            case TcCorner::None: break;
            case TcCorner::XorHalves: stored += s.len / 2; break;
            case TcCorner::OwnHalves: stored += s.len; break;
            case TcCorner::Both: stored += 2 * s.len; break;
        }
    }
    CHECK(pos == plan.L);
    CHECK(stored == plan.stored);
    CHECK(plan.stored <= plan.budget);
    CHECK(plan.budget <= plan.stored + 1);
}

}  // namespace

TEST_CASE("generators are seed-deterministic and family-structured") {
    LibraryRealization a = gen_shared_component(128, 0.5, 0.5, 0.5, 7);
    LibraryRealization b = gen_shared_component(128, 0.5, 0.5, 0.5, 7);
    CHECK(a.x1 == b.x1);
    CHECK(a.x2 == b.x2);
    CHECK(a.common == b.common);
    CHECK(a.priv1 == b.priv1);
    CHECK(a.priv2 == b.priv2);
    CHECK(gen_shared_component(128, 0.5, 0.5, 0.5, 8).x1 != a.x1);

    // shared component: low symbol bit is the common bit, high bit the private
    for (int i = 0; i < 128; ++i) {
        CHECK(a.x1[i] == 2 * a.priv1[i] + a.common[i]);
        CHECK(a.x2[i] == 2 * a.priv2[i] + a.common[i]);
    }

    LibraryRealization d = gen_dsbs_wyner(128, 0.2, 7);
    CHECK(gen_dsbs_wyner(128, 0.2, 7).x1 == d.x1);
    for (int i = 0; i < 128; ++i) {
        CHECK(d.x1[i] == (d.common[i] ^ d.priv1[i]));
        CHECK(d.x2[i] == (d.common[i] ^ d.priv2[i]));
    }

    CHECK_THROWS_AS(gen_shared_component(0, 0.5, 0.5, 0.5, 1), ValidationError);
    CHECK_THROWS_AS(gen_shared_component(8, 1.5, 0.5, 0.5, 1), ValidationError);
    CHECK_THROWS_AS(gen_dsbs_wyner(8, -0.1, 1), ValidationError);
}

TEST_CASE("library from explicit latents reproduces the symbol maps") {
    SourceSpec spec;  // fair shared component
    BitString v(std::vector<std::uint8_t>{1, 0, 1});
    BitString p1(std::vector<std::uint8_t>{0, 1, 1});
    BitString p2(std::vector<std::uint8_t>{1, 1, 0});
    LibraryRealization lib = lib_from_latent(spec, v, p1, p2);
    CHECK(lib.n == 3);
    CHECK(lib.x1 == std::vector<std::uint8_t>{1, 2, 3});
    CHECK(lib.x2 == std::vector<std::uint8_t>{3, 2, 1});

    SourceSpec ds;
    ds.family = SourceFamily::DsbsWyner;
    LibraryRealization dl = lib_from_latent(ds, v, p1, p2);
    CHECK(dl.x1 == std::vector<std::uint8_t>{1, 1, 0});
    CHECK(dl.x2 == std::vector<std::uint8_t>{0, 1, 1});

    CHECK_THROWS_AS(lib_from_latent(spec, v, p1, BitString(2)), ValidationError);
    CHECK_THROWS_AS(lib_from_latent(spec, BitString(), BitString(), BitString()), ValidationError);
}

TEST_CASE("fair streams raw-pack and constant streams vanish") {
    LibraryRealization lib = gen_shared_component(64, 0.5, 0.5, 0.5, 3);
    Descriptions d = gw_encode(lib);
    CHECK(d.w0.raw);
    CHECK(d.w1.raw);
    CHECK(d.w2.raw);
    CHECK(d.w0.code.size() == 64);
    CHECK(d.private_len == 64);
    CHECK(d.r0() == 1.0);
    CHECK(d.rho() == 1.0);
    CHECK(d.capacity() == 3.0);

    // odd blocklength: private codes pad to a common even length
    Descriptions dodd = gw_encode(gen_shared_component(5, 0.5, 0.5, 0.5, 3));
    CHECK(dodd.w1.code.size() == 5);
    CHECK(dodd.private_len == 6);
    CHECK(dodd.rho() == doctest::Approx(6.0 / 5.0));

    // constant common stream encodes to nothing but still decodes
    LibraryRealization con = gen_shared_component(32, 1.0, 0.5, 0.5, 4);
    Descriptions dc = gw_encode(con);
    CHECK(dc.w0.code.empty());
    CHECK(dc.w0.n_bits == 32);
    CHECK(dc.r0() == 0.0);
    CHECK(gw_decode_file(dc, 1, dc.w0.code, pad_to(dc.w1.code, dc.private_len)) == con.x1);
}

TEST_CASE("description rates track the latent stream entropies") {
    const int n = 20000;
    Descriptions sc = gw_encode(gen_shared_component(n, 0.5, 0.1, 0.9, 11));
    CHECK(sc.w0.raw);
    CHECK_FALSE(sc.w1.raw);
    CHECK(sc.w1.bias == 0.1);
    CHECK(sc.w2.bias == 0.9);
    CHECK(sc.r0() == 1.0);
    CHECK(std::abs(sc.rho() - binary_entropy(0.1)) < 0.03);

    Descriptions dw = gw_encode(gen_dsbs_wyner(n, 0.2, 11));
    CHECK(dw.r0() == 1.0);
    CHECK(std::abs(dw.rho() - binary_entropy(dsbs_p1(0.2))) < 0.03);
}

TEST_CASE("a file decodes from the common code plus its own private code") {
    for (int fam = 0; fam < 2; ++fam) {
        SourceSpec spec;
        LibraryRealization lib;
        if (fam == 0) {
            lib = gen_shared_component(300, 0.4, 0.2, 0.7, 21);
        } else {
            spec.family = SourceFamily::DsbsWyner;
            lib = gen_dsbs_wyner(300, 0.3, 21);
        }
        Descriptions d = gw_encode(lib);
        CHECK(gw_decode_file(d, 1, d.w0.code, d.w1.code) == lib.x1);
        CHECK(gw_decode_file(d, 2, d.w0.code, d.w2.code) == lib.x2);
        // padding beyond the true private code is ignored
        CHECK(gw_decode_file(d, 1, d.w0.code, pad_to(d.w1.code, d.private_len)) == lib.x1);
        CHECK(gw_decode_file(d, 2, d.w0.code, pad_to(d.w2.code, d.private_len)) == lib.x2);
        CHECK_THROWS_AS(gw_decode_file(d, 3, d.w0.code, d.w1.code), ValidationError);
    }
}

TEST_CASE("tc_place partitions the private range by budget zone") {
    TcPlan empty = tc_place(8, 0);
    REQUIRE(empty.segs.size() == 1);
    CHECK(empty.segs[0].corner == TcCorner::None);
    CHECK(empty.segs[0].len == 8);
    CHECK(empty.stored == 0);

    TcPlan low = tc_place(8, 2);
    REQUIRE(low.segs.size() == 2);
    CHECK(low.segs[0].corner == TcCorner::XorHalves);
    CHECK(low.segs[0].len == 4);
    CHECK(low.segs[1].corner == TcCorner::None);

    TcPlan knee = tc_place(8, 4);
    REQUIRE(knee.segs.size() == 1);
    CHECK(knee.segs[0].corner == TcCorner::XorHalves);
    CHECK(knee.segs[0].len == 8);

    TcPlan mid = tc_place(8, 6);
    REQUIRE(mid.segs.size() == 2);
    CHECK(mid.segs[0].corner == TcCorner::XorHalves);
    CHECK(mid.segs[0].len == 4);
    CHECK(mid.segs[1].corner == TcCorner::OwnHalves);

    TcPlan own = tc_place(8, 8);
    REQUIRE(own.segs.size() == 1);
    CHECK(own.segs[0].corner == TcCorner::OwnHalves);

    TcPlan high = tc_place(8, 12);
    REQUIRE(high.segs.size() == 2);
    CHECK(high.segs[0].corner == TcCorner::OwnHalves);
    CHECK(high.segs[0].len == 4);
    CHECK(high.segs[1].corner == TcCorner::Both);
    CHECK(high.stored == 12);

    // an odd budget above L wastes exactly one bit to keep halves clean
    TcPlan odd = tc_place(8, 13);
    CHECK(odd.stored == 12);
    CHECK(odd.budget == 13);

    TcPlan full = tc_place(8, 16);
    REQUIRE(full.segs.size() == 1);
    CHECK(full.segs[0].corner == TcCorner::Both);
    CHECK(full.stored == 16);

    for (size_t b = 0; b <= 16; ++b) check_plan_shape(tc_place(8, b));
    for (size_t b = 0; b <= 12; ++b) check_plan_shape(tc_place(6, b));

    CHECK_THROWS_AS(tc_place(7, 0), ValidationError);
    CHECK_THROWS_AS(tc_place(8, 17), ValidationError);
}

TEST_CASE("cache regimes split the budget between the two layers") {
    Descriptions d = gw_encode(gen_shared_component(64, 0.5, 0.5, 0.5, 5));
    REQUIRE(d.w0.code.size() == 64);
    REQUIRE(d.private_len == 64);

    CacheSet c0 = cache_encode(d, 0.25);  // 16 bits, private layer only
    CHECK(c0.manifest.regime == 1);
    CHECK(c0.manifest.w0_cached == 0);
    CHECK(c0.r1.size() == 16);
    CHECK(c0.r2.size() == 16);

    CacheSet c1 = cache_encode(d, 1.0);  // private layer saturated
    CHECK(c1.manifest.regime == 2);
    CHECK(c1.manifest.w0_cached == 0);
    CHECK(c1.r1.size() == 64);

    CacheSet c2 = cache_encode(d, 1.5);  // half the common code on top
    CHECK(c2.manifest.regime == 2);
    CHECK(c2.manifest.w0_cached == 32);
    CHECK(c2.r1.size() == 96);

    CacheSet c3 = cache_encode(d, 2.0);  // all of the common code
    CHECK(c3.manifest.regime == 3);
    CHECK(c3.manifest.w0_cached == 64);
    CHECK(c3.r1.size() == 128);

    CacheSet c4 = cache_encode(d, 3.0);  // everything
    CHECK(c4.manifest.regime == 3);
    CHECK(c4.r1.size() == 192);

    // an odd zone-3 private budget stores one bit short of the request
    CacheSet codd = cache_encode_bits(d, 131);
    CHECK(codd.manifest.regime == 3);
    CHECK(codd.r1.size() == 130);

    CHECK_THROWS_AS(cache_encode(d, 3.1), ValidationError);
    CHECK_THROWS_AS(cache_encode(d, -0.1), ValidationError);
    CHECK_THROWS_AS(cache_encode_bits(d, 193), ValidationError);
}

TEST_CASE("every demand decodes at every cache point") {
    LibraryRealization lib = gen_dsbs_wyner(512, 0.2, 42);
    Descriptions d = gw_encode(lib);
    const Demand demands[4] = {{1, 1}, {1, 2}, {2, 1}, {2, 2}};
    for (double m : {0.0, 0.3, 0.8, 1.2, 1.6}) {
        CacheSet caches = cache_encode(d, m);
        for (const Demand& dem : demands) {
            DeliveryTranscript t = run_delivery(lib, d, caches, dem);
            CHECK(t.ok1);
            CHECK(t.ok2);
            CHECK(t.bits_sent == t.codeword.size());
            auto want1 = dem.d1 == 1 ? lib.x1 : lib.x2;
            CHECK(decode_receiver(d, caches.manifest, caches.r1, 1, dem, t.codeword) == want1);
        }
    }
    CHECK_THROWS_AS(run_delivery(lib, d, cache_encode(d, 0.5), Demand{0, 1}), ValidationError);
}

TEST_CASE("peak rate matches the closed form at the measured rates") {
    SourceSpec fair;
    std::vector<double> grid;
    for (int k = 0; k <= 12; ++k) grid.push_back(0.25 * k);

    SimRun even = run_experiment(fair, grid, 200, 1);
    CHECK(even.r0 == 1.0);
    CHECK(even.rho == 1.0);
    for (const MemoryOutcome& mo : even.points) {
        CHECK(mo.all_ok);
        CHECK(std::abs(mo.peak_rate - mo.ideal) <= 2.0 / 200 + 1e-12);
    }

    // odd blocklength: padding and the odd-budget bit add at most one more bit
    SimRun odd = run_experiment(fair, grid, 101, 1);
    for (const MemoryOutcome& mo : odd.points)
        CHECK(std::abs(mo.peak_rate - mo.ideal) <= 3.0 / 101 + 1e-12);

    SourceSpec ds;
    ds.family = SourceFamily::DsbsWyner;
    ds.p0 = 0.2;
    SimRun dsr = run_experiment(ds, {0.0, 0.25, 0.6, 1.0, 1.4, 1.9}, 20000, 9);
    for (const MemoryOutcome& mo : dsr.points) {
        CHECK(mo.all_ok);
        CHECK(std::abs(mo.peak_rate - mo.ideal) <= 0.001);
    }
}

TEST_CASE("exhaustive sweep covers every fair realization exactly") {
    ExhaustiveReport tiny = exhaustive_verify(1, {0, 1, 2, 3, 4, 5});
    CHECK(tiny.cases == 8ull * 6 * 4);
    CHECK(tiny.failures == 0);
    CHECK(tiny.first_failure.empty());

    ExhaustiveReport two = exhaustive_verify(2, {0, 1, 2, 3, 4, 5, 6});
    CHECK(two.cases == 64ull * 7 * 4);
    CHECK(two.failures == 0);

    // zone-3 placements, including the odd budget and the full library
    ExhaustiveReport deep = exhaustive_verify(4, {10, 11, 12});
    CHECK(deep.cases == 4096ull * 3 * 4);
    CHECK(deep.failures == 0);

    CHECK_THROWS_AS(exhaustive_verify(0, {0}), ValidationError);
    CHECK_THROWS_AS(exhaustive_verify(9, {0}), ValidationError);
}

TEST_CASE("corrupted transport is caught by the sweep") {
    // flipping the first codeword bit corrupts the common stream for everyone
    Mutator flip_code = [](BitString&, BitString&, BitString& codeword) {
        codeword.set(0, codeword[0] ^ 1);
    };
    ExhaustiveReport rep = exhaustive_verify(2, {2}, flip_code);
    CHECK(rep.cases == 256);
    CHECK(rep.failures == 256);
    CHECK_FALSE(rep.first_failure.empty());

    // flipping receiver 1's cached copy of file 1 spares only demand (2,2)
    Mutator flip_cache = [](BitString& c1, BitString&, BitString&) {
        c1.set(0, c1[0] ^ 1);
    };
    ExhaustiveReport partial = exhaustive_verify(2, {2}, flip_cache);
    CHECK(partial.cases == 256);
    CHECK(partial.failures == 192);
}

TEST_CASE("source specs agree with their library pmfs") {
    SourceSpec sc;
    sc.pv = 0.4;
    sc.p1p = 0.2;
    sc.p2p = 0.7;
    JointPmf2 jp = sc.pmf();
    JointPmf2 ref = shared_component_pmf(0.4, 0.2, 0.7);
    REQUIRE(jp.n1() == ref.n1());
    REQUIRE(jp.n2() == ref.n2());
    for (int a = 0; a < jp.n1(); ++a)
        for (int b = 0; b < jp.n2(); ++b) CHECK(jp.at(a, b) == ref.at(a, b));

    SourceSpec ds;
    ds.family = SourceFamily::DsbsWyner;
    ds.p0 = 0.3;
    JointPmf2 dj = ds.pmf();
    JointPmf2 dref = dsbs(0.3);
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) CHECK(dj.at(a, b) == dref.at(a, b));

    // generated symbol frequencies settle on the declared pmf
    const int n = 50000;
    LibraryRealization lib = gen_shared_component(n, 0.4, 0.2, 0.7, 77);
    std::vector<double> freq(16, 0.0);
    for (int i = 0; i < n; ++i) freq[4 * lib.x1[i] + lib.x2[i]] += 1.0 / n;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) CHECK(std::abs(freq[4 * a + b] - jp.at(a, b)) < 0.01);
}
