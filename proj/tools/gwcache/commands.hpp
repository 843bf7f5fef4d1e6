#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gwcache/optimizer.hpp"
#include "gwcache/pmf.hpp"

// Command bodies behind the gwcache executable. They validate their options,
// run the library, and return the finished payload (CSV, JSON, SVG) as a
// string; file placement and exit-code mapping stay in main.
namespace gwcache::cli {

// Every subcommand reads the pair source the same way: a DSBS flip probability
// unless a pmf file is named.
struct SourceOpt {
    double p0 = 0.2;
    std::string pmf_path;

    bool is_dsbs() const { return pmf_path.empty(); }
    JointPmf2 load() const;
};

// "start:stop:step" in bits; an empty grid falls back to the command default.
struct GridSpec {
    double start = 0, stop = 0, step = 0;
    static GridSpec parse(const std::string& text);
    std::vector<double> points() const;  // start, start+step, ... while <= stop + 1e-9
};

inline constexpr std::uint64_t kDefaultSeed = OptimizerConfig{}.seed;

struct SweepOptions {
    SourceOpt source;
    std::string grid;  // empty: 0 : H(X1,X2) : 0.01
    std::vector<std::string> curves = {"lb", "lb_gw", "ub_gw", "tc", "lfu_um"};
    int restarts = 0;  // refined-bound optimizer restarts per grid point
    std::uint64_t seed = kDefaultSeed;
    int threads = 0;   // 0: hardware concurrency
};

struct SweepRow {
    double m = 0;
    std::optional<double> lb, lb_gw, ub_gw, tc, lfu_um;
};

std::vector<SweepRow> run_sweep(const SweepOptions& opt);
std::string sweep_csv(const std::vector<SweepRow>& rows);
std::string sweep_svg(const std::vector<SweepRow>& rows);

struct BoundsOptions {
    SourceOpt source;
    double memory = 0;
    int restarts = 64;
    std::uint64_t seed = kDefaultSeed;
};

std::string run_bounds(const BoundsOptions& opt);

struct AchievableOptions {
    SourceOpt source;
    double memory = 0;
    std::string aux_path;            // corner of an explicit channel
    std::optional<double> r0, rho;   // direct operating point
};

std::string run_achievable(const AchievableOptions& opt);

struct OptimizeOptions {
    SourceOpt source;
    std::string objective = "m1-symmetric";  // m1 | m1-symmetric | lb-gw | ub-gw | corner
    std::optional<double> memory;            // required by lb-gw and ub-gw
    int restarts = 64;
    std::uint64_t seed = kDefaultSeed;
    int nu = 0;  // auxiliary alphabet size, 0: n1*n2 + 2
};

std::string run_optimize(const OptimizeOptions& opt);

struct SimulateOptions {
    std::string family = "shared";  // shared | dsbs
    double pv = 0.5, p1p = 0.5, p2p = 0.5;
    double p0 = 0.2;
    std::optional<double> memory;
    std::string grid;  // exactly one of memory / grid unless exhaustive
    int n = 100000;
    std::uint64_t seed = 1;
    bool exhaustive = false;
    std::vector<std::size_t> budgets = {0, 2, 4, 6, 8};  // exhaustive mode only
};

std::string run_simulate(const SimulateOptions& opt);

}  // namespace gwcache::cli
