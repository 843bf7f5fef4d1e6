#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gwcache/aux_channel.hpp"
#include "gwcache/pmf.hpp"
#include "gwcache/types.hpp"

namespace gwcache {

// How the search space is parameterized.
//   Free:            p(u | x1, x2), one simplex per source pair. Always matches
//                    the target pmf exactly; no Markov constraint.
//   Markov:          p(u) and per-u product rows p(x1|u), p(x2|u). Markov by
//                    construction; matching the target pmf is enforced by a
//                    quadratic penalty with escalating weight.
//   MarkovSymmetric: Markov with p(x1=.|u) = p(x2=.|u) shared (needs n1 = n2).
enum class ParamMode { Free, Markov, MarkovSymmetric };

// What to optimize. m and target are read only by the kinds that need them.
enum class ObjectiveKind {
    MinRLbGwU,             // minimize the one-channel refined lower bound at memory m
    MaxHalfMinCondEntropy, // maximize (1/2) min(H(X1|U), H(X2|U))
    MinRUbGwU,             // minimize the symmetric-corner scheme rate at memory m
    MinCornerExcess,       // minimize sum of positive overshoots of the corner vs target
};

struct Objective {
    ObjectiveKind kind;
    double m = 0;
    RateTriplet target;
};

std::string objective_name(const Objective& obj);

struct OptimizerConfig {
    int restarts = 64;
    int max_iters = 2000;
    double step0 = 0.1;          // initial projected-gradient step
    double value_tol = 1e-10;    // stop when an outer round improves less than this
    double pmf_match_tol = 1e-8; // feasibility gate on total variation to the target pmf
    double markov_tol = 1e-9;    // feasibility gate on I(X1;X2|U) in Markov modes
    std::uint64_t seed = 0x5eedcafef00dULL;
    int nu = 0;                  // auxiliary alphabet size; 0 means n1*n2 + 2
};

// One restart's outcome, kept for reproducibility dumps.
struct RestartTrace {
    int index = 0;             // restart number, structured seeds first
    std::string init;          // "seed:<kind>" or "random"
    double value = 0;          // objective after polish, NaN if infeasible
    bool feasible = false;
    int iters = 0;
};

struct OptResult {
    double value = 0;          // best feasible objective value, re-evaluated on witness
    AuxChannel witness;
    std::string witness_kind;
    bool feasible = false;     // false when no restart passed the gates
    std::vector<RestartTrace> trace;
};

// Structured warm starts for a pmf: the constant channel, the identity pair
// channel, the binary-noise channel when the pmf is DSBS-shaped, and the
// common-part extractor built from the connected components of the support.
// Modes that cannot represent a seed exactly drop it.
struct SeededWitness {
    std::string kind;
    AuxChannel channel;
};
std::vector<SeededWitness> seeded_witnesses(const JointPmf2& j, ParamMode mode, int nu);

// Multi-restart projected gradient over the chosen parameterization. Runs the
// structured seeds first (also scoring each raw seed as a candidate), then
// random restarts, deterministically from cfg.seed: restart k draws from an
// engine keyed by (seed, k). Minimizes by default; pass maximize = true to flip.
OptResult optimize(const JointPmf2& j, const Objective& obj, ParamMode mode,
                   const OptimizerConfig& cfg, bool maximize = false);

}  // namespace gwcache
