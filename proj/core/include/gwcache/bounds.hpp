#pragma once

#include <string>

#include "gwcache/aux_channel.hpp"
#include "gwcache/optimizer.hpp"
#include "gwcache/pmf.hpp"
#include "gwcache/types.hpp"

namespace gwcache {

// Setting: a server holds two files of H(X1,X2)/2 bits each (per source symbol,
// normalized), two receivers each cache M bits and then request one file each;
// bounds below are on the worst-case delivery rate R(M).

// Cut-set style converse, valid for any delivery scheme:
//   R >= max(0, H - 2M, (H - M)/2, (H + max(H1, H2))/2 - M)
// with H = H(X1,X2), Hi = H(Xi).
Bits r_lb(const JointPmf2& j, double m);

// Same value plus which of the four forms attains it (1-based, ties resolved to
// the smallest index): 1 = zero clamp, 2 = H-2M, 3 = (H-M)/2, 4 = (H+max)/2-M.
struct ActiveBound {
    Bits value;
    int index;
    std::string label;
};
ActiveBound r_lb_active(const JointPmf2& j, double m);

// Converse refined by one auxiliary U, writing i = I(X1,X2;U), hk = H(Xk|U):
//   R >= max(0, i+h1+h2-2M, (i+h1+h2-M)/2, i+h1+h2/2-M, i+h2+h1/2-M).
// Dominates r_lb for every channel. M must be >= 0.
Bits r_lb_gw_u(const JointPmf2& j, const AuxChannel& a, double m);

// Best r_lb_gw_u over a candidate pool: structured seeds, numerically optimized
// channels, and (for DSBS inputs) the symmetric-slice family. Returns the value
// together with the channel that achieved it, so the number is reproducible by
// a single r_lb_gw_u call.
struct BoundWitness {
    Bits value = 0;
    AuxChannel witness;
    std::string witness_kind;
};
BoundWitness r_lb_gw(const JointPmf2& j, double m, const OptimizerConfig& cfg = {});

// Largest memory M1 = max over Markov channels (I(X1;X2|U) = 0) of
// (1/2) min(H(X1|U), H(X2|U)). On [0, M1] and [H - 2 M1, H] the refined lower
// bound meets the matching two-layer scheme, so R(M) is known exactly there.
// symmetric = true restricts to channels with p(x1=.|u) = p(x2=.|u) (requires
// n1 = n2); the restricted problem can be infeasible for some pmfs, in which
// case InfeasibleError is thrown.
struct CoincidenceReport {
    Bits m1 = 0;
    Interval low;              // [0, m1]
    Interval high;             // [H - 2 m1, H]
    AuxChannel witness;
    std::string witness_kind;
    Bits markov_defect = 0;    // I(X1;X2|U) at the witness
    bool symmetric = false;
};
CoincidenceReport m1(const JointPmf2& j, bool symmetric = false, const OptimizerConfig& cfg = {});

// Whether the corner (i, h1, h2) = (I(X1;X2), H(X1|X2), H(X2|X1)) is
// admissible, i.e. some Markov channel reaches it. Certifies "yes" when a
// channel gets within tol of the target corner; otherwise reports unknown with
// the best excess found (the question is undecidable by search alone).
enum class MiCornerStatus { Yes, Unknown };
struct MiCornerReport {
    MiCornerStatus status = MiCornerStatus::Unknown;
    double excess = 0;         // sum of positive corner overshoots at the best channel
    RateTriplet target;
    AuxChannel witness;
    std::string witness_kind;
};
MiCornerReport mi_corner_check(const JointPmf2& j, const OptimizerConfig& cfg = {}, double tol = 1e-6);

// Width certificate for the uncharacterized middle range of M: an upper bound on
// max_M (achievable rate - lower bound), equal to
//   max(0, (1/2) min(H(X1|X2), H(X2|X1)) - M1_symmetric).
// Requires n1 = n2 (the symmetric restriction must make sense).
struct GapCertificate {
    Bits gap = 0;
    CoincidenceReport sym;     // the symmetric-restriction report behind the number
};
GapCertificate gap_certificate(const JointPmf2& j, const OptimizerConfig& cfg = {});

}  // namespace gwcache
