#pragma once

#include <vector>

#include "gwcache/aux_channel.hpp"
#include "gwcache/pmf.hpp"
#include "gwcache/types.hpp"

namespace gwcache {

// Operating point of the two-layer scheme: the pair is compressed into a shared
// stream of rate r0 and two private streams of rate rho each (symmetric case).
struct OperatingPoint {
    Bits r0 = 0;
    Bits rho = 0;
};

// Delivery rate of the layered cache-and-multicast scheme at memory m:
//   m in [0, rho/2):            r0 + 2 rho - 2 m
//   m in [rho/2, r0 + rho):     r0 + 3 rho / 2 - m
//   m in [r0 + rho, r0 + 2 rho): r0/2 + rho - m/2
//   m >= r0 + 2 rho:            0
// Piecewise linear, continuous, nonincreasing in m. Requires r0, rho, m >= 0.
Bits r_ach(const OperatingPoint& p, double m);

// Which linear piece applies at m: 1, 2, 3 as listed above, 0 for the zero tail.
int r_ach_branch(const OperatingPoint& p, double m);

// Scheme rate when the operating point is the corner of a symmetric channel
// (p(x1=.|u) = p(x2=.|u) within 1e-9, requires n1 = n2): r_ach at
// (r0, rho) = (I(X1,X2;U), H(X1|U)). Throws ValidationError when the channel is
// not symmetric for this pmf.
Bits r_ub_gw_u(const JointPmf2& j, const AuxChannel& a, double m);

// Best scheme rate over the symmetric slice of the DSBS region: minimizes
// r_ach((dsbs_r0_boundary(rho, p0), rho), m) over rho in [0, 1]. Grid scan at
// 1e-3 refined by golden-section. Returns the minimizing rho as well.
struct PlanePoint {
    Bits value = 0;
    double rho = 0;
};
PlanePoint r_ub_gw_dsbs(double p0, double m);

// Uncoded-prefix baseline: each receiver caches the same M bits of the joint
// description, delivery sends the rest: max(H - m, 0).
Bits baseline_lfu_um(const JointPmf2& j, double m);

// Coded-caching baseline treating the two files as independent, each compressed
// on its own to F = H(X1) = H(X2) bits per symbol:
//   F * max(2 - 2m/F, 3/2 - m/F, 1 - m/(2F), 0).
// Requires H(X1) = H(X2) within 1e-9 (equal file sizes).
Bits baseline_tc(const JointPmf2& j, double m);

// Sup over a memory grid of r_ub_gw_u - r_lb_gw_u at one channel. For symmetric
// Markov channels the two coincide identically; the report carries the defects
// so a caller can see whether the hypothesis held.
struct CornerGapReport {
    double sup_gap = 0;
    double markov_defect = 0;
    double symmetry_defect = 0;
    bool qualifying = false;   // both defects within 1e-9
};
CornerGapReport corner_gap_report(const JointPmf2& j, const AuxChannel& a,
                                  const std::vector<double>& m_grid);

}  // namespace gwcache
