#pragma once

#include "gwcache/aux_channel.hpp"
#include "gwcache/info.hpp"
#include "gwcache/pmf.hpp"
#include "gwcache/types.hpp"

namespace gwcache {

// Corner rates induced by an auxiliary channel:
//   r0 = I(X1,X2; U), r1 = H(X1 | U), r2 = H(X2 | U).
// Every triplet componentwise above a corner (for some U) is admissible for the
// two-descriptions-plus-common-stream coding problem these bounds model.
RateTriplet gw_corner(const JointPmf2& j, const AuxChannel& a);

// True when t componentwise dominates the corner of this channel within tol.
bool in_region(const RateTriplet& t, const JointPmf2& j, const AuxChannel& a, double tol = 1e-9);

// Conditional dependence left between X1 and X2 given U: I(X1; X2 | U) in bits.
// Zero iff X1 - U - X2 is a Markov chain.
Bits markov_defect(const JointPmf2& j, const AuxChannel& a);

// How far the channel is from conditional symmetry: max over u with p(u) > 0 and
// x of |p(x1 = x | u) - p(x2 = x | u)| under the induced joint. Requires n1 = n2.
double symmetry_defect(const JointPmf2& j, const AuxChannel& a);

// Crossover probability p1 of the binary-noise representation of a DSBS:
// X1 = U xor Z1, X2 = U xor Z2 with Z1, Z2 iid Bern(p1) gives disagreement
// probability p0 = 2 p1 (1 - p1); this returns the small root for p0 in [0, 1/2].
double dsbs_p1(double p0);

// Channel p(u | x1, x2) of the Xi = U xor Zi representation above with
// Zi ~ Bern(a) iid, U ~ Bern(1/2). Requires a in [0, 1/2], p0 in [0, 1/2].
// At a = dsbs_p1(p0) the chain X1 - U - X2 holds exactly; require_markov
// rejects (p0, a) pairs with |2a(1-a) - p0| > 1e-9.
AuxChannel wyner_aux_dsbs(double p0, double a, bool require_markov = false);

// Channel of the correlated-noise family: U ~ Bern(1/2), Xi = U xor Zi where
// (Z1, Z2) has P(Z1 != Z2) = p0, P(Zi = 1) = q, q = binary_entropy_inv(rho).
// Its corner lands on the r1 = r2 = rho slice of the region boundary for the
// DSBS. Requires p0 in (0, 1/2], rho in [h(dsbs_p1(p0)), 1].
AuxChannel dsbs_plane_aux(double p0, double rho);

// Smallest admissible r0 on the symmetric slice r1 = r2 = rho for dsbs(p0):
//   rho < h(p1): 1 + h(p0) - 2 rho            (time share toward the Wyner corner)
//   rho >= h(p1): correlated-noise curve, floored at I(X1;X2) = 1 - h(p0)
// with p1 = dsbs_p1(p0). For p0 = 0 the slice degenerates and the value is
// max(1 - rho, 0). Requires p0 in [0, 1/2], rho in [0, 1].
Bits dsbs_r0_boundary(double rho, double p0);

}  // namespace gwcache
