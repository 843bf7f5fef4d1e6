#pragma once

#include <vector>

#include "gwcache/pmf.hpp"
#include "gwcache/types.hpp"

namespace gwcache {

// Shannon entropy in bits of a (sub)distribution; entries must be >= -1e-12,
// tiny negatives from arithmetic noise are clamped to zero. 0 log 0 = 0.
Bits entropy(const std::vector<double>& p);

// Binary entropy h(q) = -q log2 q - (1-q) log2(1-q), q in [0,1].
Bits binary_entropy(double q);

// Inverse of binary entropy on [0, 1/2]: the unique q in [0, 1/2] with h(q) = y.
// y must lie in [0, 1]. Bisection to width 1e-14.
double binary_entropy_inv(Bits y);

// Standard single-pair information measures, all in bits.
struct JointMeasures {
    Bits h1;     // H(X1)
    Bits h2;     // H(X2)
    Bits h12;    // H(X1, X2)
    Bits h1g2;   // H(X1 | X2)
    Bits h2g1;   // H(X2 | X1)
    Bits i;      // I(X1; X2)
};

JointMeasures joint_measures(const JointPmf2& j);

}  // namespace gwcache
