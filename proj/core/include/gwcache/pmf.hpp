#pragma once

#include <vector>

#include "gwcache/types.hpp"

namespace gwcache {

// Joint pmf of a pair (X1, X2) on {0..n1-1} x {0..n2-1}, stored row-major:
// p(x1, x2) lives at index x1*n2 + x2. Construction validates nonnegativity and
// total mass within 1e-9 of one, then renormalizes only if the deviation exceeds
// 1e-15, so byte-identical inputs survive a serialize/parse round trip.
class JointPmf2 {
  public:
    JointPmf2(int n1, int n2, std::vector<double> p);

    int n1() const { return n1_; }
    int n2() const { return n2_; }
    int size() const { return n1_ * n2_; }

    double at(int x1, int x2) const { return p_[static_cast<size_t>(x1) * n2_ + x2]; }
    double at_index(int joint) const { return p_[joint]; }
    const std::vector<double>& data() const { return p_; }

    std::vector<double> marginal1() const;
    std::vector<double> marginal2() const;

  private:
    int n1_;
    int n2_;
    std::vector<double> p_;
};

// Doubly symmetric binary source: uniform marginals, disagreement probability p0.
// Requires p0 in [0, 1/2].
JointPmf2 dsbs(double p0);

// Pair with an embedded common part: X1=(X1',V), X2=(X2',V) where V ~ Bern(pv)
// is shared and X1' ~ Bern(p1p), X2' ~ Bern(p2p) are independent of V and of
// each other. Symbol encoding: xi = 2*xi' + v, alphabet {0,1,2,3} per side.
JointPmf2 shared_component_pmf(double pv, double p1p, double p2p);

}  // namespace gwcache
