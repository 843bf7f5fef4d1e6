#pragma once

#include <vector>

#include "gwcache/pmf.hpp"
#include "gwcache/types.hpp"

namespace gwcache {

// Conditional pmf p(u | x1, x2) of an auxiliary variable U on {0..nu-1} given a
// source pair. Columns are indexed by the joint symbol x1*n2 + x2 of the pmf the
// channel is applied to; the channel itself only knows the column count. Each
// column must be a distribution: entries >= -1e-12 (clamped), column sums within
// 1e-9 of one (renormalized when off by more than 1e-15).
class AuxChannel {
  public:
    // Trivial 1x1 channel; placeholder so report structs can default-construct.
    AuxChannel() : nu_(1), cols_(1), w_{1.0} {}

    AuxChannel(int nu, int cols, std::vector<double> w);

    int nu() const { return nu_; }
    int cols() const { return cols_; }

    double p(int u, int col) const { return w_[static_cast<size_t>(u) * cols_ + col]; }
    const std::vector<double>& data() const { return w_; }

    // U identically zero: every column is a point mass at u = 0.
    static AuxChannel constant(int cols);

    // U = (X1, X2): column j maps deterministically to u = j, nu = cols.
    static AuxChannel identity_pair(int cols);

  private:
    int nu_;
    int cols_;
    std::vector<double> w_;  // row-major, w_[u*cols + col]
};

}  // namespace gwcache
