#include "gwcache/info.hpp"

#include <cmath>
#include <string>

namespace gwcache {

namespace {

double xlog2(double p) { return p > 0 ? p * std::log2(p) : 0.0; }

void validate_dist(const std::vector<double>& p) {
    double s = 0;
    for (double v : p) {
        if (!(v >= -1e-12))
            throw ValidationError("distribution entry negative: " + std::to_string(v));
        s += v;
    }
    if (std::abs(s - 1.0) > 1e-9)
        throw ValidationError("distribution mass " + std::to_string(s) + ", expected 1");
}

}  // namespace

Bits entropy(const std::vector<double>& p) {
    validate_dist(p);
    double h = 0;
    for (double v : p) h -= xlog2(v);
    return h < 0 ? 0 : h;  // -0.0 and rounding dust on degenerate inputs
}

Bits binary_entropy(double q) {
    if (!(q >= 0.0 && q <= 1.0)) throw ValidationError("binary_entropy: argument outside [0,1]");
    return -xlog2(q) - xlog2(1 - q);
}

double binary_entropy_inv(Bits y) {
    if (!(y >= 0.0 && y <= 1.0))
        throw ValidationError("binary_entropy_inv: argument outside [0,1]");
    // h is flat at the endpoints of its range (h(q) rounds to 1.0 for
    // |q - 1/2| < ~6e-9), so bisection alone cannot pin them down.
    if (y == 0.0) return 0.0;
    if (y == 1.0) return 0.5;
    double lo = 0.0, hi = 0.5;
    for (int it = 0; it < 200 && hi - lo > 1e-14; ++it) {
        double mid = 0.5 * (lo + hi);
        if (binary_entropy(mid) < y)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

JointMeasures joint_measures(const JointPmf2& j) {
    JointMeasures m{};
    m.h1 = entropy(j.marginal1());
    m.h2 = entropy(j.marginal2());
    m.h12 = entropy(j.data());
    m.h1g2 = m.h12 - m.h2;
    m.h2g1 = m.h12 - m.h1;
    m.i = m.h1 + m.h2 - m.h12;
    if (m.i < 0) m.i = 0;      // independent inputs land a few ulp below zero
    if (m.h1g2 < 0) m.h1g2 = 0;
    if (m.h2g1 < 0) m.h2g1 = 0;
    return m;
}

}  // namespace gwcache
