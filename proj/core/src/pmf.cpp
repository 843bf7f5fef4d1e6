#include "gwcache/pmf.hpp"

#include <cmath>
#include <string>

namespace gwcache {

JointPmf2::JointPmf2(int n1, int n2, std::vector<double> p)
    : n1_(n1), n2_(n2), p_(std::move(p)) {
    if (n1_ < 1 || n2_ < 1) throw ValidationError("JointPmf2: alphabet sizes must be >= 1");
    if (p_.size() != static_cast<size_t>(n1_) * n2_)
        throw ValidationError("JointPmf2: expected " + std::to_string(n1_ * n2_) + " entries, got " +
                              std::to_string(p_.size()));
    double s = 0;
    for (double& v : p_) {
        if (!(v >= -1e-12)) throw ValidationError("JointPmf2: negative probability entry");
        if (v < 0) v = 0;
        s += v;
    }
    if (std::abs(s - 1.0) > 1e-9)
        throw ValidationError("JointPmf2: total mass " + std::to_string(s) + ", expected 1");
    if (std::abs(s - 1.0) > 1e-15)
        for (double& v : p_) v /= s;
}

std::vector<double> JointPmf2::marginal1() const {
    std::vector<double> m(n1_, 0.0);
    for (int x1 = 0; x1 < n1_; ++x1)
        for (int x2 = 0; x2 < n2_; ++x2) m[x1] += at(x1, x2);
    return m;
}

std::vector<double> JointPmf2::marginal2() const {
    std::vector<double> m(n2_, 0.0);
    for (int x1 = 0; x1 < n1_; ++x1)
        for (int x2 = 0; x2 < n2_; ++x2) m[x2] += at(x1, x2);
    return m;
}

JointPmf2 dsbs(double p0) {
    if (!(p0 >= 0.0 && p0 <= 0.5)) throw ValidationError("dsbs: p0 outside [0, 1/2]");
    double agree = (1.0 - p0) / 2, flip = p0 / 2;
    return JointPmf2(2, 2, {agree, flip, flip, agree});
}

JointPmf2 shared_component_pmf(double pv, double p1p, double p2p) {
    for (double b : {pv, p1p, p2p})
        if (!(b >= 0.0 && b <= 1.0))
            throw ValidationError("shared_component_pmf: bias outside [0,1]");
    std::vector<double> p(16, 0.0);
    for (int a1 = 0; a1 < 2; ++a1)
        for (int a2 = 0; a2 < 2; ++a2)
            for (int v = 0; v < 2; ++v) {
                int x1 = 2 * a1 + v, x2 = 2 * a2 + v;
                double pr = (a1 ? p1p : 1 - p1p) * (a2 ? p2p : 1 - p2p) * (v ? pv : 1 - pv);
                p[static_cast<size_t>(x1) * 4 + x2] += pr;
            }
    return JointPmf2(4, 4, std::move(p));
}

}  // namespace gwcache
