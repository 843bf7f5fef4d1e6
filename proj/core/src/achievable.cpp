#include "gwcache/achievable.hpp"

#include <algorithm>
#include <cmath>

#include "gwcache/bounds.hpp"
#include "gwcache/gray_wyner.hpp"
#include "gwcache/info.hpp"

namespace gwcache {

namespace {

void check_point(const OperatingPoint& p, double m) {
    if (!(p.r0 >= 0) || !(p.rho >= 0))
        throw ValidationError("operating point: r0 and rho must be >= 0");
    if (!(m >= 0)) throw ValidationError("memory must be >= 0");
}

}  // namespace

Bits r_ach(const OperatingPoint& p, double m) {
    check_point(p, m);
    double cap = p.r0 + 2 * p.rho;
    if (m >= cap) return 0;
    if (m < 0.5 * p.rho) return p.r0 + 2 * p.rho - 2 * m;
    if (m < p.r0 + p.rho) return p.r0 + 1.5 * p.rho - m;
    double v = 0.5 * p.r0 + p.rho - 0.5 * m;
    return v < 0 ? 0 : v;
}

int r_ach_branch(const OperatingPoint& p, double m) {
    check_point(p, m);
    if (m > p.r0 + 2 * p.rho) return 0;
    if (m < 0.5 * p.rho) return 1;
    if (m < p.r0 + p.rho) return 2;
    return 3;
}

Bits r_ub_gw_u(const JointPmf2& j, const AuxChannel& a, double m) {
    if (!(m >= 0)) throw ValidationError("memory must be >= 0");
    double sd = symmetry_defect(j, a);
    if (sd > 1e-9)
        throw ValidationError("r_ub_gw_u: channel is not conditionally symmetric (defect " +
                              std::to_string(sd) + ")");
    RateTriplet c = gw_corner(j, a);
    return r_ach({c.r0, std::max(c.r1, c.r2)}, m);
}

PlanePoint r_ub_gw_dsbs(double p0, double m) {
    if (!(p0 > 0.0 && p0 <= 0.5)) throw ValidationError("r_ub_gw_dsbs: p0 outside (0, 1/2]");
    if (!(m >= 0)) throw ValidationError("memory must be >= 0");
    auto f = [&](double rho) { return r_ach({dsbs_r0_boundary(rho, p0), rho}, m); };
    // Grid scan to bracket the global minimum, then golden-section refinement.
    // The objective is continuous and piecewise smooth in rho; branch and
    // boundary kinks can create several local minima, which the scan straddles.
    const int n = 1000;
    double best_rho = 0, best = f(0);
    for (int k = 1; k <= n; ++k) {
        double rho = static_cast<double>(k) / n;
        double v = f(rho);
        if (v < best) {
            best = v;
            best_rho = rho;
        }
    }
    double lo = std::max(0.0, best_rho - 1.0 / n);
    double hi = std::min(1.0, best_rho + 1.0 / n);
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = hi - gr * (hi - lo), d = lo + gr * (hi - lo);
    double fc = f(c), fd = f(d);
    while (hi - lo > 1e-12) {
        if (fc < fd) {
            hi = d;
            d = c;
            fd = fc;
            c = hi - gr * (hi - lo);
            fc = f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + gr * (hi - lo);
            fd = f(d);
        }
    }
    double rho = (lo + hi) / 2;
    double v = f(rho);
    if (best < v) {
        v = best;
        rho = best_rho;
    }
    return {v, rho};
}

Bits baseline_lfu_um(const JointPmf2& j, double m) {
    if (!(m >= 0)) throw ValidationError("memory must be >= 0");
    return std::max(joint_measures(j).h12 - m, 0.0);
}

Bits baseline_tc(const JointPmf2& j, double m) {
    if (!(m >= 0)) throw ValidationError("memory must be >= 0");
    JointMeasures jm = joint_measures(j);
    if (std::abs(jm.h1 - jm.h2) > 1e-9)
        throw ValidationError("baseline_tc: closed form needs H(X1) = H(X2)");
    double f = jm.h1;
    if (f <= 0) return 0;
    return f * std::max({2 - 2 * m / f, 1.5 - m / f, 1 - m / (2 * f), 0.0});
}

CornerGapReport corner_gap_report(const JointPmf2& j, const AuxChannel& a,
                                  const std::vector<double>& m_grid) {
    CornerGapReport rep;
    rep.markov_defect = markov_defect(j, a);
    rep.symmetry_defect = j.n1() == j.n2() ? symmetry_defect(j, a) : 1.0;
    rep.qualifying = rep.markov_defect <= 1e-9 && rep.symmetry_defect <= 1e-9;
    RateTriplet c = gw_corner(j, a);
    OperatingPoint p{c.r0, std::max(c.r1, c.r2)};
    for (double m : m_grid) {
        double gap = std::abs(r_ach(p, m) - r_lb_gw_u(j, a, m));
        if (gap > rep.sup_gap) rep.sup_gap = gap;
    }
    return rep;
}

}  // namespace gwcache
