#include "gwcache/gray_wyner.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace gwcache {

namespace {

double xlog2(double p) { return p > 0 ? p * std::log2(p) : 0.0; }

// Induced joint q(u, x1, x2) = p(u | x1, x2) p(x1, x2), stored u-major over the
// pair columns, plus the U marginal.
struct Induced {
    int nu = 0, cols = 0;
    std::vector<double> q;
    std::vector<double> pu;
};

Induced induce(const JointPmf2& j, const AuxChannel& a) {
    if (a.cols() != j.size())
        throw ValidationError("aux channel has " + std::to_string(a.cols()) +
                              " columns, pmf has " + std::to_string(j.size()) + " symbols");
    Induced r;
    r.nu = a.nu();
    r.cols = a.cols();
    r.q.resize(static_cast<size_t>(r.nu) * r.cols);
    r.pu.assign(r.nu, 0.0);
    for (int u = 0; u < r.nu; ++u)
        for (int c = 0; c < r.cols; ++c) {
            double v = a.p(u, c) * j.at_index(c);
            r.q[static_cast<size_t>(u) * r.cols + c] = v;
            r.pu[u] += v;
        }
    return r;
}

double raw_entropy(const std::vector<double>& p) {
    double h = 0;
    for (double v : p) h -= xlog2(v);
    return h;
}

// (I(X1,X2;U), H(X1|U), H(X2|U), H(X1,X2|U)) from the induced joint.
struct CornerMeasures {
    double i, h1, h2, h12u;
};

CornerMeasures corner_measures(const JointPmf2& j, const Induced& in) {
    int n1 = j.n1(), n2 = j.n2();
    double hu = raw_entropy(in.pu);
    double hq = 0;
    std::vector<double> q1(static_cast<size_t>(in.nu) * n1, 0.0);
    std::vector<double> q2(static_cast<size_t>(in.nu) * n2, 0.0);
    for (int u = 0; u < in.nu; ++u)
        for (int x1 = 0; x1 < n1; ++x1)
            for (int x2 = 0; x2 < n2; ++x2) {
                double v = in.q[static_cast<size_t>(u) * in.cols + x1 * n2 + x2];
                hq -= xlog2(v);
                q1[static_cast<size_t>(u) * n1 + x1] += v;
                q2[static_cast<size_t>(u) * n2 + x2] += v;
            }
    CornerMeasures m{};
    m.h12u = hq - hu;
    m.h1 = raw_entropy(q1) - hu;
    m.h2 = raw_entropy(q2) - hu;
    double hj = raw_entropy(j.data());
    m.i = hj - m.h12u;
    if (m.i < 0) m.i = 0;
    if (m.h1 < 0) m.h1 = 0;
    if (m.h2 < 0) m.h2 = 0;
    if (m.h12u < 0) m.h12u = 0;
    return m;
}

// Channel p(u | x1, x2) from a full joint over (u, pair): Bayes against the pair
// marginal, uniform on zero-probability pairs.
AuxChannel channel_from_joint(int nu, int cols, const std::vector<double>& q) {
    std::vector<double> pxy(cols, 0.0);
    for (int u = 0; u < nu; ++u)
        for (int c = 0; c < cols; ++c) pxy[c] += q[static_cast<size_t>(u) * cols + c];
    std::vector<double> w(static_cast<size_t>(nu) * cols);
    for (int c = 0; c < cols; ++c)
        for (int u = 0; u < nu; ++u)
            w[static_cast<size_t>(u) * cols + c] =
                pxy[c] > 1e-300 ? q[static_cast<size_t>(u) * cols + c] / pxy[c] : 1.0 / nu;
    return AuxChannel(nu, cols, std::move(w));
}

}  // namespace

RateTriplet gw_corner(const JointPmf2& j, const AuxChannel& a) {
    Induced in = induce(j, a);
    CornerMeasures m = corner_measures(j, in);
    return {m.i, m.h1, m.h2};
}

bool in_region(const RateTriplet& t, const JointPmf2& j, const AuxChannel& a, double tol) {
    RateTriplet c = gw_corner(j, a);
    return t.r0 >= c.r0 - tol && t.r1 >= c.r1 - tol && t.r2 >= c.r2 - tol;
}

Bits markov_defect(const JointPmf2& j, const AuxChannel& a) {
    Induced in = induce(j, a);
    CornerMeasures m = corner_measures(j, in);
    double d = m.h1 + m.h2 - m.h12u;
    return d < 0 ? 0 : d;
}

double symmetry_defect(const JointPmf2& j, const AuxChannel& a) {
    if (j.n1() != j.n2())
        throw ValidationError("symmetry_defect: requires equal alphabets");
    Induced in = induce(j, a);
    int n = j.n1();
    double worst = 0;
    for (int u = 0; u < in.nu; ++u) {
        if (in.pu[u] <= 1e-300) continue;
        for (int x = 0; x < n; ++x) {
            double m1 = 0, m2 = 0;
            for (int y = 0; y < n; ++y) {
                m1 += in.q[static_cast<size_t>(u) * in.cols + x * n + y];
                m2 += in.q[static_cast<size_t>(u) * in.cols + y * n + x];
            }
            double d = std::abs(m1 - m2) / in.pu[u];
            if (d > worst) worst = d;
        }
    }
    return worst;
}

double dsbs_p1(double p0) {
    if (!(p0 >= 0.0 && p0 <= 0.5)) throw ValidationError("dsbs_p1: p0 outside [0, 1/2]");
    return (1.0 - std::sqrt(1.0 - 2.0 * p0)) / 2.0;
}

AuxChannel wyner_aux_dsbs(double p0, double a, bool require_markov) {
    if (!(p0 >= 0.0 && p0 <= 0.5)) throw ValidationError("wyner_aux_dsbs: p0 outside [0, 1/2]");
    if (!(a >= 0.0 && a <= 0.5)) throw ValidationError("wyner_aux_dsbs: a outside [0, 1/2]");
    if (require_markov && std::abs(2 * a * (1 - a) - p0) > 1e-9)
        throw ValidationError("wyner_aux_dsbs: 2a(1-a) != p0, construction not Markov for this pair");
    // q(u, x1, x2) = 1/2 Bern_a(x1 xor u) Bern_a(x2 xor u)
    std::vector<double> q(8);
    for (int u = 0; u < 2; ++u)
        for (int x1 = 0; x1 < 2; ++x1)
            for (int x2 = 0; x2 < 2; ++x2) {
                double z1 = (x1 ^ u) ? a : 1 - a;
                double z2 = (x2 ^ u) ? a : 1 - a;
                q[static_cast<size_t>(u) * 4 + x1 * 2 + x2] = 0.5 * z1 * z2;
            }
    return channel_from_joint(2, 4, q);
}

AuxChannel dsbs_plane_aux(double p0, double rho) {
    if (!(p0 > 0.0 && p0 <= 0.5)) throw ValidationError("dsbs_plane_aux: p0 outside (0, 1/2]");
    double p1 = dsbs_p1(p0);
    double hp1 = binary_entropy(p1);
    if (!(rho >= hp1 - 1e-12 && rho <= 1.0))
        throw ValidationError("dsbs_plane_aux: rho outside [h(p1), 1]");
    double qz = binary_entropy_inv(rho);
    double c = p0 / 2;
    // (Z1, Z2) pmf: disagreement mass p0, marginal bias qz; all entries must be
    // nonnegative, which holds on the admissible rho range.
    double z11 = qz - c, z00 = 1 - qz - c;
    if (z11 < -1e-12 || z00 < -1e-12)
        throw ValidationError("dsbs_plane_aux: noise pmf infeasible at this (p0, rho)");
    if (z11 < 0) z11 = 0;
    if (z00 < 0) z00 = 0;
    double pz[2][2] = {{z00, c}, {c, z11}};
    std::vector<double> q(8);
    for (int u = 0; u < 2; ++u)
        for (int x1 = 0; x1 < 2; ++x1)
            for (int x2 = 0; x2 < 2; ++x2)
                q[static_cast<size_t>(u) * 4 + x1 * 2 + x2] = 0.5 * pz[x1 ^ u][x2 ^ u];
    return channel_from_joint(2, 4, q);
}

Bits dsbs_r0_boundary(double rho, double p0) {
    if (!(rho >= 0.0 && rho <= 1.0)) throw ValidationError("dsbs_r0_boundary: rho outside [0, 1]");
    if (!(p0 >= 0.0 && p0 <= 0.5)) throw ValidationError("dsbs_r0_boundary: p0 outside [0, 1/2]");
    if (p0 == 0.0) {
        // Degenerate pair X1 = X2: one fair bit split between the common and
        // private streams; no mutual-information floor applies.
        return std::max(1.0 - rho, 0.0);
    }
    double hp0 = binary_entropy(p0);
    double p1 = dsbs_p1(p0);
    double hp1 = binary_entropy(p1);
    double v;
    if (rho < hp1) {
        v = 1 + hp0 - 2 * rho;
    } else {
        double qz = binary_entropy_inv(rho);
        double c = p0 / 2;
        if (qz - c < -1e-12)
            throw ValidationError("dsbs_r0_boundary: inverse-entropy point below p0/2");
        v = 1 + hp0 + xlog2(qz - c) + p0 * std::log2(c) + xlog2(1 - qz - c);
    }
    // The curve never drops below the pair's mutual information: a common stream
    // carrying less than I(X1;X2) cannot support private rates as low as rho on
    // this slice. Flooring keeps the value an admissible-region boundary and
    // pins the rho = 1 endpoint at I(X1;X2).
    return std::max(v, 1 - hp0);
}

}  // namespace gwcache
