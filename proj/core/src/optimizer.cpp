#include "gwcache/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "gwcache/achievable.hpp"
#include "gwcache/gray_wyner.hpp"
#include "gwcache/info.hpp"
#include "gwcache/rng.hpp"

namespace gwcache {

namespace {

double xlog2(double p) { return p > 0 ? p * std::log2(p) : 0.0; }

double dist_entropy(const double* p, int n) {
    double h = 0;
    for (int i = 0; i < n; ++i) h -= xlog2(p[i]);
    return h;
}

struct Measures {
    double i = 0, h1 = 0, h2 = 0;
};

double objective_value(const Measures& ms, const Objective& obj) {
    switch (obj.kind) {
        case ObjectiveKind::MinRLbGwU: {
            double s = ms.i + ms.h1 + ms.h2;
            return std::max({0.0, s - 2 * obj.m, (s - obj.m) / 2,
                             ms.i + ms.h1 + ms.h2 / 2 - obj.m, ms.i + ms.h2 + ms.h1 / 2 - obj.m});
        }
        case ObjectiveKind::MaxHalfMinCondEntropy:
            return 0.5 * std::min(ms.h1, ms.h2);
        case ObjectiveKind::MinRUbGwU:
            return r_ach({ms.i, std::max(ms.h1, ms.h2)}, obj.m);
        case ObjectiveKind::MinCornerExcess:
            return std::max(ms.i - obj.target.r0, 0.0) + std::max(ms.h1 - obj.target.r1, 0.0) +
                   std::max(ms.h2 - obj.target.r2, 0.0);
    }
    throw ValidationError("unknown objective kind");
}

// Parameter layout. Free: one simplex over u per source pair, column-major
// (block c holds p(.|pair c)). Markov: p(u), then n1-simplices p(x1|u) for each
// u, then n2-simplices p(x2|u). MarkovSymmetric: p(u), then one shared
// n-simplex per u.
struct Layout {
    ParamMode mode;
    int nu, n1, n2, cols, dim;
    std::vector<int> block_off, block_len;

    Layout(ParamMode m, int nu_, int n1_, int n2_) : mode(m), nu(nu_), n1(n1_), n2(n2_) {
        cols = n1 * n2;
        auto add = [&](int len) {
            block_off.push_back(dim);
            block_len.push_back(len);
            dim += len;
        };
        dim = 0;
        if (mode == ParamMode::Free) {
            for (int c = 0; c < cols; ++c) add(nu);
        } else {
            add(nu);
            int reps = mode == ParamMode::Markov ? 2 : 1;
            for (int r = 0; r < reps; ++r)
                for (int u = 0; u < nu; ++u) add(r == 0 ? n1 : n2);
        }
    }
};

// Objective + penalty evaluation with preallocated scratch space.
struct Eval {
    const JointPmf2& j;
    const Layout& lay;
    Objective obj;
    double sign;  // +1 minimize, -1 maximize
    double hj;
    std::vector<double> pu, q1, q2, pxy;

    Eval(const JointPmf2& j_, const Layout& l, const Objective& o, double sign_)
        : j(j_), lay(l), obj(o), sign(sign_), hj(entropy(j_.data())) {
        pu.resize(lay.nu);
        q1.resize(static_cast<size_t>(lay.nu) * lay.n1);
        q2.resize(static_cast<size_t>(lay.nu) * lay.n2);
        pxy.resize(lay.cols);
    }

    Measures measures_free(const std::vector<double>& x) {
        int nu = lay.nu, n1 = lay.n1, n2 = lay.n2;
        std::fill(pu.begin(), pu.end(), 0.0);
        std::fill(q1.begin(), q1.end(), 0.0);
        std::fill(q2.begin(), q2.end(), 0.0);
        double hq = 0;
        for (int x1 = 0; x1 < n1; ++x1)
            for (int x2 = 0; x2 < n2; ++x2) {
                int c = x1 * n2 + x2;
                double jp = j.at_index(c);
                if (jp <= 0) continue;
                const double* col = x.data() + static_cast<size_t>(c) * nu;
                for (int u = 0; u < nu; ++u) {
                    double v = col[u] * jp;
                    if (v <= 0) continue;
                    hq -= xlog2(v);
                    pu[u] += v;
                    q1[static_cast<size_t>(u) * n1 + x1] += v;
                    q2[static_cast<size_t>(u) * n2 + x2] += v;
                }
            }
        double hu = dist_entropy(pu.data(), nu);
        Measures ms;
        ms.h1 = std::max(dist_entropy(q1.data(), nu * n1) - hu, 0.0);
        ms.h2 = std::max(dist_entropy(q2.data(), nu * n2) - hu, 0.0);
        ms.i = std::max(hj - (hq - hu), 0.0);
        return ms;
    }

    Measures measures_markov(const std::vector<double>& x) {
        int nu = lay.nu, n1 = lay.n1, n2 = lay.n2;
        bool shared = lay.mode == ParamMode::MarkovSymmetric;
        std::fill(pxy.begin(), pxy.end(), 0.0);
        Measures ms;
        for (int u = 0; u < nu; ++u) {
            double w = x[u];
            const double* a1 = x.data() + lay.block_off[1 + u];
            const double* a2 = shared ? a1 : x.data() + lay.block_off[1 + nu + u];
            ms.h1 += w * dist_entropy(a1, n1);
            ms.h2 += w * dist_entropy(a2, n2);
            if (w <= 0) continue;
            for (int x1 = 0; x1 < n1; ++x1) {
                double wa = w * a1[x1];
                if (wa <= 0) continue;
                for (int x2 = 0; x2 < n2; ++x2) pxy[x1 * n2 + x2] += wa * a2[x2];
            }
        }
        ms.i = std::max(dist_entropy(pxy.data(), lay.cols) - ms.h1 - ms.h2, 0.0);
        return ms;
    }

    // Total variation between the parameterized joint and the target; zero by
    // construction in Free mode. Call after measures_markov filled pxy.
    double tv_from_pxy() const {
        double s = 0;
        for (int c = 0; c < lay.cols; ++c) s += std::abs(pxy[c] - j.at_index(c));
        return 0.5 * s;
    }

    double penalty_from_pxy() const {
        double s = 0;
        for (int c = 0; c < lay.cols; ++c) {
            double d = pxy[c] - j.at_index(c);
            s += d * d;
        }
        return s;
    }

    double f(const std::vector<double>& x, double weight) {
        if (lay.mode == ParamMode::Free) return sign * objective_value(measures_free(x), obj);
        Measures ms = measures_markov(x);
        return sign * objective_value(ms, obj) + weight * penalty_from_pxy();
    }
};

// Euclidean projection of one block onto the probability simplex.
void project_block(double* z, int n, std::vector<double>& scratch) {
    scratch.assign(z, z + n);
    std::sort(scratch.begin(), scratch.end(), std::greater<>());
    double csum = 0, tau = 0;
    int k = 0;
    for (int i = 0; i < n; ++i) {
        csum += scratch[i];
        double t = (csum - 1.0) / (i + 1);
        if (scratch[i] - t > 0) {
            k = i + 1;
            tau = t;
        }
    }
    (void)k;
    for (int i = 0; i < n; ++i) z[i] = std::max(z[i] - tau, 0.0);
}

void project(std::vector<double>& x, const Layout& lay, std::vector<double>& scratch) {
    for (size_t b = 0; b < lay.block_off.size(); ++b)
        project_block(x.data() + lay.block_off[b], lay.block_len[b], scratch);
}

// Seed channel -> parameter vector (exact when the mode can represent the
// channel, otherwise the closest structured warm start).
std::vector<double> params_from_channel(const JointPmf2& j, const Layout& lay,
                                        const AuxChannel& ch) {
    std::vector<double> x(lay.dim, 0.0);
    int nu = lay.nu, n1 = lay.n1, n2 = lay.n2, cols = lay.cols;
    if (lay.mode == ParamMode::Free) {
        for (int c = 0; c < cols; ++c)
            for (int u = 0; u < ch.nu(); ++u) x[static_cast<size_t>(c) * nu + u] = ch.p(u, c);
        return x;
    }
    std::vector<double> pu(nu, 0.0);
    std::vector<double> m1(static_cast<size_t>(nu) * n1, 0.0);
    std::vector<double> m2(static_cast<size_t>(nu) * n2, 0.0);
    for (int u = 0; u < ch.nu(); ++u)
        for (int x1 = 0; x1 < n1; ++x1)
            for (int x2 = 0; x2 < n2; ++x2) {
                double v = ch.p(u, x1 * n2 + x2) * j.at_index(x1 * n2 + x2);
                pu[u] += v;
                m1[static_cast<size_t>(u) * n1 + x1] += v;
                m2[static_cast<size_t>(u) * n2 + x2] += v;
            }
    bool shared = lay.mode == ParamMode::MarkovSymmetric;
    for (int u = 0; u < nu; ++u) {
        x[u] = pu[u];
        double* a1 = x.data() + lay.block_off[1 + u];
        if (pu[u] > 1e-300) {
            if (shared) {
                for (int s = 0; s < n1; ++s)
                    a1[s] = 0.5 * (m1[static_cast<size_t>(u) * n1 + s] +
                                   m2[static_cast<size_t>(u) * n1 + s]) /
                            pu[u];
            } else {
                for (int s = 0; s < n1; ++s) a1[s] = m1[static_cast<size_t>(u) * n1 + s] / pu[u];
                double* a2 = x.data() + lay.block_off[1 + nu + u];
                for (int s = 0; s < n2; ++s) a2[s] = m2[static_cast<size_t>(u) * n2 + s] / pu[u];
            }
        } else {
            double* a1u = a1;
            for (int s = 0; s < n1; ++s) a1u[s] = 1.0 / n1;
            if (!shared) {
                double* a2 = x.data() + lay.block_off[1 + nu + u];
                for (int s = 0; s < n2; ++s) a2[s] = 1.0 / n2;
            }
        }
    }
    return x;
}

// Parameter vector -> channel p(u|x1,x2). Markov modes invert the parameterized
// joint by Bayes, with uniform columns where it puts no mass.
AuxChannel channel_from_params(const Layout& lay, const std::vector<double>& x) {
    int nu = lay.nu, cols = lay.cols, n1 = lay.n1, n2 = lay.n2;
    std::vector<double> w(static_cast<size_t>(nu) * cols);
    if (lay.mode == ParamMode::Free) {
        for (int c = 0; c < cols; ++c)
            for (int u = 0; u < nu; ++u) w[static_cast<size_t>(u) * cols + c] = x[static_cast<size_t>(c) * nu + u];
        return AuxChannel(nu, cols, std::move(w));
    }
    bool shared = lay.mode == ParamMode::MarkovSymmetric;
    std::vector<double> q(static_cast<size_t>(nu) * cols, 0.0);
    std::vector<double> pxy(cols, 0.0);
    for (int u = 0; u < nu; ++u) {
        const double* a1 = x.data() + lay.block_off[1 + u];
        const double* a2 = shared ? a1 : x.data() + lay.block_off[1 + nu + u];
        for (int x1 = 0; x1 < n1; ++x1)
            for (int x2 = 0; x2 < n2; ++x2) {
                double v = x[u] * a1[x1] * a2[x2];
                q[static_cast<size_t>(u) * cols + x1 * n2 + x2] = v;
                pxy[x1 * n2 + x2] += v;
            }
    }
    for (int c = 0; c < cols; ++c)
        for (int u = 0; u < nu; ++u)
            w[static_cast<size_t>(u) * cols + c] =
                pxy[c] > 1e-300 ? q[static_cast<size_t>(u) * cols + c] / pxy[c] : 1.0 / nu;
    return AuxChannel(nu, cols, std::move(w));
}

bool dsbs_like(const JointPmf2& j, double& p0) {
    if (j.n1() != 2 || j.n2() != 2) return false;
    if (std::abs(j.at(0, 1) - j.at(1, 0)) > 1e-12) return false;
    if (std::abs(j.at(0, 0) - j.at(1, 1)) > 1e-12) return false;
    p0 = j.at(0, 1) + j.at(1, 0);
    return p0 <= 0.5 + 1e-12;
}

// Common part of the pair: connected components of the bipartite support graph.
// Each component is a value of a variable computable from X1 alone and from X2
// alone; extracting it is the natural zero-defect channel when the pair has
// shared structure.
AuxChannel common_part_channel(const JointPmf2& j, int& ncomp) {
    int n1 = j.n1(), n2 = j.n2();
    std::vector<int> parent(n1 + n2);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    };
    for (int x1 = 0; x1 < n1; ++x1)
        for (int x2 = 0; x2 < n2; ++x2)
            if (j.at(x1, x2) > 1e-15) parent[find(x1)] = find(n1 + x2);
    std::vector<double> mg1 = j.marginal1(), mg2 = j.marginal2();
    std::vector<int> comp(n1 + n2, -1);
    ncomp = 0;
    for (int v = 0; v < n1 + n2; ++v) {
        bool live = v < n1 ? mg1[v] > 1e-15 : mg2[v - n1] > 1e-15;
        if (!live) continue;
        int r = find(v);
        if (comp[r] < 0) comp[r] = ncomp++;
        comp[v] = comp[r];
    }
    int nu = std::max(ncomp, 1);
    std::vector<double> w(static_cast<size_t>(nu) * n1 * n2, 0.0);
    for (int x1 = 0; x1 < n1; ++x1)
        for (int x2 = 0; x2 < n2; ++x2) {
            int u = comp[x1] >= 0 ? comp[x1] : (comp[n1 + x2] >= 0 ? comp[n1 + x2] : 0);
            w[static_cast<size_t>(u) * n1 * n2 + x1 * n2 + x2] = 1.0;
        }
    return AuxChannel(nu, n1 * n2, std::move(w));
}

struct Candidate {
    double value = 0;
    AuxChannel ch;
    std::string kind;
    bool ok = false;
};

}  // namespace

std::string objective_name(const Objective& obj) {
    switch (obj.kind) {
        case ObjectiveKind::MinRLbGwU: return "min_r_lb_gw_u";
        case ObjectiveKind::MaxHalfMinCondEntropy: return "max_half_min_cond_entropy";
        case ObjectiveKind::MinRUbGwU: return "min_r_ub_gw_u";
        case ObjectiveKind::MinCornerExcess: return "min_corner_excess";
    }
    return "unknown";
}

std::vector<SeededWitness> seeded_witnesses(const JointPmf2& j, ParamMode mode, int nu) {
    int cols = j.size();
    std::vector<SeededWitness> out;
    auto add = [&](std::string kind, AuxChannel ch) {
        if (ch.nu() <= nu) out.push_back({std::move(kind), std::move(ch)});
    };
    add("constant", AuxChannel::constant(cols));
    if (mode != ParamMode::MarkovSymmetric) add("identity-pair", AuxChannel::identity_pair(cols));
    double p0 = 0;
    if (dsbs_like(j, p0)) add("wyner", wyner_aux_dsbs(std::min(p0, 0.5), dsbs_p1(std::min(p0, 0.5))));
    int ncomp = 0;
    AuxChannel cp = common_part_channel(j, ncomp);
    if (ncomp >= 2) {
        bool keep = true;
        if (mode == ParamMode::MarkovSymmetric)
            keep = j.n1() == j.n2() && symmetry_defect(j, cp) <= 1e-9;
        if (keep) add("common-part", std::move(cp));
    }
    return out;
}

OptResult optimize(const JointPmf2& j, const Objective& obj, ParamMode mode,
                   const OptimizerConfig& cfg, bool maximize) {
    if (cfg.restarts < 1) throw ValidationError("optimizer: restarts must be >= 1");
    if (cfg.max_iters < 1) throw ValidationError("optimizer: max_iters must be >= 1");
    if (!(cfg.step0 > 0)) throw ValidationError("optimizer: step0 must be > 0");
    int cols = j.size();
    int nu = cfg.nu == 0 ? cols + 2 : cfg.nu;
    if (nu < 1 || nu > cols + 2)
        throw ValidationError("optimizer: nu must be in [1, n1*n2 + 2]");
    if (mode == ParamMode::MarkovSymmetric && j.n1() != j.n2())
        throw ValidationError("optimizer: symmetric mode needs equal alphabets");
    if ((obj.kind == ObjectiveKind::MinRLbGwU || obj.kind == ObjectiveKind::MinRUbGwU) &&
        !(obj.m >= 0))
        throw ValidationError("optimizer: memory must be >= 0");

    Layout lay(mode, nu, j.n1(), j.n2());
    Eval ev(j, lay, obj, maximize ? -1.0 : 1.0);
    std::vector<double> scratch;

    OptResult res;
    Candidate best;

    auto public_value = [&](const AuxChannel& ch) {
        RateTriplet c = gw_corner(j, ch);
        return objective_value({c.r0, c.r1, c.r2}, obj);
    };
    auto assess = [&](const AuxChannel& ch, double tv, std::string kind) {
        Candidate cand;
        cand.ch = ch;
        cand.kind = std::move(kind);
        cand.ok = tv <= cfg.pmf_match_tol &&
                  (mode == ParamMode::Free || markov_defect(j, ch) <= cfg.markov_tol);
        cand.value = public_value(ch);
        return cand;
    };
    auto consider = [&](const Candidate& cand) {
        if (!cand.ok) return;
        if (!best.ok) {
            best = cand;
            return;
        }
        double a = maximize ? -cand.value : cand.value;
        double b = maximize ? -best.value : best.value;
        if (a < b || (a == b && cand.ch.data() < best.ch.data())) best = cand;
    };

    // One restart: penalty rounds of monotone projected descent. Free mode has
    // no constraint to penalize and runs a single round.
    auto polish = [&](std::vector<double> x, int& iters_out) {
        double weight = mode == ParamMode::Free ? 0.0 : 10.0;
        int iters = 0;
        std::vector<double> g(lay.dim), xt(lay.dim);
        for (int round = 0; round < 10; ++round) {
            double step = cfg.step0;
            double fcur = ev.f(x, weight);
            for (int it = 0; it < cfg.max_iters; ++it) {
                for (int k = 0; k < lay.dim; ++k) {
                    const double h = 1e-6;
                    double keep = x[k];
                    x[k] = keep + h;
                    double fp = ev.f(x, weight);
                    x[k] = keep - h;
                    double fm = ev.f(x, weight);
                    x[k] = keep;
                    g[k] = (fp - fm) / (2 * h);
                }
                bool improved = false;
                double fnew = fcur;
                while (step >= 1e-9) {
                    for (int k = 0; k < lay.dim; ++k) xt[k] = x[k] - step * g[k];
                    project(xt, lay, scratch);
                    fnew = ev.f(xt, weight);
                    if (fnew < fcur) {
                        improved = true;
                        break;
                    }
                    step *= 0.5;
                }
                if (!improved) break;
                x.swap(xt);
                ++iters;
                double delta = fcur - fnew;
                fcur = fnew;
                if (delta < cfg.value_tol) break;
            }
            if (mode == ParamMode::Free) break;
            ev.measures_markov(x);
            if (ev.tv_from_pxy() <= 0.1 * cfg.pmf_match_tol) break;
            weight *= 10;
        }
        iters_out = iters;
        return x;
    };

    std::vector<SeededWitness> seeds = seeded_witnesses(j, mode, nu);

    // Raw seeds first: exact constructions must never be lost to the descent.
    for (const auto& s : seeds) {
        Candidate cand = assess(s.channel, 0.0, s.kind);
        consider(cand);
        res.trace.push_back({-1, "seed-raw:" + s.kind, cand.ok ? cand.value : std::numeric_limits<double>::quiet_NaN(), cand.ok, 0});
    }

    for (int r = 0; r < cfg.restarts; ++r) {
        std::string init;
        std::vector<double> x0;
        if (r < static_cast<int>(seeds.size())) {
            init = "seed:" + seeds[r].kind;
            x0 = params_from_channel(j, lay, seeds[r].channel);
        } else {
            init = "random";
            std::mt19937_64 eng = stream_engine(cfg.seed, static_cast<std::uint64_t>(r));
            x0.resize(lay.dim);
            for (size_t b = 0; b < lay.block_off.size(); ++b) {
                double sum = 0;
                double* blk = x0.data() + lay.block_off[b];
                for (int i = 0; i < lay.block_len[b]; ++i) {
                    blk[i] = -std::log((static_cast<double>(eng() >> 11) + 1.0) * 0x1p-53);
                    sum += blk[i];
                }
                for (int i = 0; i < lay.block_len[b]; ++i) blk[i] /= sum;
            }
        }
        int iters = 0;
        std::vector<double> x = polish(std::move(x0), iters);
        double tv = 0;
        if (mode != ParamMode::Free) {
            ev.measures_markov(x);
            tv = ev.tv_from_pxy();
        }
        Candidate cand = assess(channel_from_params(lay, x), tv, init + "+descent");
        consider(cand);
        res.trace.push_back({r, init, cand.ok ? cand.value : std::numeric_limits<double>::quiet_NaN(), cand.ok, iters});
    }

    if (best.ok) {
        res.value = best.value;
        res.witness = best.ch;
        res.witness_kind = best.kind;
        res.feasible = true;
    } else {
        res.witness = AuxChannel::constant(cols);
        res.witness_kind = "constant";
        res.value = public_value(res.witness);
        res.feasible = false;
    }
    return res;
}

}  // namespace gwcache
