#include "commands.hpp"

#include "svg.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "gwcache/achievable.hpp"
#include "gwcache/bounds.hpp"
#include "gwcache/gray_wyner.hpp"
#include "gwcache/info.hpp"
#include "gwcache/json_io.hpp"
#include "gwcache/simulator.hpp"
#include "gwcache/types.hpp"

using nlohmann::json;

namespace gwcache::cli {

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

json source_json(const SourceOpt& src, const JointPmf2& j) {
    if (src.is_dsbs()) return {{"kind", "dsbs"}, {"p0", src.p0}};
    json out = json::parse(pmf_to_json(j));
    out["kind"] = "pmf";
    return out;
}

json witness_json(const AuxChannel& a) { return json::parse(aux_to_json(a)); }

json interval_json(const Interval& iv) { return {{"lo", iv.lo}, {"hi", iv.hi}}; }

json corner_json(const RateTriplet& t) { return {{"r0", t.r0}, {"r1", t.r1}, {"r2", t.r2}}; }

OptimizerConfig make_cfg(int restarts, std::uint64_t seed, int nu = 0) {
    OptimizerConfig cfg;
    cfg.restarts = restarts;
    cfg.seed = seed;
    if (nu > 0) cfg.nu = nu;
    return cfg;
}

std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

// Symmetric channels usable as scheme operating points for a general square
// pmf: the structured seeds, optionally improved by the optimizer at one m.
std::vector<AuxChannel> symmetric_pool(const JointPmf2& j) {
    std::vector<AuxChannel> pool;
    if (j.n1() != j.n2()) return pool;
    for (const SeededWitness& s :
         seeded_witnesses(j, ParamMode::MarkovSymmetric, j.n1() * j.n2() + 2))
        if (symmetry_defect(j, s.channel) <= 1e-9) pool.push_back(s.channel);
    return pool;
}

std::optional<double> ub_gw_general(const JointPmf2& j, const std::vector<AuxChannel>& pool,
                                    double m, const OptimizerConfig& cfg) {
    std::optional<double> best;
    for (const AuxChannel& a : pool) {
        double v = r_ub_gw_u(j, a, m);
        if (!best || v < *best) best = v;
    }
    if (cfg.restarts >= 1 && j.n1() == j.n2()) {
        OptResult res = optimize(j, {ObjectiveKind::MinRUbGwU, m, {}}, ParamMode::MarkovSymmetric,
                                 cfg);
        if (res.feasible && (!best || res.value < *best)) best = res.value;
    }
    return best;
}

}  // namespace

JointPmf2 SourceOpt::load() const {
    if (is_dsbs()) return dsbs(p0);
    return pmf_from_json(read_file(pmf_path));
}

GridSpec GridSpec::parse(const std::string& text) {
    GridSpec g;
    double* slot[3] = {&g.start, &g.stop, &g.step};
    size_t pos = 0;
    for (int i = 0; i < 3; ++i) {
        size_t colon = i < 2 ? text.find(':', pos) : text.size();
        if (colon == std::string::npos) throw ValidationError("grid must be start:stop:step");
        std::string part = text.substr(pos, colon - pos);
        size_t used = 0;
        try {
            *slot[i] = std::stod(part, &used);
        } catch (const std::exception&) {
            throw ValidationError("grid must be start:stop:step");
        }
        if (used != part.size()) throw ValidationError("grid must be start:stop:step");
        pos = colon + 1;
    }
    if (!(g.step > 0)) throw ValidationError("grid step must be > 0");
    if (!(g.start >= 0)) throw ValidationError("grid start must be >= 0");
    if (g.stop < g.start) throw ValidationError("grid stop must be >= start");
    return g;
}

std::vector<double> GridSpec::points() const {
    std::vector<double> pts;
    for (int k = 0;; ++k) {
        double m = start + k * step;
        if (m > stop + 1e-9) break;
        pts.push_back(m);
    }
    return pts;
}

std::vector<SweepRow> run_sweep(const SweepOptions& opt) {
    JointPmf2 j = opt.source.load();
    JointMeasures jm = joint_measures(j);

    bool want[5] = {};
    const char* names[5] = {"lb", "lb_gw", "ub_gw", "tc", "lfu_um"};
    if (opt.curves.empty()) throw ValidationError("sweep: no curves selected");
    for (const std::string& c : opt.curves) {
        bool known = false;
        for (int i = 0; i < 5; ++i)
            if (c == names[i]) want[i] = known = true;
        if (!known)
            throw ValidationError("sweep: unknown curve '" + c +
                                  "' (expected one of: lb, lb_gw, ub_gw, tc, lfu_um)");
    }

    GridSpec grid;
    if (opt.grid.empty()) {
        grid = {0.0, jm.h12, 0.01};
    } else {
        grid = GridSpec::parse(opt.grid);
        if (grid.stop > jm.h12 + grid.step + 1e-9)
            throw ValidationError("sweep: grid stop exceeds the joint entropy " + num(jm.h12));
    }
    std::vector<double> ms = grid.points();

    OptimizerConfig cfg = make_cfg(opt.restarts, opt.seed);
    std::vector<AuxChannel> pool = opt.source.is_dsbs() ? std::vector<AuxChannel>{}
                                                        : symmetric_pool(j);

    std::vector<SweepRow> rows(ms.size());
    std::atomic<size_t> next{0};
    std::mutex fail_mu;
    std::exception_ptr fail;

    auto compute = [&](size_t i) {
        SweepRow& row = rows[i];
        double m = ms[i];
        row.m = m;
        if (want[0]) row.lb = r_lb(j, m);
        if (want[1]) row.lb_gw = r_lb_gw(j, m, cfg).value;
        if (want[2]) {
            if (opt.source.is_dsbs())
                row.ub_gw = r_ub_gw_dsbs(opt.source.p0, m).value;
            else
                row.ub_gw = ub_gw_general(j, pool, m, cfg);
        }
        if (want[3]) row.tc = baseline_tc(j, m);
        if (want[4]) row.lfu_um = baseline_lfu_um(j, m);
    };

    unsigned hw = std::thread::hardware_concurrency();
    size_t nt = opt.threads > 0 ? static_cast<size_t>(opt.threads)
                                : std::clamp<size_t>(hw ? hw : 1, 1, 8);
    nt = std::min(nt, ms.size());
    if (nt <= 1) {
        for (size_t i = 0; i < ms.size(); ++i) compute(i);
    } else {
        auto worker = [&] {
            for (size_t i; (i = next.fetch_add(1)) < ms.size();) {
                try {
                    compute(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(fail_mu);
                    if (!fail) fail = std::current_exception();
                    return;
                }
            }
        };
        std::vector<std::thread> threads;
        for (size_t t = 0; t < nt; ++t) threads.emplace_back(worker);
        for (std::thread& t : threads) t.join();
        if (fail) std::rethrow_exception(fail);
    }
    return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
    auto cell = [](const std::optional<double>& v) { return v ? num(*v) : std::string(); };
    std::string out = "M,R_lb,R_lb_gw,R_ub_gw,R_tc,R_lfu_um\n";
    for (const SweepRow& r : rows)
        out += num(r.m) + "," + cell(r.lb) + "," + cell(r.lb_gw) + "," + cell(r.ub_gw) + "," +
               cell(r.tc) + "," + cell(r.lfu_um) + "\n";
    return out;
}

std::string sweep_svg(const std::vector<SweepRow>& rows) {
    struct Col {
        const char* name;
        const char* color;
        std::optional<double> SweepRow::*field;
    };
    const Col cols[5] = {
        {"R_lb", "#1f77b4", &SweepRow::lb},         {"R_lb_gw", "#2ca02c", &SweepRow::lb_gw},
        {"R_ub_gw", "#d62728", &SweepRow::ub_gw},   {"R_tc", "#9467bd", &SweepRow::tc},
        {"R_lfu_um", "#8c564b", &SweepRow::lfu_um},
    };
    std::vector<SvgSeries> series;
    for (const Col& c : cols) {
        SvgSeries s{c.name, c.color, {}};
        for (const SweepRow& r : rows)
            if (r.*c.field) s.pts.emplace_back(r.m, *(r.*c.field));
        if (!s.pts.empty()) series.push_back(std::move(s));
    }
    return render_chart(series, "M (bits / symbol)", "R (bits / symbol)");
}

std::string run_bounds(const BoundsOptions& opt) {
    JointPmf2 j = opt.source.load();
    JointMeasures jm = joint_measures(j);
    OptimizerConfig cfg = make_cfg(opt.restarts, opt.seed);

    ActiveBound ab = r_lb_active(j, opt.memory);
    BoundWitness lbgw = r_lb_gw(j, opt.memory, cfg);

    json out;
    out["memory"] = opt.memory;
    out["source"] = source_json(opt.source, j);
    out["measures"] = {{"h12", jm.h12}, {"h1", jm.h1}, {"h2", jm.h2}, {"i", jm.i}};
    out["r_lb"] = {{"value", ab.value}, {"active_index", ab.index}, {"active_label", ab.label}};
    out["r_lb_gw"] = {{"value", lbgw.value},
                      {"witness_kind", lbgw.witness_kind},
                      {"witness", witness_json(lbgw.witness)}};
    if (opt.source.is_dsbs()) {
        PlanePoint pp = r_ub_gw_dsbs(opt.source.p0, opt.memory);
        out["r_ub_gw"] = {{"value", pp.value}, {"rho", pp.rho}};
    } else {
        std::optional<double> ub = ub_gw_general(j, symmetric_pool(j), opt.memory, cfg);
        out["r_ub_gw"] = {{"value", ub ? json(*ub) : json()}};
    }
    json tc;
    try {
        tc = baseline_tc(j, opt.memory);
    } catch (const ValidationError&) {
        // unequal file entropies: the equal-size baseline does not apply
    }
    out["baselines"] = {{"lfu_um", baseline_lfu_um(j, opt.memory)}, {"tc", tc}};
    out["config"] = {{"restarts", opt.restarts}, {"seed", opt.seed}};
    return dump(out);
}

std::string run_achievable(const AchievableOptions& opt) {
    if (opt.r0.has_value() != opt.rho.has_value())
        throw ValidationError("achievable: --r0 and --rho go together");
    if (opt.r0 && !opt.aux_path.empty())
        throw ValidationError("achievable: give either --aux or --r0/--rho, not both");

    json out;
    out["memory"] = opt.memory;
    if (opt.r0) {
        OperatingPoint pt{*opt.r0, *opt.rho};
        out["mode"] = "operating_point";
        out["r0"] = pt.r0;
        out["rho"] = pt.rho;
        out["value"] = r_ach(pt, opt.memory);
        out["branch"] = r_ach_branch(pt, opt.memory);
        return dump(out);
    }

    JointPmf2 j = opt.source.load();
    if (!opt.aux_path.empty()) {
        AuxChannel a = aux_from_json(read_file(opt.aux_path));
        RateTriplet corner = gw_corner(j, a);
        out["mode"] = "corner";
        out["source"] = source_json(opt.source, j);
        out["corner"] = corner_json(corner);
        out["markov_defect"] = markov_defect(j, a);
        out["r_lb_gw_u"] = r_lb_gw_u(j, a, opt.memory);
        double sym = j.n1() == j.n2() ? symmetry_defect(j, a) : -1;
        out["symmetry_defect"] = sym >= 0 ? json(sym) : json();
        if (sym >= 0 && sym <= 1e-9) {
            out["value"] = r_ub_gw_u(j, a, opt.memory);
            out["branch"] = r_ach_branch({corner.r0, corner.r1}, opt.memory);
        } else {
            out["value"] = nullptr;
            out["branch"] = nullptr;
        }
        return dump(out);
    }

    if (!opt.source.is_dsbs())
        throw ValidationError("achievable: a pmf source needs --aux or --r0/--rho");
    PlanePoint pp = r_ub_gw_dsbs(opt.source.p0, opt.memory);
    out["mode"] = "dsbs_plane";
    out["source"] = source_json(opt.source, j);
    out["value"] = pp.value;
    out["rho"] = pp.rho;
    out["branch"] = r_ach_branch({dsbs_r0_boundary(pp.rho, opt.source.p0), pp.rho}, opt.memory);
    return dump(out);
}

std::string run_optimize(const OptimizeOptions& opt) {
    JointPmf2 j = opt.source.load();
    JointMeasures jm = joint_measures(j);
    OptimizerConfig cfg = make_cfg(opt.restarts, opt.seed, opt.nu);

    json out;
    out["objective"] = opt.objective;
    out["source"] = source_json(opt.source, j);
    out["config"] = {{"restarts", opt.restarts}, {"seed", opt.seed}, {"nu", cfg.nu}};

    if (opt.objective == "m1" || opt.objective == "m1-symmetric") {
        bool symmetric = opt.objective == "m1-symmetric";
        CoincidenceReport rep = m1(j, symmetric, cfg);
        double half_min = 0.5 * std::min(jm.h1g2, jm.h2g1);
        out["m1"] = rep.m1;
        out["intervals"] = {{"low", interval_json(rep.low)}, {"high", interval_json(rep.high)}};
        out["witness_kind"] = rep.witness_kind;
        out["witness"] = witness_json(rep.witness);
        out["markov_defect"] = rep.markov_defect;
        out["symmetric"] = rep.symmetric;
        out["half_min_cond_entropy"] = half_min;
        if (symmetric) out["gap_certificate"] = std::max(0.0, half_min - rep.m1);
        return dump(out);
    }
    if (opt.objective == "lb-gw") {
        if (!opt.memory) throw ValidationError("optimize lb-gw: --memory is required");
        BoundWitness bw = r_lb_gw(j, *opt.memory, cfg);
        out["memory"] = *opt.memory;
        out["value"] = bw.value;
        out["r_lb"] = r_lb(j, *opt.memory);
        out["witness_kind"] = bw.witness_kind;
        out["witness"] = witness_json(bw.witness);
        return dump(out);
    }
    if (opt.objective == "ub-gw") {
        if (!opt.memory) throw ValidationError("optimize ub-gw: --memory is required");
        OptResult res = optimize(j, {ObjectiveKind::MinRUbGwU, *opt.memory, {}},
                                 ParamMode::MarkovSymmetric, cfg);
        if (!res.feasible)
            throw InfeasibleError("optimize ub-gw: no conditionally symmetric channel "
                                  "passed the feasibility gates");
        out["memory"] = *opt.memory;
        out["value"] = res.value;
        out["witness_kind"] = res.witness_kind;
        out["witness"] = witness_json(res.witness);
        out["corner"] = corner_json(gw_corner(j, res.witness));
        return dump(out);
    }
    if (opt.objective == "corner") {
        MiCornerReport rep = mi_corner_check(j, cfg);
        out["status"] = rep.status == MiCornerStatus::Yes ? "yes" : "unknown";
        out["excess"] = rep.excess;
        out["target"] = corner_json(rep.target);
        out["witness_kind"] = rep.witness_kind;
        out["witness"] = witness_json(rep.witness);
        return dump(out);
    }
    throw ValidationError("optimize: unknown objective '" + opt.objective +
                          "' (expected m1, m1-symmetric, lb-gw, ub-gw, corner)");
}

std::string run_simulate(const SimulateOptions& opt) {
    SourceSpec spec;
    if (opt.family == "shared") {
        spec.family = SourceFamily::SharedComponent;
        spec.pv = opt.pv;
        spec.p1p = opt.p1p;
        spec.p2p = opt.p2p;
    } else if (opt.family == "dsbs") {
        spec.family = SourceFamily::DsbsWyner;
        spec.p0 = opt.p0;
    } else {
        throw ValidationError("simulate: family must be shared or dsbs");
    }

    json out;
    if (opt.exhaustive) {
        if (opt.family != "shared" || opt.pv != 0.5 || opt.p1p != 0.5 || opt.p2p != 0.5)
            throw ValidationError("simulate: exhaustive mode enumerates the fair "
                                  "shared-component source only");
        ExhaustiveReport rep = exhaustive_verify(opt.n, opt.budgets);
        out["mode"] = "exhaustive";
        out["n"] = opt.n;
        out["budgets"] = opt.budgets;
        out["cases"] = rep.cases;
        out["failures"] = rep.failures;
        out["first_failure"] = rep.first_failure.empty() ? json() : json(rep.first_failure);
        out["pass"] = rep.failures == 0;
        return dump(out);
    }

    if (opt.memory.has_value() == !opt.grid.empty())
        throw ValidationError("simulate: give exactly one of --memory and --grid");
    std::vector<double> ms =
        opt.memory ? std::vector<double>{*opt.memory} : GridSpec::parse(opt.grid).points();

    SimRun run = run_experiment(spec, ms, opt.n, opt.seed);
    out["mode"] = "experiment";
    out["family"] = opt.family == "shared" ? "shared_component" : "dsbs_wyner";
    out["params"] = opt.family == "shared"
                        ? json{{"pv", opt.pv}, {"p1p", opt.p1p}, {"p2p", opt.p2p}}
                        : json{{"p0", opt.p0}};
    out["n"] = run.n;
    out["seed"] = run.seed;
    out["r0"] = run.r0;
    out["rho"] = run.rho;
    out["capacity"] = run.r0 + 2 * run.rho;
    json points = json::array();
    for (const MemoryOutcome& mo : run.points) {
        json demands = json::array();
        for (const DemandOutcome& d : mo.demands)
            demands.push_back({{"d1", d.demand.d1},
                               {"d2", d.demand.d2},
                               {"bits_sent", d.bits_sent},
                               {"ok", d.ok}});
        points.push_back({{"m", mo.m},
                          {"budget", mo.manifest.budget},
                          {"regime", mo.manifest.regime},
                          {"w0_cached", mo.manifest.w0_cached},
                          {"demands", demands},
                          {"peak_rate", mo.peak_rate},
                          {"ideal", mo.ideal},
                          {"all_ok", mo.all_ok}});
    }
    out["points"] = points;
    return dump(out);
}

}  // namespace gwcache::cli
