#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include "commands.hpp"
#include "gwcache/types.hpp"

namespace {

using namespace gwcache;
using namespace gwcache::cli;

void write_output(const std::string& payload, const std::string& path) {
    if (path.empty()) {
        std::fwrite(payload.data(), 1, payload.size(), stdout);
        return;
    }
    std::ofstream out(path, std::ios::binary);
    out.write(payload.data(), static_cast<std::streamsize>(payload.size()));
    if (!out) throw ValidationError("cannot write " + path);
}

void add_source_flags(CLI::App* cmd, SourceOpt& src) {
    cmd->add_option("--p0", src.p0, "DSBS flip probability")->capture_default_str();
    cmd->add_option("--pmf", src.pmf_path, "pair pmf JSON file (overrides --p0)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"bounds, achievable rates, and bit-level simulation for two-receiver "
                 "caching of a correlated pair source"};
    app.require_subcommand(1);

    SweepOptions sweep;
    std::string sweep_out, sweep_svg_path;
    CLI::App* cs = app.add_subcommand("sweep", "rate curves over a memory grid, CSV out");
    add_source_flags(cs, sweep.source);
    cs->add_option("--grid", sweep.grid, "memory grid start:stop:step (default 0:H:0.01)");
    cs->add_option("--curves", sweep.curves,
                   "curve subset of lb,lb_gw,ub_gw,tc,lfu_um (comma separated)")
        ->delimiter(',')
        ->capture_default_str();
    cs->add_option("--restarts", sweep.restarts, "optimizer restarts per grid point")
        ->capture_default_str();
    cs->add_option("--seed", sweep.seed, "optimizer seed")->capture_default_str();
    cs->add_option("--threads", sweep.threads, "worker threads, 0 = hardware")
        ->capture_default_str();
    cs->add_option("--out", sweep_out, "CSV path (default stdout)");
    cs->add_option("--svg", sweep_svg_path, "also render an SVG chart here");

    BoundsOptions bounds;
    std::string bounds_out;
    CLI::App* cb = app.add_subcommand("bounds", "all bounds at one memory point, JSON out");
    add_source_flags(cb, bounds.source);
    cb->add_option("--memory", bounds.memory, "cache size M in bits per symbol")->required();
    cb->add_option("--restarts", bounds.restarts, "optimizer restarts")->capture_default_str();
    cb->add_option("--seed", bounds.seed, "optimizer seed")->capture_default_str();
    cb->add_option("--out", bounds_out, "JSON path (default stdout)");

    AchievableOptions ach;
    std::string ach_out;
    double ach_r0 = 0, ach_rho = 0;
    CLI::App* ca = app.add_subcommand("achievable", "scheme rate at one memory point, JSON out");
    add_source_flags(ca, ach.source);
    ca->add_option("--memory", ach.memory, "cache size M in bits per symbol")->required();
    ca->add_option("--aux", ach.aux_path, "auxiliary channel JSON file: rate at its corner");
    CLI::Option* o_r0 = ca->add_option("--r0", ach_r0, "shared description rate");
    CLI::Option* o_rho = ca->add_option("--rho", ach_rho, "private description rate");
    ca->add_option("--out", ach_out, "JSON path (default stdout)");

    OptimizeOptions optm;
    std::string optm_out;
    CLI::App* co = app.add_subcommand("optimize", "auxiliary-channel searches, JSON out");
    add_source_flags(co, optm.source);
    co->add_option("--objective", optm.objective, "m1 | m1-symmetric | lb-gw | ub-gw | corner")
        ->capture_default_str();
    double optm_memory = 0;
    CLI::Option* o_mem = co->add_option("--memory", optm_memory, "memory for lb-gw / ub-gw");
    co->add_option("--restarts", optm.restarts, "optimizer restarts")->capture_default_str();
    co->add_option("--seed", optm.seed, "optimizer seed")->capture_default_str();
    co->add_option("--nu", optm.nu, "auxiliary alphabet size, 0 = n1*n2+2")
        ->capture_default_str();
    co->add_option("--out", optm_out, "JSON path (default stdout)");

    SimulateOptions sim;
    std::string sim_out;
    CLI::App* cm = app.add_subcommand("simulate", "run the coded protocol end to end, JSON out");
    cm->add_option("--family", sim.family, "source family: shared | dsbs")
        ->capture_default_str();
    cm->add_option("--pv", sim.pv, "shared-component common bias")->capture_default_str();
    cm->add_option("--p1p", sim.p1p, "shared-component private bias, file 1")
        ->capture_default_str();
    cm->add_option("--p2p", sim.p2p, "shared-component private bias, file 2")
        ->capture_default_str();
    cm->add_option("--p0", sim.p0, "DSBS flip probability")->capture_default_str();
    double sim_memory = 0;
    CLI::Option* o_sim_mem = cm->add_option("--memory", sim_memory, "single memory point");
    cm->add_option("--grid", sim.grid, "memory grid start:stop:step");
    CLI::Option* o_n = cm->add_option("--n", sim.n, "blocklength (4 in exhaustive mode)")
                           ->capture_default_str();
    cm->add_option("--seed", sim.seed, "realization seed")->capture_default_str();
    cm->add_flag("--exhaustive", sim.exhaustive,
                 "decode every fair-bit realization at every budget");
    cm->add_option("--budgets", sim.budgets, "per-receiver bit budgets for exhaustive mode")
        ->delimiter(',')
        ->capture_default_str();
    cm->add_option("--out", sim_out, "JSON path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }

    try {
        if (cs->parsed()) {
            std::vector<SweepRow> rows = run_sweep(sweep);
            write_output(sweep_csv(rows), sweep_out);
            if (!sweep_svg_path.empty()) write_output(sweep_svg(rows), sweep_svg_path);
        } else if (cb->parsed()) {
            write_output(run_bounds(bounds), bounds_out);
        } else if (ca->parsed()) {
            if (o_r0->count()) ach.r0 = ach_r0;
            if (o_rho->count()) ach.rho = ach_rho;
            write_output(run_achievable(ach), ach_out);
        } else if (co->parsed()) {
            if (o_mem->count()) optm.memory = optm_memory;
            write_output(run_optimize(optm), optm_out);
        } else if (cm->parsed()) {
            if (o_sim_mem->count()) sim.memory = sim_memory;
            if (sim.exhaustive && !o_n->count()) sim.n = 4;
            write_output(run_simulate(sim), sim_out);
        }
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const InfeasibleError& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
