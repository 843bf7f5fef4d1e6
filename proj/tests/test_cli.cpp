#include <doctest.h>

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "gwcache/achievable.hpp"
#include "gwcache/aux_channel.hpp"
#include "gwcache/json_io.hpp"
#include "gwcache/pmf.hpp"

#include "schema_check.hpp"

// End-to-end checks of the gwcache binary: output shapes, conformance to the
// schemas shipped under schemas/, byte determinism, and the exit-code contract
// (0 ok, 2 bad input, 3 infeasible search). GWCACHE_BIN points at the binary
// and GWCACHE_SCHEMAS at the schema directory; ctest sets both.

namespace {

using nlohmann::json;

constexpr double kH = 1.7219280948873623;  // H(X1,X2) of the 0.2-DSBS pair

std::string bin_path() {
    const char* p = std::getenv("GWCACHE_BIN");
    REQUIRE_MESSAGE(p != nullptr, "GWCACHE_BIN is not set");
    return p;
}

struct CliResult {
    int code = -1;
    std::string out;
};

CliResult run_cli(const std::string& args) {
    std::string cmd = bin_path() + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    CliResult res;
    char buf[1 << 14];
    size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) res.out.append(buf, got);
    int status = pclose(pipe);
    res.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return res;
}

json load_schema(const std::string& name) {
    const char* dir = std::getenv("GWCACHE_SCHEMAS");
    REQUIRE_MESSAGE(dir != nullptr, "GWCACHE_SCHEMAS is not set");
    std::ifstream in(std::string(dir) + "/" + name + ".schema.json");
    REQUIRE_MESSAGE(in.good(), "missing schema " << name);
    return json::parse(in);
}

json parse_checked(const std::string& schema_name, const std::string& text) {
    json doc = json::parse(text);
    CHECK(schema_violation(load_schema(schema_name), doc) == "");
    return doc;
}

void write_fixture(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
    REQUIRE(out.good());
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> out;
    size_t pos = 0;
    while (pos < text.size()) {
        size_t nl = text.find('\n', pos);
        if (nl == std::string::npos) nl = text.size();
        out.push_back(text.substr(pos, nl - pos));
        pos = nl + 1;
    }
    return out;
}

std::vector<std::string> fields_of(const std::string& line) {
    std::vector<std::string> out;
    size_t pos = 0;
    for (;;) {
        size_t comma = line.find(',', pos);
        if (comma == std::string::npos) {
            out.push_back(line.substr(pos));
            return out;
        }
        out.push_back(line.substr(pos, comma - pos));
        pos = comma + 1;
    }
}

}  // namespace

TEST_CASE("cli sweep prints the pinned header and identical bytes across runs") {
    CliResult first = run_cli("sweep --p0 0.2");
    REQUIRE(first.code == 0);
    std::vector<std::string> lines = lines_of(first.out);
    REQUIRE(lines.size() == 174);  // header + 173 grid points for 0:H:0.01
    CHECK(lines[0] == "M,R_lb,R_lb_gw,R_ub_gw,R_tc,R_lfu_um");
    CHECK(fields_of(lines.back())[0] == "1.72");

    CliResult second = run_cli("sweep --p0 0.2");
    REQUIRE(second.code == 0);
    CHECK(first.out == second.out);

    // every row carries all five curves and respects the bound ordering
    for (size_t i = 1; i < lines.size(); ++i) {
        std::vector<std::string> f = fields_of(lines[i]);
        REQUIRE(f.size() == 6);
        double m = std::stod(f[0]);
        double lb = std::stod(f[1]);
        double lb_gw = std::stod(f[2]);
        double ub_gw = std::stod(f[3]);
        double tc = std::stod(f[4]);
        double lfu = std::stod(f[5]);
        CHECK(m == doctest::Approx(0.01 * static_cast<double>(i - 1)).epsilon(1e-9));
        CHECK(lb <= lb_gw + 1e-9);
        CHECK(lb_gw <= ub_gw + 1e-9);
        CHECK(ub_gw <= std::min(tc, lfu) + 1e-9);
        if (i == 1) CHECK(lb == doctest::Approx(kH).epsilon(1e-9));  // R(0) = H
    }
}

TEST_CASE("cli sweep grid output is independent of the thread count") {
    CliResult serial = run_cli("sweep --p0 0.2 --grid 0:1:0.1 --threads 1");
    CliResult parallel = run_cli("sweep --p0 0.2 --grid 0:1:0.1 --threads 4");
    REQUIRE(serial.code == 0);
    REQUIRE(parallel.code == 0);
    CHECK(serial.out == parallel.out);
    CHECK(lines_of(serial.out).size() == 12);
}

TEST_CASE("cli sweep curve selection leaves unselected columns blank") {
    CliResult res = run_cli("sweep --p0 0.2 --grid 0:1:0.5 --curves lb,lfu_um");
    REQUIRE(res.code == 0);
    std::vector<std::string> lines = lines_of(res.out);
    REQUIRE(lines.size() == 4);
    CHECK(lines[0] == "M,R_lb,R_lb_gw,R_ub_gw,R_tc,R_lfu_um");
    for (size_t i = 1; i < lines.size(); ++i) {
        std::vector<std::string> f = fields_of(lines[i]);
        REQUIRE(f.size() == 6);
        CHECK(!f[1].empty());
        CHECK(f[2].empty());
        CHECK(f[3].empty());
        CHECK(f[4].empty());
        CHECK(!f[5].empty());
    }
}

TEST_CASE("cli sweep writes csv and svg files") {
    CliResult res = run_cli(
        "sweep --p0 0.2 --grid 0:1:0.25 --out cli_sweep_out.csv --svg cli_sweep_out.svg");
    REQUIRE(res.code == 0);
    CHECK(res.out.empty());

    std::ifstream csv("cli_sweep_out.csv", std::ios::binary);
    REQUIRE(csv.good());
    std::string csv_text((std::istreambuf_iterator<char>(csv)), std::istreambuf_iterator<char>());
    CHECK(lines_of(csv_text).size() == 6);
    CHECK(csv_text.rfind("M,R_lb,", 0) == 0);

    std::ifstream svg("cli_sweep_out.svg", std::ios::binary);
    REQUIRE(svg.good());
    std::string svg_text((std::istreambuf_iterator<char>(svg)), std::istreambuf_iterator<char>());
    CHECK(svg_text.rfind("<svg", 0) == 0);
    CHECK(svg_text.find("R_lfu_um") != std::string::npos);  // legend carries curve names
}

TEST_CASE("cli bounds output validates and names the active bound") {
    CliResult res = run_cli("bounds --p0 0.2 --memory 1 --restarts 0");
    REQUIRE(res.code == 0);
    json doc = parse_checked("bounds", res.out);

    CHECK(doc["measures"]["h12"].get<double>() == doctest::Approx(kH).epsilon(1e-12));
    CHECK(doc["r_lb"]["value"].get<double>() ==
          doctest::Approx(0.36096404744368105).epsilon(1e-12));
    CHECK(doc["r_lb"]["active_index"].get<int>() == 3);
    CHECK(doc["r_lb"]["active_label"].get<std::string>() == "(H-M)/2");

    double lb_gw = doc["r_lb_gw"]["value"].get<double>();
    double ub_gw = doc["r_ub_gw"]["value"].get<double>();
    CHECK(lb_gw >= doc["r_lb"]["value"].get<double>() - 1e-12);
    CHECK(lb_gw <= ub_gw + 1e-9);
    CHECK(doc["r_ub_gw"].contains("rho"));
    CHECK(doc["baselines"]["tc"].is_number());
    CHECK(doc["baselines"]["lfu_um"].get<double>() == doctest::Approx(kH - 1).epsilon(1e-9));

    // the reported witness is itself a valid auxiliary channel file
    CHECK(schema_violation(load_schema("aux"), doc["r_lb_gw"]["witness"]) == "");
}

TEST_CASE("cli bounds accepts a pmf file and reports inapplicable baselines as null") {
    write_fixture("cli_dsbs_pmf.json", gwcache::pmf_to_json(gwcache::dsbs(0.2)));
    CliResult res = run_cli("bounds --pmf cli_dsbs_pmf.json --memory 0.5 --restarts 0");
    REQUIRE(res.code == 0);
    json doc = parse_checked("bounds", res.out);
    CHECK(doc["source"]["kind"].get<std::string>() == "pmf");
    CHECK(doc["source"]["n1"].get<int>() == 2);
    CHECK(doc["r_lb"]["active_index"].get<int>() == 4);  // (H + max Hi)/2 - M wins at M = 0.5

    // a 2x3 source has unequal file entropies and no symmetric channels, so the
    // equal-size baseline and the symmetric scheme curve both report null
    write_fixture("cli_rect_pmf.json",
                  R"({"n1":2,"n2":3,"p":[[0.2,0.1,0.1],[0.1,0.2,0.3]]})");
    CliResult rect = run_cli("bounds --pmf cli_rect_pmf.json --memory 0.3 --restarts 0");
    REQUIRE(rect.code == 0);
    json rdoc = parse_checked("bounds", rect.out);
    CHECK(rdoc["baselines"]["tc"].is_null());
    CHECK(rdoc["r_ub_gw"]["value"].is_null());
}

TEST_CASE("cli achievable covers operating-point, corner, and plane modes") {
    CliResult op = run_cli("achievable --p0 0.2 --memory 1 --r0 1 --rho 1");
    REQUIRE(op.code == 0);
    json op_doc = parse_checked("achievable", op.out);
    CHECK(op_doc["mode"].get<std::string>() == "operating_point");
    CHECK(op_doc["value"].get<double>() == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(op_doc["branch"].get<int>() == 2);

    // U = (X1, X2) reaches the top corner but is not conditionally symmetric,
    // so the refined bound appears and the scheme rate stays null
    write_fixture("cli_id_aux.json",
                  gwcache::aux_to_json(gwcache::AuxChannel::identity_pair(4)));
    CliResult id = run_cli("achievable --p0 0.2 --memory 0.5 --aux cli_id_aux.json");
    REQUIRE(id.code == 0);
    json id_doc = parse_checked("achievable", id.out);
    CHECK(id_doc["mode"].get<std::string>() == "corner");
    CHECK(id_doc["corner"]["r0"].get<double>() == doctest::Approx(kH).epsilon(1e-9));
    CHECK(std::abs(id_doc["corner"]["r1"].get<double>()) <= 1e-12);
    CHECK(std::abs(id_doc["corner"]["r2"].get<double>()) <= 1e-12);
    CHECK(std::abs(id_doc["markov_defect"].get<double>()) <= 1e-12);
    CHECK(id_doc["symmetry_defect"].get<double>() == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(id_doc["r_lb_gw_u"].get<double>() == doctest::Approx(kH - 0.5).epsilon(1e-9));
    CHECK(id_doc["value"].is_null());
    CHECK(id_doc["branch"].is_null());

    // a symmetric channel gets a scheme rate, equal to the library's number
    const char* wyner_aux =
        R"({"nu":2,"w":[[0.9841229182759271,0.5,0.5,0.015877081724072883],)"
        R"([0.015877081724072883,0.5,0.5,0.9841229182759271]]})";
    write_fixture("cli_wyner_aux.json", wyner_aux);
    CliResult wy = run_cli("achievable --p0 0.2 --memory 0.5 --aux cli_wyner_aux.json");
    REQUIRE(wy.code == 0);
    json wy_doc = parse_checked("achievable", wy.out);
    CHECK(std::abs(wy_doc["markov_defect"].get<double>()) <= 1e-9);
    CHECK(wy_doc["symmetry_defect"].get<double>() <= 1e-12);
    double expect = gwcache::r_ub_gw_u(gwcache::dsbs(0.2),
                                       gwcache::aux_from_json(wyner_aux), 0.5);
    CHECK(wy_doc["value"].get<double>() == doctest::Approx(expect).epsilon(1e-12));
    CHECK(wy_doc["branch"].get<int>() == 2);

    // constant U on a rectangular source: symmetry is undefined, fields go null
    write_fixture("cli_const_aux.json", R"({"nu":1,"w":[[1,1,1,1,1,1]]})");
    CliResult ct = run_cli(
        "achievable --pmf cli_rect_pmf.json --memory 0.3 --aux cli_const_aux.json");
    REQUIRE(ct.code == 0);
    json ct_doc = parse_checked("achievable", ct.out);
    CHECK(std::abs(ct_doc["corner"]["r0"].get<double>()) <= 1e-12);
    CHECK(ct_doc["symmetry_defect"].is_null());
    CHECK(ct_doc["value"].is_null());

    CliResult plane = run_cli("achievable --p0 0.2 --memory 1");
    REQUIRE(plane.code == 0);
    json plane_doc = parse_checked("achievable", plane.out);
    CHECK(plane_doc["mode"].get<std::string>() == "dsbs_plane");
    CHECK(plane_doc["value"].get<double>() == doctest::Approx(0.443946854682).epsilon(1e-9));
    CHECK(plane_doc["rho"].get<double>() == doctest::Approx(0.6434843847003207).epsilon(1e-6));
    CHECK(plane_doc["branch"].get<int>() == 2);
}

TEST_CASE("cli optimize m1-symmetric certifies the coincidence window") {
    CliResult res = run_cli("optimize --p0 0.2 --objective m1-symmetric --restarts 8");
    REQUIRE(res.code == 0);
    json doc = parse_checked("optimize", res.out);

    double m1v = doc["m1"].get<double>();
    CHECK(m1v >= 0.250);
    CHECK(m1v <= 0.258);
    CHECK(doc["gap_certificate"].get<double>() >= 0.103);
    CHECK(doc["gap_certificate"].get<double>() <= 0.110);
    CHECK(doc["half_min_cond_entropy"].get<double>() ==
          doctest::Approx(0.36096404744368105).epsilon(1e-12));
    CHECK(doc["symmetric"].get<bool>() == true);
    CHECK(std::abs(doc["markov_defect"].get<double>()) <= 1e-9);
    CHECK(doc["intervals"]["low"]["hi"].get<double>() == doctest::Approx(m1v).epsilon(1e-12));
    CHECK(doc["intervals"]["high"]["lo"].get<double>() ==
          doctest::Approx(kH - 2 * m1v).epsilon(1e-9));
    CHECK(schema_violation(load_schema("aux"), doc["witness"]) == "");
}

TEST_CASE("cli optimize corner distinguishes attainable corners") {
    CliResult ds = run_cli("optimize --p0 0.2 --objective corner --restarts 8");
    REQUIRE(ds.code == 0);
    json ds_doc = parse_checked("optimize", ds.out);
    CHECK(ds_doc["status"].get<std::string>() == "unknown");
    CHECK(ds_doc["excess"].get<double>() > 0.01);
    CHECK(ds_doc["target"]["r0"].get<double>() ==
          doctest::Approx(0.27807190511263765).epsilon(1e-9));

    write_fixture("cli_copy_pmf.json", R"({"n1":2,"n2":2,"p":[[0.5,0.0],[0.0,0.5]]})");
    CliResult cp = run_cli("optimize --pmf cli_copy_pmf.json --objective corner --restarts 8");
    REQUIRE(cp.code == 0);
    json cp_doc = parse_checked("optimize", cp.out);
    CHECK(cp_doc["status"].get<std::string>() == "yes");
    CHECK(cp_doc["excess"].get<double>() <= 1e-6);
    CHECK(cp_doc["target"]["r0"].get<double>() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("cli optimize ub-gw returns a symmetric scheme operating point") {
    CliResult res = run_cli("optimize --p0 0.2 --objective ub-gw --memory 1 --restarts 8");
    REQUIRE(res.code == 0);
    json doc = parse_checked("optimize", res.out);
    double v = doc["value"].get<double>();
    CHECK(v >= 0.443946854682 - 1e-9);  // cannot beat the plane optimum
    CHECK(v <= 0.47);                   // the Wyner seed already reaches this
    CHECK(doc["corner"]["r1"].get<double>() ==
          doctest::Approx(doc["corner"]["r2"].get<double>()).epsilon(1e-6));
    CHECK(schema_violation(load_schema("aux"), doc["witness"]) == "");
}

TEST_CASE("cli optimize lb-gw reports the refined bound above the plain one") {
    CliResult res = run_cli("optimize --p0 0.2 --objective lb-gw --memory 1 --restarts 0");
    REQUIRE(res.code == 0);
    json doc = parse_checked("optimize", res.out);
    CHECK(doc["value"].get<double>() >= doc["r_lb"].get<double>() - 1e-12);
    CHECK(doc["value"].get<double>() == doctest::Approx(0.443946854682).epsilon(1e-6));
    CHECK(doc["r_lb"].get<double>() == doctest::Approx(0.36096404744368105).epsilon(1e-9));
}

TEST_CASE("cli simulate experiment reaches the closed-form peak") {
    CliResult fair = run_cli("simulate --family shared --n 2000 --seed 3 --memory 1");
    REQUIRE(fair.code == 0);
    json fair_doc = parse_checked("simulate", fair.out);
    CHECK(fair_doc["mode"].get<std::string>() == "experiment");
    CHECK(fair_doc["family"].get<std::string>() == "shared_component");
    CHECK(fair_doc["r0"].get<double>() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(fair_doc["rho"].get<double>() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(fair_doc["capacity"].get<double>() == doctest::Approx(3.0).epsilon(1e-12));
    REQUIRE(fair_doc["points"].size() == 1);
    const json& pt = fair_doc["points"][0];
    CHECK(pt["all_ok"].get<bool>());
    CHECK(pt["ideal"].get<double>() == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(pt["peak_rate"].get<double>() >= pt["ideal"].get<double>() - 1e-12);
    CHECK(pt["peak_rate"].get<double>() <= pt["ideal"].get<double>() + 2.0 / 2000 + 1e-12);

    CliResult ds = run_cli("simulate --family dsbs --p0 0.2 --n 2000 --seed 5 --grid 0:1.6:0.8");
    REQUIRE(ds.code == 0);
    json ds_doc = parse_checked("simulate", ds.out);
    CHECK(ds_doc["family"].get<std::string>() == "dsbs_wyner");
    CHECK(ds_doc["params"]["p0"].get<double>() == doctest::Approx(0.2).epsilon(1e-12));
    REQUIRE(ds_doc["points"].size() == 3);
    for (const json& p : ds_doc["points"]) {
        CHECK(p["all_ok"].get<bool>());
        CHECK(std::abs(p["peak_rate"].get<double>() - p["ideal"].get<double>()) <= 0.01);
    }
}

TEST_CASE("cli simulate exhaustive covers every case") {
    CliResult res = run_cli("simulate --exhaustive --n 3 --budgets 0,2,4");
    REQUIRE(res.code == 0);
    json doc = parse_checked("simulate", res.out);
    CHECK(doc["mode"].get<std::string>() == "exhaustive");
    CHECK(doc["cases"].get<long long>() == 6144);  // 2^9 masks x 3 budgets x 4 demands
    CHECK(doc["failures"].get<long long>() == 0);
    CHECK(doc["first_failure"].is_null());
    CHECK(doc["pass"].get<bool>());
}

TEST_CASE("cli invalid inputs exit 2 and infeasible searches exit 3") {
    CHECK(run_cli("sweep --p0 0.2 --grid 0:5:0.5").code == 2);
    CHECK(run_cli("sweep --p0 0.2 --curves lb,bogus").code == 2);
    CHECK(run_cli("sweep --p0 0.2 --grid nonsense").code == 2);
    CHECK(run_cli("bounds --p0 0.2").code == 2);  // --memory is required
    CHECK(run_cli("bounds --pmf cli_missing_file.json --memory 1").code == 2);
    CHECK(run_cli("achievable --p0 0.2 --memory 1 --r0 1").code == 2);
    CHECK(run_cli("achievable --pmf cli_dsbs_pmf.json --memory 1").code == 2);
    CHECK(run_cli("optimize --p0 0.2 --objective lb-gw").code == 2);
    CHECK(run_cli("optimize --p0 0.2 --objective nope").code == 2);
    CHECK(run_cli("simulate --family tern").code == 2);
    CHECK(run_cli("simulate --family dsbs --n 100 --memory 1 --grid 0:1:1").code == 2);
    CHECK(run_cli("simulate --family dsbs --n 100").code == 2);
    CHECK(run_cli("simulate --exhaustive --family dsbs").code == 2);
    CHECK(run_cli("simulate --exhaustive --n 3 --budgets 99").code == 2);
    CHECK(run_cli("simulate --family shared --n 100 --memory 9").code == 2);
    CHECK(run_cli("nonsense").code == 2);
    CHECK(run_cli("--help").code == 0);
    CHECK(run_cli("sweep --help").code == 0);

    write_fixture("cli_anti_pmf.json", R"({"n1":2,"n2":2,"p":[[0.0,0.5],[0.5,0.0]]})");
    CHECK(run_cli("optimize --pmf cli_anti_pmf.json --objective m1-symmetric --restarts 8")
              .code == 3);
}

TEST_CASE("cli library serializers conform to the published file schemas") {
    json pmf_doc = json::parse(gwcache::pmf_to_json(gwcache::dsbs(0.2)));
    CHECK(schema_violation(load_schema("pmf"), pmf_doc) == "");

    json aux_doc = json::parse(gwcache::aux_to_json(gwcache::AuxChannel::identity_pair(4)));
    CHECK(schema_violation(load_schema("aux"), aux_doc) == "");
}
