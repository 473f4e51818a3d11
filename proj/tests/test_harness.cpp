#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "pjlab/config.hpp"
#include "pjlab/experiment.hpp"
#include "pjlab/svg.hpp"
#include "pjlab/timeseries.hpp"

using namespace pjlab;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_SUITE("harness") {

TEST_CASE("run config: defaults and key application") {
    const RunConfig def;
    CHECK(def.n == 2);
    CHECK(def.damping == "zero");
    CHECK(def.family == "sin2");
    CHECK(def.amplitude == 1.0);
    CHECK(def.solver.N == 512);
    CHECK(def.solver.cfl == 0.5);
    CHECK(def.outdir == "out");

    const RunConfig cfg = parse_run_config_text(
        "# comment line\n"
        "n = 3\n"
        "damping = const:1.5\n"
        "family = poly_bump\n"
        "amplitude = 2.5\n"
        "\n"
        "N = 256\n"
        "cfl = 0.4\n"
        "t_end = 0.7\n"
        "outdir = some/dir\n");
    CHECK(cfg.n == 3);
    CHECK(cfg.damping == "const:1.5");
    CHECK(cfg.family == "poly_bump");
    CHECK(cfg.amplitude == 2.5);
    CHECK(cfg.solver.N == 256);
    CHECK(cfg.solver.cfl == 0.4);
    CHECK(cfg.solver.t_end == 0.7);
    CHECK(cfg.outdir == "some/dir");

    CHECK_THROWS_AS(parse_run_config_text("bogus_key = 1\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_run_config_text("n three\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_run_config_text("cfl = fast\n"), std::invalid_argument);
}

TEST_CASE("sweep spec parsing") {
    const SweepSpec spec = parse_sweep_spec_text(
        "n_list = 2, 3\n"
        "damping_list = zero; const:1; sat:2,0.5\n"
        "amplitude_list = 1, 2\n"
        "workers = 4\n"
        "N = 128\n"
        "t_end = 0.05\n");
    CHECK(spec.n_values == std::vector<int>{2, 3});
    CHECK(spec.damping_values == std::vector<std::string>{"zero", "const:1", "sat:2,0.5"});
    CHECK(spec.amplitude_values == std::vector<double>{1.0, 2.0});
    CHECK(spec.workers == 4);
    CHECK(spec.base.solver.N == 128);

    // lists default to the base config's single point
    const SweepSpec single = parse_sweep_spec_text("amplitude = 1.5\n");
    CHECK(single.n_values == std::vector<int>{2});
    CHECK(single.amplitude_values == std::vector<double>{1.5});
}

TEST_CASE("certificates_for picks the matching theorem") {
    const auto zero2 = certificates_for(-1.0, 2, DampingProfile::zero());
    REQUIRE(zero2.size() == 2);
    CHECK(zero2[0].theorem_id == TheoremId::yuen_2_1);
    CHECK(zero2[1].theorem_id == TheoremId::riccati_numeric);
    CHECK(zero2[1].applicable);

    const auto zero3 = certificates_for(-1.0, 3, DampingProfile::zero());
    REQUIRE(zero3.size() == 1);  // no theorem covers undamped n != 2
    CHECK(zero3[0].theorem_id == TheoremId::riccati_numeric);

    const auto cst = certificates_for(-1.0, 2, DampingProfile::constant(1.0));
    CHECK(cst[0].theorem_id == TheoremId::bounded_3_1);

    const auto sat = certificates_for(-1.0, 2, DampingProfile::saturating(1.0, 2.0));
    CHECK(sat[0].theorem_id == TheoremId::bounded_3_1);

    const auto ex = certificates_for(-1.0, 2, DampingProfile::exponential(1.0));
    CHECK(ex[0].theorem_id == TheoremId::unbounded_4_1);

    const auto tab =
        certificates_for(-1.0, 2, DampingProfile::tabulated({0.0, 1.0}, {0.5, 1.0}));
    CHECK(tab[0].theorem_id == TheoremId::bounded_3_1);
    CHECK(tab[0].sup_caveat);

    const auto pos = certificates_for(0.5, 2, DampingProfile::zero());
    for (const auto& cert : pos) CHECK(!cert.applicable);
}

TEST_CASE("summary embeds the fully resolved config") {
    RunConfig cfg;
    cfg.amplitude = 0.0;
    cfg.solver.N = 128;
    cfg.solver.t_end = 0.05;
    const auto art = run_experiment(cfg);
    const auto j = nlohmann::json::parse(make_summary_json(art));
    for (const char* key : {"n", "damping", "family", "amplitude", "N", "cfl", "dt_min", "v_max",
                            "t_end", "rk_tol", "safety", "outdir"}) {
        CAPTURE(key);
        CHECK(j["config"].contains(key));
    }
    CHECK(j["config"]["N"] == 128);
    CHECK(j["breakdown"]["reason"] == "horizon_reached");
    CHECK(j["breakdown"]["detected"] == false);
    CHECK(j["monitors"]["all_pass"] == true);
    CHECK(j.contains("certificates"));
    CHECK(j.contains("comparison"));
}

TEST_CASE("run CSV starts with the canonical columns") {
    RunConfig cfg;
    cfg.amplitude = 1.0;
    cfg.solver.N = 128;
    cfg.solver.t_end = 0.05;
    const auto art = run_experiment(cfg);
    const ColumnTable table = make_run_table(art);
    const std::vector<std::string> canonical = {"t",     "H",  "l2vsq",       "max_v",
                                                "min_u", "dt", "eq8_residual"};
    REQUIRE(table.names.size() >= canonical.size());
    for (std::size_t i = 0; i < canonical.size(); ++i) CHECK(table.names[i] == canonical[i]);
    CHECK(table.rows() == art.run.series.size());
}

TEST_CASE("CSV write/read round trip") {
    ColumnTable t;
    t.names = {"t", "a"};
    t.cols = {{0.0, 0.125, 0.25}, {1.5, -2.0, 3.25}};
    const std::string path = "roundtrip_test.csv";
    write_csv(t, path);
    const ColumnTable back = read_csv(path);
    REQUIRE(back.names == t.names);
    REQUIRE(back.cols.size() == 2);
    for (std::size_t c = 0; c < 2; ++c)
        for (std::size_t r = 0; r < 3; ++r) CHECK(back.cols[c][r] == t.cols[c][r]);
    std::remove(path.c_str());
}

TEST_CASE("repeated simulate output is byte-identical") {
    RunConfig cfg;
    cfg.amplitude = 2.0;
    cfg.solver.N = 128;
    cfg.solver.t_end = 0.1;
    cfg.outdir = "determinism_a";
    const auto art1 = run_experiment(cfg);
    write_artifacts(art1, "determinism_a");
    const auto art2 = run_experiment(cfg);
    write_artifacts(art2, "determinism_b");
    CHECK(slurp("determinism_a/series.csv") == slurp("determinism_b/series.csv"));
    CHECK(slurp("determinism_a/summary.json") == slurp("determinism_b/summary.json"));
    std::filesystem::remove_all("determinism_a");
    std::filesystem::remove_all("determinism_b");
}

TEST_CASE("sweep output is independent of worker count") {
    SweepSpec spec = parse_sweep_spec_text(
        "n_list = 2\n"
        "damping_list = zero; const:1\n"
        "amplitude_list = 0.5, 1\n"
        "N = 128\n"
        "t_end = 0.05\n");
    spec.exploratory = true;
    spec.workers = 1;
    run_sweep(spec, "sweep_w1.csv");
    spec.workers = 4;
    run_sweep(spec, "sweep_w4.csv");
    const std::string a = slurp("sweep_w1.csv");
    CHECK(a == slurp("sweep_w4.csv"));
    CHECK(a.rfind("n,damping,family,amplitude,h0,status,", 0) == 0);
    // 4 grid points + header
    CHECK(std::count(a.begin(), a.end(), '\n') == 5);
    std::remove("sweep_w1.csv");
    std::remove("sweep_w4.csv");
}

TEST_CASE("sweep gates the uncertified regime behind the exploratory flag") {
    SweepSpec spec = parse_sweep_spec_text(
        "n_list = 2\n"
        "damping_list = const:1\n"
        "amplitude_list = 0.6\n"  // h0 = -0.3, condition fails
        "N = 128\n"
        "t_end = 0.05\n");
    spec.workers = 1;
    spec.exploratory = false;
    run_sweep(spec, "sweep_gate.csv");
    std::string gated = slurp("sweep_gate.csv");
    CHECK(gated.find("skipped") != std::string::npos);
    spec.exploratory = true;
    run_sweep(spec, "sweep_gate.csv");
    gated = slurp("sweep_gate.csv");
    CHECK(gated.find("exploratory") != std::string::npos);
    std::remove("sweep_gate.csv");
}

TEST_CASE("svg chart emission") {
    ColumnTable t;
    t.names = {"t", "H", "decay_bound"};
    t.cols = {{0.0, 0.5, 1.0}, {-1.0, -1.2, -1.5}, {-1.0, -1.1, -1.3}};
    const std::string svg = svg_line_chart(t, {"H", "decay_bound"});
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(std::count(svg.begin(), svg.end(), '\n') > 10);
    // one polyline per key plus legend swatches
    CHECK(svg.find("polyline") != std::string::npos);
    CHECK(svg.find(">H</text>") != std::string::npos);

    CHECK_THROWS_AS(svg_line_chart(t, {}), std::invalid_argument);
    CHECK_THROWS_AS(svg_line_chart(t, {"missing_column"}), std::invalid_argument);
}

}  // TEST_SUITE
