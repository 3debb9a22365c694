#include "doctest.h"

#include "naqgt/errors.hpp"
#include "naqgt_app/commands.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace naqgt;
using namespace naqgt::app;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir()
{
    const fs::path d = fs::temp_directory_path() / "naqgt_cli_tests";
    fs::create_directories(d);
    return d;
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int run(const RunConfig& c, std::string* err_text = nullptr)
{
    std::ostringstream log, err;
    const int status = dispatch(c, log, err);
    if (err_text) *err_text = err.str();
    return status;
}

}  // namespace

TEST_CASE("command names round trip")
{
    for (Command c : {Command::bands, Command::invariants, Command::qgt_map, Command::wilson, Command::sweep,
                      Command::dynamics, Command::selfcheck})
        CHECK(command_from_string(to_string(c)) == c);
    CHECK(to_string(Command::qgt_map) == "qgt-map");
    CHECK_THROWS_AS(command_from_string("plot"), ValidationError);
}

TEST_CASE("config files")
{
    const json j = {{"command", "invariants"}, {"model", "c2t_lattice"}, {"mass", 1.0}, {"alpha", {1, 1, 1}},
                    {"grid", 51},              {"n-theta", 12},         {"kz", 0.3}};
    const RunConfig c = config_from_json(j);
    CHECK(c.command == Command::invariants);
    CHECK(c.model.family == Family::c2t_lattice);
    CHECK(c.model.mass == 1.0);
    CHECK(c.grid == 51);
    CHECK(c.n_theta == 12);
    CHECK(c.kz == 0.3);
    // untouched fields keep their defaults
    CHECK(c.v == 0.1);
    CHECK(c.dt == 1e-3);

    CHECK_THROWS_AS(config_from_json({{"colour", "red"}}), ValidationError);
    CHECK_THROWS_AS(config_from_json({{"model", "cp_lattice"}, {"family", "cp_lattice"}}), ValidationError);
    CHECK_THROWS_AS(config_from_json({{"grid", "many"}}), ValidationError);
    CHECK_THROWS_AS(config_from_json(json::array()), ValidationError);

    // later layers override earlier ones
    RunConfig layered = c;
    apply_json(layered, {{"grid", 31}});
    CHECK(layered.grid == 31);
    CHECK(layered.model.mass == 1.0);

    // the echoed config reads back to the same run
    const RunConfig echoed = config_from_json(to_json(c.resolved()));
    CHECK(to_json(echoed) == to_json(c.resolved()));
}

TEST_CASE("defaults resolve per command")
{
    RunConfig c;
    c.command = Command::dynamics;
    CHECK(c.resolved().grid == 41);
    CHECK(c.resolved().n_theta == 24);
    c.command = Command::invariants;
    CHECK(c.resolved().grid == 201);
    CHECK(c.resolved().n_phi == 400);
    c.grid = 11;
    CHECK(c.resolved().grid == 11);
    CHECK(c.output_path() == "invariants.json");
    c.command = Command::wilson;
    CHECK(c.output_path() == "wilson.csv");
}

TEST_CASE("validation rejects bad input")
{
    RunConfig c;
    c.command = Command::invariants;
    c.grid = 1;
    CHECK_THROWS_AS(c.resolved().validate(), ValidationError);
    c.grid = 21;
    c.gauge = "real";
    CHECK_THROWS_AS(c.resolved().validate(), ValidationError);
    c.gauge = "auto";
    c.dt = 0.1;
    CHECK_THROWS_AS(c.resolved().validate(), ValidationError);
    c.dt = 1e-3;
    c.sweep = "ky";
    CHECK_THROWS_AS(c.resolved().validate(), ValidationError);
}

TEST_CASE("exit codes and manifests")
{
    const fs::path dir = scratch_dir();

    RunConfig ok;
    ok.command = Command::invariants;
    ok.grid = 31;
    ok.out = (dir / "inv.json").string();
    REQUIRE(run(ok) == 0);
    const json result = json::parse(slurp(ok.out));
    CHECK(result["chern"]["curvature"].get<double>() == doctest::Approx(-2.0).epsilon(0.01));
    const json m = json::parse(slurp(manifest_path(ok)));
    for (const char* key : {"config", "version", "threads_used", "gauge_mode", "outputs", "summary", "exit_status",
                            "wall_time_s"})
        CHECK(m.contains(key));
    CHECK(m["exit_status"] == 0);
    CHECK(m["config"]["grid"] == 31);
    CHECK(m["config"]["n-phi"] == 400);
    CHECK(m["gauge_mode"] == "complex_phase");

    RunConfig invalid = ok;
    invalid.model.n = 0;
    invalid.out = (dir / "invalid.json").string();
    CHECK(run(invalid) == 2);
    CHECK(json::parse(slurp(manifest_path(invalid)))["exit_status"] == 2);

    // k_z = pi/2 puts the midpoint of an odd grid on a monopole
    RunConfig gapless = ok;
    gapless.kz = 1.5707963267948966;
    gapless.out = (dir / "gapless.json").string();
    std::string err;
    CHECK(run(gapless, &err) == 3);
    CHECK(err.find("numerical error") != std::string::npos);
    CHECK(json::parse(slurp(manifest_path(gapless))).contains("error"));

    RunConfig check;
    check.command = Command::selfcheck;
    check.out = (dir / "selfcheck.json").string();
    CHECK(run(check) == 0);
}

TEST_CASE("outputs do not depend on the thread count")
{
    const fs::path dir = scratch_dir();
    for (Command cmd : {Command::qgt_map, Command::wilson, Command::bands}) {
        RunConfig c;
        c.command = cmd;
        c.grid = 21;
        c.model.family = Family::c2t_lattice;
        std::string text[2];
        for (int threads : {1, 2}) {
            c.threads = threads;
            c.out = (dir / (to_string(cmd) + std::to_string(threads) + ".csv")).string();
            REQUIRE(run(c) == 0);
            text[threads - 1] = slurp(c.out);
        }
        CHECK(!text[0].empty());
        CHECK(text[0] == text[1]);
    }
}

TEST_CASE("selfcheck lines all pass")
{
    const std::vector<CheckLine> lines = run_selfcheck(1);
    CHECK(lines.size() >= 5);
    for (const CheckLine& l : lines) {
        INFO(l.name);
        CHECK(l.pass);
        CHECK(l.measured <= l.tolerance);
    }
}
