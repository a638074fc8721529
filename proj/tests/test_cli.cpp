#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

#include "canonica/appell.hpp"
#include "canonica/fields.hpp"
#include "canonica/specfun.hpp"

using namespace canonica;

namespace {
std::string g_cli;

struct Run {
    int code;
    std::string out;
};

Run run(const std::string& args) {
    std::string cmd = "'" + g_cli + "' " + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::string out;
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
    int st = pclose(p);
    return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

SampledField parse(const std::string& s) {
    std::istringstream is(s);
    return read_field_csv(is);
}

std::string tmp(const std::string& name) { return "/tmp/canonica_cli_" + name; }
}  // namespace

TEST_CASE("sample") {
    Run r = run("sample --family std-hg --n 0 --grid -6:6:512 --evol 0");
    REQUIRE(r.code == 0);
    SampledField f = parse(r.out);
    CHECK(f.values.size() == 512);
    double peak = 0.0;
    for (const cplx& v : f.values) peak = std::max(peak, std::abs(v));
    // nearest samples sit 6/511 from the origin
    CHECK(peak == doctest::Approx(std::pow(M_PI, -0.25)).epsilon(1e-4));

    f = parse(run("sample --family heat-poly --n 0 --grid -3:3:64 --evol 0.4").out);
    for (const cplx& v : f.values) CHECK(v == cplx(1.0));

    r = run("sample --family bessel --lambda 2 --m 1 --grid 0:10:256 --evol 0");
    REQUIRE(r.code == 0);
    f = parse(r.out);
    CHECK(f.geometry.kind == Geometry::Kind::Radial);
    double err = 0.0;
    for (int i = 0; i < f.grid.count; ++i) err = std::max(err, std::abs(f.values[i] - bessel_j(1, 2.0 * f.grid.at(i))));
    CHECK(err < 1e-14);
}

TEST_CASE("matrix") {
    Run r = run("matrix compose free:1 fourier:1 free:-1");
    REQUIRE(r.code == 0);
    nlohmann::json j = nlohmann::json::parse(r.out);
    CHECK(j["a"][0] == -1.0);
    CHECK(j["b"][0] == 2.0);
    CHECK(j["c"][0] == -1.0);
    CHECK(j["d"][0] == 1.0);
    r = run("matrix invert '" + j.dump() + "'");
    REQUIRE(r.code == 0);
    j = nlohmann::json::parse(r.out);
    CHECK(j["a"][0] == 1.0);
    CHECK(j["b"][0] == -2.0);
    r = run("matrix factor free:0.5");
    REQUIRE(r.code == 0);
    CHECK(nlohmann::json::parse(r.out).contains("real"));
}

TEST_CASE("appell") {
    Run r = run("appell --eq pwe --alpha 1 --evol 0.7 --family plane-chirp --lambda 2 --grid -3:3:61");
    REQUIRE(r.code == 0);
    SampledField f = parse(r.out);
    CHECK(f.evol == 0.7);
    AppellSpec spec;
    spec.alpha = 1.0;
    spec.evol = 0.7;
    FieldExpr e = appell_analytic(AnalyticField::plane_chirp(2.0), spec);
    double err = 0.0;
    for (int i = 0; i < f.grid.count; ++i) err = std::max(err, std::abs(f.values[i] - e(f.grid.at(i), 0.7)));
    CHECK(err < 1e-14);
    // |.| of a point source is constant in x at fixed evol
    for (const cplx& v : f.values) CHECK(std::abs(v) == doctest::Approx(std::abs(f.values[0])).epsilon(1e-12));

    std::ofstream(tmp("gauss.csv")) << run("sample --family gauss --grid -12:12:1024").out;
    r = run("appell --eq pwe --alpha 0.5 --evol 0.3 --in " + tmp("gauss.csv") + " --grid -3:3:41");
    REQUIRE(r.code == 0);
    f = parse(r.out);
    spec.alpha = 0.5;
    spec.evol = 0.3;
    e = appell_analytic(AnalyticField::gauss(1.0, 0.0), spec);
    err = 0.0;
    for (int i = 0; i < f.grid.count; ++i) err = std::max(err, std::abs(f.values[i] - e(f.grid.at(i), 0.3)));
    CHECK(err < 1e-8);
}

TEST_CASE("transform and propagate") {
    std::ofstream(tmp("hg.csv")) << run("sample --family std-hg --n 2 --grid -10:10:801").out;
    Run r = run("transform --preset frft:0.5 --in " + tmp("hg.csv") + " --grid -2:2:9");
    REQUIRE(r.code == 0);
    SampledField f = parse(r.out);
    SampledField ref = sample(AnalyticField::std_hg(2), f.grid, 0.0);
    // HG_n is an FrFT eigenfunction with eigenvalue e^{-i n alpha pi/2}
    cplx lam = std::exp(cplx(0.0, -M_PI / 2.0));
    for (int i = 0; i < f.grid.count; ++i) CHECK(std::abs(f.values[i] - lam * ref.values[i]) < 1e-8);

    std::ofstream(tmp("hp.csv")) << run("sample --family heat-poly --n 3 --grid -8:8:161").out;
    r = run("propagate --eq heat --evol 0.5 --in " + tmp("hp.csv") + " --grid -1:1:5");
    REQUIRE(r.code == 0);
    f = parse(r.out);
    ref = sample(AnalyticField::heat_poly(3), f.grid, 0.5);
    for (int i = 0; i < f.grid.count; ++i) CHECK(std::abs(f.values[i] - ref.values[i]) < 1e-10);
}

TEST_CASE("exit codes") {
    CHECK(run("sample --family nope --grid 0:1:3").code == 1);
    CHECK(run("sample --family gauss").code == 1);
    CHECK(run("sample --family gauss --grid 0:1").code == 1);
    CHECK(run("frobnicate").code == 1);
    CHECK(run("--help").code == 0);
    std::ofstream(tmp("bad.csv")) << "# canonica-field v1 {\"count\":3}\n0,1,0\n1,x,0\n";
    CHECK(run("transform --preset fourier --in " + tmp("bad.csv") + " --grid -1:1:3").code == 1);
    std::ofstream(tmp("bessel.csv")) << run("sample --family bessel --lambda 2 --m 1 --grid 0:5:11").out;
    CHECK(run("transform --preset fourier --in " + tmp("bessel.csv") + " --grid -1:1:3").code == 1);
    CHECK(run("matrix factor '{\"a\":[0,0],\"b\":[1,0],\"c\":[-1,0],\"d\":[0,0.5]}'").code == 2);
    CHECK(run("verify nope").code == 2);
}

TEST_CASE("verify") {
    std::string path = tmp("report.json");
    Run r = run("verify matrix --report " + path);
    CHECK(r.code == 0);
    CHECK(r.out.find("all passed") != std::string::npos);
    std::ifstream is(path);
    nlohmann::json j = nlohmann::json::parse(is);
    CHECK(j["schema"] == "canonica-report/1");
    CHECK(j["pass"] == true);
    for (const auto& c : j["checks"]) CHECK(c["criterion"] == 1);
}

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: test_cli <canonica binary> [doctest options]\n");
        return 2;
    }
    g_cli = argv[1];
    doctest::Context ctx;
    ctx.applyCommandLine(argc - 1, argv + 1);
    return ctx.run();
}
