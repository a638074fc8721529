#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iterator>
#include <string>
#include <sys/wait.h>

#include "canonica/suite.hpp"

using namespace canonica;

namespace {

// Wall-clock budget in seconds; 0 means untimed.
double budget(int criterion) {
    switch (criterion) {
        case 1: return 1.0;
        case 2: return 5.0;
        case 5: return 30.0;
        case 6: return 10.0;
        default: return 0.0;
    }
}

std::string slurp(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    return {std::istreambuf_iterator<char>(is), std::istreambuf_iterator<char>()};
}

int shell(const std::string& cmd) {
    int st = std::system(cmd.c_str());
    return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

bool criterion(int c) {
    std::string name = suite_for_criterion(c);
    auto t0 = std::chrono::steady_clock::now();
    SuiteReport r = run_suite(name);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    int failed = 0;
    double worst = 0.0;
    for (const CheckResult& k : r.checks) {
        if (!k.pass) {
            ++failed;
            std::printf("    failed %s max_abs %.3e tol %.1e\n", k.check_id.c_str(), k.max_abs, k.tolerance);
        }
        if (k.tolerance > 0) worst = std::max(worst, k.max_abs / k.tolerance);
    }
    double lim = budget(c);
    bool ok = failed == 0 && !r.checks.empty() && (lim == 0.0 || secs < lim);
    std::printf("%s criterion %d (%s): %zu checks, %d failed, worst err/tol %.2e, %.2f s", ok ? "PASS" : "FAIL", c,
                name.c_str(), r.checks.size(), failed, worst, secs);
    if (lim > 0.0) std::printf(" (limit %.0f s)", lim);
    std::printf("\n");
    return ok;
}

bool determinism(const std::string& cli) {
    const std::string a = "/tmp/canonica_accept_1.json", b = "/tmp/canonica_accept_2.json";
    int ca = shell("'" + cli + "' verify all --report " + a + " > /dev/null 2>&1");
    int cb = shell("'" + cli + "' verify all --report " + b + " > /dev/null 2>&1");
    std::string ra = slurp(a), rb = slurp(b);
    bool ok = !ra.empty() && ra == rb && ca == cb;
    std::printf("%s criterion 10 (determinism): reports %zu and %zu bytes, %s, exit codes %d/%d\n",
                ok ? "PASS" : "FAIL", ra.size(), rb.size(), ra == rb ? "identical" : "differ", ca, cb);
    return ok;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: acceptance <canonica binary>\n");
        return 2;
    }
    int failed = 0;
    for (int c = 1; c <= 9; ++c) {
        try {
            if (!criterion(c)) ++failed;
        } catch (const std::exception& e) {
            std::printf("FAIL criterion %d: %s\n", c, e.what());
            ++failed;
        }
        std::fflush(stdout);
    }
    if (!determinism(argv[1])) ++failed;
    std::printf("%d of 10 criteria passed\n", 10 - failed);
    return failed == 0 ? 0 : 1;
}
