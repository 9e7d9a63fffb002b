#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#ifndef SUSYQM_CLI_PATH
#error "SUSYQM_CLI_PATH must point at the CLI binary"
#endif

namespace {

const std::string kCli = std::string("\"") + SUSYQM_CLI_PATH + "\"";
const std::filesystem::path kTmp = "cli_test_tmp";

int run(const std::string& args, const std::string& stdout_file = "",
        const std::string& stderr_file = "") {
    std::string cmd = kCli + " " + args;
    if (!stdout_file.empty()) cmd += " > " + stdout_file;
    if (!stderr_file.empty()) cmd += " 2> " + stderr_file;
    const int status = std::system(cmd.c_str());
    return status < 0 ? status : WEXITSTATUS(status);
}

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) out.push_back(line);
    return out;
}

std::vector<std::string> fields(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream in(line);
    std::string field;
    while (std::getline(in, field, ',')) out.push_back(field);
    if (!line.empty() && line.back() == ',') out.push_back("");
    return out;
}

struct TmpDir {
    TmpDir() { std::filesystem::create_directories(kTmp); }
} const tmp_dir;

std::string p(const std::string& name) { return (kTmp / name).string(); }

} // namespace

TEST_CASE("spectrum: undeformed harmonic CSV") {
    const int rc = run("spectrum --c 0 --grid-n 1001 --levels 4", p("base.csv"));
    CHECK(rc == 0);
    const std::vector<std::string> rows = lines(slurp(p("base.csv")));
    REQUIRE(rows.size() == 5);
    CHECK(rows[0] == "n_label,parity,energy_numeric,energy_analytic,abs_error,nodes");
    for (int n = 0; n < 4; ++n) {
        const std::vector<std::string> f = fields(rows[n + 1]);
        REQUIRE(f.size() == 6);
        CHECK(f[0] == std::to_string(n));
        CHECK(f[1] == (n % 2 == 0 ? "1" : "-1"));
        CHECK(std::abs(std::stod(f[2]) - 2.0 * n) <= 1e-3);
        CHECK(std::stod(f[3]) == 2.0 * n);
        CHECK(f[5] == std::to_string(n));
    }
}

TEST_CASE("spectrum: --partner both writes suffixed files with zero modes") {
    const int rc = run("spectrum --c 2 --grid-n 1001 --levels 3 --partner both --out " +
                       p("pair.csv"));
    CHECK(rc == 0);
    for (const char* tag : {"minus", "plus"}) {
        const std::string path = p(std::string("pair.") + tag + ".csv");
        REQUIRE(std::filesystem::exists(path));
        const std::vector<std::string> rows = lines(slurp(path));
        REQUIRE(rows.size() >= 2);
        const std::vector<std::string> f = fields(rows[1]);
        CHECK(f[0] == "0");
        CHECK(std::abs(std::stod(f[2])) <= 1e-4);  // dual zero modes at c=2
    }
}

TEST_CASE("spectrum: invalid grid size exits 2 and names the flag") {
    const int rc = run("spectrum --c 0 --grid-n 4", p("junk.txt"), p("griderr.txt"));
    CHECK(rc == 2);
    CHECK(slurp(p("griderr.txt")).find("grid-n") != std::string::npos);
}

TEST_CASE("verify: singular c fails with a recorded reason") {
    const int rc = run("verify --c 1 --grid-n 201", p("singular.json"), p("singular.err"));
    CHECK(rc == 1);
    const std::string report = slurp(p("singular.json"));
    CHECK(report.find("SingularC") != std::string::npos);
    CHECK(report.find("\"overall\": false") != std::string::npos);
}

TEST_CASE("verify: a regular deformation passes") {
    const int rc = run("verify --c 0.5 --grid-n 1001", p("pass.json"));
    CHECK(rc == 0);
    CHECK(slurp(p("pass.json")).find("\"overall\": true") != std::string::npos);
}

TEST_CASE("sweep: deterministic bytes and node-sorted rows") {
    const std::string args = "sweep --c-from -0.5 --c-to 0.5 --c-step 0.5 --grid-n 201 --levels 3 --out ";
    CHECK(run(args + p("sweep1.csv")) == 0);
    CHECK(run(args + p("sweep2.csv")) == 0);
    const std::string first = slurp(p("sweep1.csv"));
    CHECK(first == slurp(p("sweep2.csv")));

    const std::vector<std::string> rows = lines(first);
    REQUIRE(!rows.empty());
    CHECK(rows[0] == "c,s,n_label,energy_numeric,energy_analytic");
    CHECK(rows.size() == 1 + 3 * 3);  // three c values, three levels, partner minus
    std::string prev_c;
    int prev_n = -1;
    for (size_t i = 1; i < rows.size(); ++i) {
        const std::vector<std::string> f = fields(rows[i]);
        REQUIRE(f.size() == 5);
        if (f[0] != prev_c) {
            prev_c = f[0];
            prev_n = -1;
        }
        const int n = std::stoi(f[2]);
        CHECK(n > prev_n);
        prev_n = n;
    }
}

TEST_CASE("sweep: singular points are skipped with a notice") {
    const int rc = run("sweep --c-from 0.5 --c-to 1.5 --c-step 0.25 --grid-n 201 --levels 2",
                       p("cross.csv"), p("cross.err"));
    CHECK(rc == 0);
    CHECK(slurp(p("cross.err")).find("singular") != std::string::npos);
    for (const std::string& row : lines(slurp(p("cross.csv"))))
        CHECK(fields(row)[0] != "1");
}

TEST_CASE("sweep: zero step is a config error") {
    const int rc = run("sweep --c-from 0 --c-to 1 --c-step 0 --grid-n 201", p("junk.txt"),
                       p("step.err"));
    CHECK(rc == 2);
    CHECK(slurp(p("step.err")).find("c-step") != std::string::npos);
}

TEST_CASE("config file: flags win over file values") {
    {
        std::ofstream cfg(p("run.cfg"));
        cfg << "# sample configuration\n"
            << "grid-n = 201\n"
            << "levels = 2\n"
            << "c = 0.5\n";
    }
    const int rc = run("spectrum --config " + p("run.cfg") + " --levels 3", p("cfg.csv"));
    CHECK(rc == 0);
    CHECK(lines(slurp(p("cfg.csv"))).size() == 4);  // header + 3 levels (flag wins over 2)
}

TEST_CASE("config file: unknown keys and bad values exit 2") {
    {
        std::ofstream cfg(p("bad_key.cfg"));
        cfg << "nonsense = 1\n";
    }
    CHECK(run("spectrum --config " + p("bad_key.cfg"), p("junk.txt"), p("badkey.err")) == 2);
    CHECK(slurp(p("badkey.err")).find("nonsense") != std::string::npos);

    {
        std::ofstream cfg(p("bad_value.cfg"));
        cfg << "grid-n = banana\n";
    }
    CHECK(run("spectrum --config " + p("bad_value.cfg"), p("junk.txt"), p("badval.err")) == 2);
    CHECK(slurp(p("badval.err")).find("grid-n") != std::string::npos);
}
