#include "doctest.h"

#include "json.hpp"

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

namespace {

struct Result {
    int exit_code = -1;
    std::string out;
};

Result run(const std::string& args) {
    std::string command = std::string(REDIP_CLI_PATH) + " " + args + " 2>/dev/null";
    Result r;
    FILE* pipe = popen(command.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buffer{};
    std::size_t n;
    while ((n = fread(buffer.data(), 1, buffer.size(), pipe)) > 0) r.out.append(buffer.data(), n);
    int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string sample(const std::string& name) { return std::string(REDIP_SAMPLES_DIR) + "/" + name; }

std::string temp_program(const std::string& name, const std::string& text) {
    auto path = std::filesystem::temp_directory_path() / name;
    std::ofstream(path) << text;
    return path.string();
}

bool contains(const std::string& haystack, const std::string& needle) { return haystack.find(needle) != std::string::npos; }

}  // namespace

TEST_CASE("infer") {
    SUBCASE("insurance with a query") {
        auto r = run("infer " + sample("fig1.redip") + " --query 'r >= 1'");
        CHECK(r.exit_code == 0);
        CHECK(contains(r.out, "normalizing constant = 11/40"));
        CHECK(contains(r.out, "2/11"));
    }
    SUBCASE("machine-readable output holds exact fractions") {
        auto r = run("infer " + sample("fig1.redip") + " --json --marginal x --upto 3");
        REQUIRE(r.exit_code == 0);
        auto doc = nlohmann::json::parse(r.out);
        CHECK(doc["normalizing_constant"]["exact"] == "11/40");
        CHECK(doc["violation_mass"]["exact"] == "29/40");
        CHECK(doc.dump().find("0.275") != std::string::npos);
    }
    SUBCASE("two paths with a prior file") {
        auto r = run("infer " + sample("example53.redip") + " --prior " + sample("example53_prior.json"));
        CHECK(r.exit_code == 0);
        CHECK(contains(r.out, "normalizing constant = 3/4"));
    }
    SUBCASE("an impossible observation exits with 2") {
        CHECK(run("infer " + temp_program("redip_cli_false.redip", "observe(false)")).exit_code == 2);
    }
    SUBCASE("syntax errors exit with 1") {
        CHECK(run("infer " + temp_program("redip_cli_bad.redip", "{skip} [1.5] {skip}")).exit_code == 1);
    }
    SUBCASE("missing files exit with 3") { CHECK(run("infer /nonexistent/program.redip").exit_code == 3); }
}

TEST_CASE("query") {
    CHECK(contains(run("query " + sample("fig1.redip") + " --at 'x=2,r=0'").out, "9/22"));
    CHECK(contains(run("query " + sample("fig1.redip") + " --guard 'r < 1'").out, "9/11"));
    auto all = run("query " + sample("fig1.redip") + " --guard true --json");
    REQUIRE(all.exit_code == 0);
    CHECK(all.out.find("\"1\"") != std::string::npos);
    CHECK(run("query " + sample("fig1.redip") + " --guard 'z < 1'").exit_code == 1);
}

TEST_CASE("check, parse and export-dot") {
    auto r = run("check " + sample("geometric.json"));
    CHECK(r.exit_code == 0);
    CHECK(contains(r.out, "mass = 1, PGA: yes"));

    auto p = run("parse " + sample("fig1.redip"));
    CHECK(p.exit_code == 0);
    CHECK(contains(p.out, "size: 8"));

    auto out = std::filesystem::temp_directory_path() / "redip_cli.dot";
    std::filesystem::remove(out);
    CHECK(run("export-dot " + sample("fig1.redip") + " -o " + out.string()).exit_code == 0);
    std::ifstream in(out);
    std::string first;
    std::getline(in, first);
    CHECK(first.rfind("digraph", 0) == 0);
}

TEST_CASE("oracle") {
    auto e = run("oracle " + sample("fig1.redip") + " --mode enumerate --trunc 40");
    CHECK(e.exit_code == 0);
    CHECK(contains(e.out, "PASS"));

    auto m = run("oracle " + sample("fig1.redip") + " --mode mc --samples 200000 --seed 7");
    CHECK(m.exit_code == 0);
    CHECK(contains(m.out, "PASS"));
    CHECK(run("oracle " + sample("fig1.redip") + " --mode mc --samples 200000 --seed 7").out == m.out);
}
