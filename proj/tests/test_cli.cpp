#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

using nlohmann::json;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    std::string cmd = std::string(DIOPH_CLI_PATH) + " " + args + " 2>/dev/null";
    std::array<char, 4096> buf{};
    RunResult r;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
    int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("construct exit codes and reports") {
    auto small = run_cli("construct --field 5^1");
    CHECK(small.exit_code == 2);

    auto forced = run_cli("construct --field 23^1 --method case2");
    CHECK(forced.exit_code == 0);
    json j = json::parse(forced.out);
    CHECK(j["elements"] == json::array({1, 2, 12}));
    CHECK(j["method"] == "case2");
    CHECK(j["verified"] == true);

    auto big = run_cli("construct --field 3^10");
    CHECK(big.exit_code == 0);
    json jb = json::parse(big.out);
    CHECK(jb["Q_floor"] == 3);
    CHECK(jb["elements"].size() >= 3);
    CHECK(jb["bound_satisfied"] == true);
    CHECK(jb["bound_basis"] == "thm1");
}

TEST_CASE("construct reports are self-contained for re-verification") {
    auto rep = run_cli("construct --field 13^2");
    REQUIRE(rep.exit_code == 0);
    json j = json::parse(rep.out);
    std::string elements;
    for (const auto& e : j["elements"]) {
        if (!elements.empty()) elements += ",";
        elements += std::to_string(e.get<std::int64_t>());
    }
    auto re = run_cli("verify --field " + j["field"].get<std::string>() + " --elements " + elements);
    CHECK(re.exit_code == 0);
    json jv = json::parse(re.out);
    CHECK(jv["ok"] == true);
    CHECK(jv["certificate"] == j["certificate"]);
}

TEST_CASE("verify success and violation") {
    auto ok = run_cli("verify --field 1009^1 --elements 1,3,8,120");
    CHECK(ok.exit_code == 0);
    json j = json::parse(ok.out);
    CHECK(j["ok"] == true);
    CHECK(j["certificate"].size() == 6);

    auto bad = run_cli("verify --field 5^1 --elements 1,2");
    CHECK(bad.exit_code == 1);
    json jb = json::parse(bad.out);
    CHECK(jb["ok"] == false);
    CHECK(jb["violating_pair"] == json::array({0, 1}));

    auto usage = run_cli("verify --field 5^1 --elements 0,1");
    CHECK(usage.exit_code == 2);
}

TEST_CASE("exact-m spot values") {
    auto m5 = run_cli("exact-m --field 5^1");
    CHECK(m5.exit_code == 0);
    CHECK(json::parse(m5.out)["M"] == 2);
    auto m7 = run_cli("exact-m --field 7^1");
    CHECK(json::parse(m7.out)["M"] == 3);
    auto refuse = run_cli("exact-m --field 5003^1");
    CHECK(refuse.exit_code == 2);
}

TEST_CASE("cyclo output formats") {
    auto z = run_cli("cyclo --n 12");
    CHECK(z.out == "1 0 -1 0 1\n");
    auto m = run_cli("cyclo --n 3 --mod 3");
    CHECK(m.out == "1 1 1\n");
    auto j = run_cli("--json cyclo --n 6");
    CHECK(json::parse(j.out)["coefficients"] == json::array({1, -1, 1}));
}

TEST_CASE("charsum subcommands") {
    auto w = run_cli("charsum weil --field 5^1 --poly 0,1,1");
    CHECK(w.exit_code == 0);
    json jw = json::parse(w.out);
    CHECK(jw["results"][0]["sum"] == -1);
    CHECK(jw["all_within_bound"] == true);

    auto square = run_cli("charsum weil --field 5^1 --poly 0,0,1");
    CHECK(square.exit_code == 2);  // hypothesis violation is a parameter error

    auto trials = run_cli("charsum weil --field 101^1 --trials 25 --seed 7");
    CHECK(trials.exit_code == 0);
    CHECK(json::parse(trials.out)["results"].size() == 25);

    auto p = run_cli("charsum pattern --field 3^2 --shifts 0 --signs +");
    CHECK(p.exit_code == 0);
    json jp = json::parse(p.out);
    CHECK(jp["count"] == 4);
    CHECK(jp["bound_ok"] == true);
}

TEST_CASE("check suite selection") {
    CHECK(run_cli("check bogus").exit_code == 2);
    auto b = run_cli("check bounds");
    CHECK(b.exit_code == 0);
    CHECK(b.out.find("PASS bounds.totient-sum-inequality") != std::string::npos);
}

TEST_CASE("scan determinism, residue filter, resume") {
    const std::string out1 = "cli_scan_a.jsonl", out2 = "cli_scan_b.jsonl";
    auto r1 = run_cli("scan --p 3,11,13 --n-min 1 --n-max 2 --q-max 200 --out " + out1);
    CHECK(r1.exit_code == 0);
    auto r2 = run_cli("scan --p 3,11,13 --n-min 1 --n-max 2 --q-max 200 --out " + out2);
    CHECK(slurp(out1) == slurp(out2));
    CHECK(!slurp(out1).empty());

    // every report line re-verifies through the CLI
    std::istringstream lines(slurp(out1));
    std::string line;
    int reports = 0;
    bool summary_seen = false;
    while (std::getline(lines, line)) {
        json j = json::parse(line);
        if (j.contains("summary")) {
            summary_seen = true;
            CHECK(j["summary"]["failures"] == 0);
            continue;
        }
        ++reports;
        CHECK(j["verified"] == true);
    }
    CHECK(summary_seen);
    CHECK(reports > 0);

    // interrupting after one line and resuming reproduces the full run
    {
        std::istringstream all(slurp(out1));
        std::string first;
        std::getline(all, first);
        std::ofstream trunc(out2, std::ios::trunc);
        trunc << first << "\n";
    }
    auto r3 = run_cli("scan --p 3,11,13 --n-min 1 --n-max 2 --q-max 200 --resume --out " + out2);
    CHECK(r3.exit_code == 0);
    CHECK(slurp(out1) == slurp(out2));

    auto residue3 = run_cli("scan --p 11,19 --n-min 1 --n-max 1 --residues 3 --out " + out1);
    CHECK(residue3.exit_code == 0);
    std::istringstream lines3(slurp(out1));
    while (std::getline(lines3, line)) {
        json j = json::parse(line);
        if (j.contains("summary")) {
            CHECK(j["summary"]["remark36"] == 0);  // Q_floor <= 0 at these q: vacuous basis
            CHECK(j["summary"]["vacuous"] == 2);
        } else {
            CHECK(j["method"] == "mod8_3");
        }
    }

    CHECK(run_cli("scan --p 4 --n-min 1 --n-max 1 --out " + out1).exit_code == 2);
    CHECK(run_cli("scan --p 11 --n-min 1 --n-max 1 --residues 2 --out " + out1).exit_code == 2);
    std::remove(out1.c_str());
    std::remove(out2.c_str());
}

TEST_CASE("byte-identical repeated construct output") {
    auto a = run_cli("construct --field 3^6");
    auto b = run_cli("construct --field 3^6");
    CHECK(a.out == b.out);
    CHECK(a.exit_code == 0);
}
