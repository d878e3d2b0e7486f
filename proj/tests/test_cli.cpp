#include <catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

namespace {

std::string binary() {
    const char* bin = std::getenv("MVQ_BIN");
    REQUIRE(bin != nullptr);
    return bin;
}

struct RunResult {
    int code;
    std::string out;
};

RunResult run(const std::string& args) {
    std::string cmd = binary() + " " + args + " > cli_stdout.txt 2> cli_stderr.txt";
    int status = std::system(cmd.c_str());
    RunResult r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream in("cli_stdout.txt");
    std::stringstream ss;
    ss << in.rdbuf();
    r.out = ss.str();
    return r;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream ss(text);
    std::string line;
    while (std::getline(ss, line)) {
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        rows.push_back(std::move(cells));
    }
    return rows;
}

}  // namespace

TEST_CASE("volumes command") {
    auto r = run("volumes --g 2 -o vol2.json");
    REQUIRE(r.code == 0);
    auto doc = nlohmann::json::parse(slurp("vol2.json"));
    CHECK(doc.at("g") == 2);
    CHECK(doc.at("total_pi_power") == 6);
    CHECK(doc.at("total_coeff") == "1/15");
    CHECK(doc.at("by_graph").size() == 6);
    REQUIRE(doc.at("p_g").size() == 3);
    CHECK(doc.at("p_g")[0] == "7/27");
    CHECK(doc.at("p_g")[1] == "5/9");
    CHECK(doc.at("p_g")[2] == "5/27");

    // the validator accepts its own output
    CHECK(run("check --file vol2.json").code == 0);
}

TEST_CASE("volumes of Q_{0,4}") {
    auto r = run("volumes --g 0 --n 4 -o vol04.json");
    REQUIRE(r.code == 0);
    auto doc = nlohmann::json::parse(slurp("vol04.json"));
    CHECK(doc.at("total_pi_power") == 2);
    CHECK(doc.at("total_coeff") == "2/1");
    CHECK(run("check --file vol04.json").code == 0);
}

TEST_CASE("volumes exit codes") {
    CHECK(run("volumes --g 1 --n 0").code == 2);   // unstable
    CHECK(run("volumes --g 3 --budget 5").code == 3);  // budget
    CHECK(run("volumes").code == 2);               // missing required option
}

TEST_CASE("graphs command") {
    auto r = run("graphs --g 2 -o graphs2.txt");
    REQUIRE(r.code == 0);
    auto text = slurp("graphs2.txt");
    int lines = 0;
    for (char c : text) lines += (c == '\n');
    CHECK(lines == 6);
    CHECK(text.find("| 2") != std::string::npos);  // some aut order present
}

TEST_CASE("distribution command at g=2") {
    auto r = run("distribution --g 2 -o dist2.csv");
    REQUIRE(r.code == 0);
    auto rows = parse_csv(slurp("dist2.csv"));
    REQUIRE(rows.size() >= 4);
    CHECK(rows[0][0] == "k");
    CHECK(rows[1][2] == "7/27");
    double sum = 0;
    for (int k = 1; k <= 3; ++k) sum += std::stod(rows[k][1]);
    CHECK(std::abs(sum - 1.0) < 1e-12);
    CHECK(run("check --file dist2.csv").code == 0);
}

TEST_CASE("distribution command at g=26 approx-only") {
    auto r = run("distribution --g 26 --approx-only -o dist26.csv");
    REQUIRE(r.code == 0);
    auto rows = parse_csv(slurp("dist26.csv"));
    // columns: k,p_g,p_g_fraction,q_perm,u_poisson_gamma,llt
    CHECK(std::abs(std::stod(rows[1][4]) - 0.0724) < 5e-4);
    CHECK(std::abs(std::stod(rows[2][4]) - 0.2022) < 5e-4);
    CHECK(std::abs(std::stod(rows[3][4]) - 0.2675) < 5e-4);
    CHECK(std::abs(std::stod(rows[1][5]) - 0.0724) < 5e-4);
    CHECK(std::abs(std::stod(rows[2][5]) - 0.1974) < 5e-4);
    CHECK(std::abs(std::stod(rows[3][5]) - 0.2559) < 5e-4);
}

TEST_CASE("perm command: uniform weights give Stirling ratios") {
    auto r = run("perm --n 6 --m 1 --alpha 1 -o perm6.csv");
    REQUIRE(r.code == 0);
    auto rows = parse_csv(slurp("perm6.csv"));
    // s(6,k) = 120, 274, 225, 85, 15, 1 over 720
    std::vector<std::string> expect{"1/6", "137/360", "5/16", "17/144", "1/48", "1/720"};
    for (int k = 1; k <= 6; ++k) {
        CHECK(rows[k][0] == "q");
        CHECK(rows[k][3] == expect[k - 1]);
    }
}

TEST_CASE("perm command: custom theta") {
    auto r = run("perm --n 2 --theta 1,0 -o perm_custom.csv");
    REQUIRE(r.code == 0);
    auto rows = parse_csv(slurp("perm_custom.csv"));
    CHECK(rows[1][2] == "0");
    CHECK(rows[2][2] == "1");
}

TEST_CASE("sample command determinism and accuracy") {
    auto r1 = run("sample --n 20 --samples 5000 --seed 7 -o sample_a.csv");
    auto r2 = run("sample --n 20 --samples 5000 --seed 7 -o sample_b.csv");
    REQUIRE(r1.code == 0);
    REQUIRE(r2.code == 0);
    CHECK(slurp("sample_a.csv") == slurp("sample_b.csv"));
    CHECK(r1.out == r2.out);
    CHECK(r1.out.rfind("tv_distance,", 0) == 0);

    // single-element edge case
    auto r3 = run("sample --n 1 --samples 100 --seed 3 -o sample_one.csv");
    REQUIRE(r3.code == 0);
    auto rows = parse_csv(slurp("sample_one.csv"));
    CHECK(rows[1][2] == "1");

    // missing seed is a usage error
    CHECK(run("sample --n 5 --samples 10").code == 2);

    CHECK(run("check --file sample_a.csv").code == 0);
}

TEST_CASE("approx command") {
    auto r = run("approx --n 75 --alpha 1/2 --k-max 8 -o approx.csv");
    REQUIRE(r.code == 0);
    auto rows = parse_csv(slurp("approx.csv"));
    bool saw_u1 = false;
    for (const auto& row : rows)
        if (row.size() == 3 && row[0] == "u" && row[1] == "1") {
            CHECK(std::abs(std::stod(row[2]) - 0.0724) < 5e-4);
            saw_u1 = true;
        }
    CHECK(saw_u1);
}

TEST_CASE("check command") {
    CHECK(run("check").code == 0);
    CHECK(run("check --file does_not_exist.csv").code == 2);
}

TEST_CASE("correlator cache environment variable") {
    std::remove("cli_cache.txt");
    std::string cmd = "MVQ_CORRELATOR_CACHE=cli_cache.txt " + binary() +
                      " volumes --g 2 -o vol_cache.json > /dev/null 2>&1";
    REQUIRE(std::system(cmd.c_str()) == 0);
    std::ifstream cache("cli_cache.txt");
    REQUIRE(cache.good());
    int lines = 0;
    std::string line;
    while (std::getline(cache, line)) ++lines;
    CHECK(lines > 0);
    // second run loads the cache and still succeeds
    REQUIRE(std::system(cmd.c_str()) == 0);
    std::remove("cli_cache.txt");
}
