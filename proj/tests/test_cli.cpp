#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "subprocess.hpp"

using testutil::cli_path;
using testutil::run_command;

namespace {

std::vector<std::string> lines_of(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream is(s);
    std::string line;
    while (std::getline(is, line))
        out.push_back(line);
    return out;
}

}  // namespace

TEST_CASE("count: valid query, json output, exit 0") {
    const auto res = run_command(cli_path() + " count --n 166 --d 15 --t 15 --format json");
    CHECK(res.exit_code == 0);
    const auto j = nlohmann::json::parse(res.output);
    CHECK(j["schema"] == 1);
    CHECK(j["counts"]["A"] == 2);
    CHECK(j["counts"]["B"] == 2);
    CHECK(j["counts"]["C"] == 2);
    CHECK(j["counts"]["D"] == 2);
    CHECK(j["classes"].size() == 2);
    CHECK(j["diagnostics"]["agree"] == true);
}

TEST_CASE("count: exit codes") {
    CHECK(run_command(cli_path() + " count --n 10 --d 9 --t 3").exit_code == 0);
    // 5 does not divide gcd(18, 18)
    CHECK(run_command(cli_path() + " count --n 10 --d 9 --t 5").exit_code == 1);
    CHECK(run_command(cli_path() + " count --n 1 --d 1 --t 1").exit_code == 1);
    CHECK(run_command(cli_path() + " count").exit_code == 1);           // missing flags
    CHECK(run_command(cli_path() + " nonsense").exit_code == 1);        // unknown command
    CHECK(run_command(cli_path() + " --help").exit_code == 0);
}

TEST_CASE("count: level selection") {
    const auto res =
        run_command(cli_path() + " count --n 10921 --d 105 --t 105 --levels A,B --format json");
    CHECK(res.exit_code == 0);
    const auto j = nlohmann::json::parse(res.output);
    CHECK(j["counts"]["A"] == 4);
    CHECK(j["counts"]["B"] == 4);
    CHECK(j["counts"]["C"].is_null());
    CHECK(j["counts"]["D"].is_null());
}

TEST_CASE("invariants") {
    const auto res =
        run_command(cli_path() + " invariants --n 166 --d 15 --t 15 --format json");
    CHECK(res.exit_code == 0);
    const auto j = nlohmann::json::parse(res.output);
    CHECK(j["schema"] == 1);
    CHECK(j["D"] == 44);
    CHECK(j["g"] == 2);
    CHECK(j["n_tilde"] == 11);
    CHECK(j["d_tilde"] == 1);
    CHECK(j["l1"] == 15);
}

TEST_CASE("classes with --explain") {
    const auto res =
        run_command(cli_path() + " classes --n 10 --d 9 --t 3 --explain --format json");
    CHECK(res.exit_code == 0);
    const auto j = nlohmann::json::parse(res.output);
    CHECK(j["count"] == 1);
    REQUIRE(j["classes"].size() == 1);
    CHECK(j["classes"][0]["gram"] == nlohmann::json::array({4, 2, 10}));
    CHECK(j["classes"][0]["beta"] == 3);
    REQUIRE(j["glues"].size() == 2);
    CHECK(j["glues"][0]["x"] == 6);
    CHECK(j["glues"][0]["y"] == 6);
    CHECK(j["glues"][0]["l"] == 3);
    CHECK(j["glues"][0]["epsilon"] == 1);
    CHECK(j["glues"][1]["y"] == 12);
    CHECK(j["glue_classes"] == nlohmann::json::array({{1, 2}}));
}

TEST_CASE("table: tiny grid csv rows") {
    const auto res =
        run_command(cli_path() + " table --max-n 3 --max-d 2 --format csv");
    CHECK(res.exit_code == 0);
    const auto lines = lines_of(res.output);
    const std::vector<std::string> expected = {
        "n,d,t,D,count,n_classes,determines_type",
        "2,1,1,4,1,1,1",
        "2,1,2,1,0,0,1",
        "2,2,1,8,1,1,1",
        "2,2,2,2,0,0,1",
        "3,1,1,8,1,1,1",
        "3,1,2,2,0,0,1",
        "3,2,1,16,1,1,1",
        "3,2,2,4,1,1,0",
        "3,2,4,1,0,0,1",
    };
    CHECK(lines == expected);
}

TEST_CASE("table: empty grid emits only the header") {
    const auto res = run_command(cli_path() + " table --max-n 1 --max-d 5 --format csv");
    CHECK(res.exit_code == 0);
    CHECK(res.output == "n,d,t,D,count,n_classes,determines_type\n");
}

TEST_CASE("table: n=2 rows all count <= 1") {
    const auto res = run_command(cli_path() + " table --max-n 2 --max-d 25 --format csv");
    CHECK(res.exit_code == 0);
    const auto lines = lines_of(res.output);
    for (size_t i = 1; i < lines.size(); ++i) {
        std::istringstream is(lines[i]);
        std::string field;
        for (int k = 0; k < 5; ++k)
            std::getline(is, field, ',');
        CHECK(std::stoll(field) <= 1);
    }
}

TEST_CASE("table: byte determinism across runs and worker counts") {
    const std::string base = cli_path() + " table --max-n 12 --max-d 12";
    for (const std::string fmt : {"csv", "json"}) {
        const auto w1a = run_command(base + " --workers 1 --format " + fmt);
        const auto w1b = run_command(base + " --workers 1 --format " + fmt);
        const auto w8 = run_command(base + " --workers 8 --format " + fmt);
        CHECK(w1a.exit_code == 0);
        CHECK(w1a.output == w1b.output);
        CHECK(w1a.output == w8.output);
    }
}

TEST_CASE("table: paranoid agrees with default") {
    const auto fast = run_command(cli_path() + " table --max-n 8 --max-d 8 --format csv");
    const auto slow =
        run_command(cli_path() + " table --max-n 8 --max-d 8 --format csv --paranoid");
    CHECK(fast.exit_code == 0);
    CHECK(slow.exit_code == 0);
    CHECK(fast.output == slow.output);
}

TEST_CASE("search finds the two-component instance") {
    const auto res = run_command(
        cli_path() + " search --max-n 200 --max-d 120 --min-count 2 --format csv");
    CHECK(res.exit_code == 0);
    const auto lines = lines_of(res.output);
    CHECK(lines.front() == "n,d,t,count");
    bool found = false;
    for (const auto& line : lines)
        if (line == "166,15,15,2")
            found = true;
    CHECK(found);
}

TEST_CASE("verify suites on a small grid") {
    CHECK(run_command(cli_path() + " verify --suite cor25 --max-n 12 --max-d 12").exit_code == 0);
    CHECK(run_command(cli_path() + " verify --suite prop22 --max-n 10 --max-d 10").exit_code == 0);
    CHECK(run_command(cli_path() + " verify --suite cross --max-n 10 --max-d 10").exit_code == 0);
    CHECK(run_command(cli_path() + " verify --suite all --max-n 8 --max-d 8").exit_code == 0);
    CHECK(run_command(cli_path() + " verify --suite bogus --max-n 5 --max-d 5").exit_code == 1);
}

TEST_CASE("--out writes the same bytes as stdout") {
    const std::string tmp = "/tmp/k3moduli_test_out.json";
    const auto direct =
        run_command(cli_path() + " count --n 10 --d 9 --t 3 --format json");
    const auto filed = run_command(cli_path() + " count --n 10 --d 9 --t 3 --format json --out " +
                                   tmp + " && cat " + tmp);
    CHECK(direct.exit_code == 0);
    CHECK(direct.output == filed.output);
    run_command("rm -f " + tmp);

    CHECK(run_command(cli_path() +
                      " count --n 10 --d 9 --t 3 --out /nonexistent-dir/x.json")
              .exit_code == 1);
}
